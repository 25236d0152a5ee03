#include "linefol/pde.hpp"

#include <bit>
#include <unordered_map>

#include "linefol/error.hpp"
#include "linefol/linalg.hpp"

namespace linefol {

namespace {

constexpr int kPoleRetries = 20;

void require_arity(const RatFunc& f, std::size_t n, const char* what) {
  if (f.vars().size() != n)
    fail(ErrorCode::WrongArity, std::string(what) + " expects " + std::to_string(n) +
                                    " variables, got " + std::to_string(f.vars().size()));
}

// Laplace expansion along the first free row, memoized on the set of used columns.
class MinorExpansion {
 public:
  explicit MinorExpansion(const std::vector<std::vector<MultiPoly>>& m) : m_(m) {}

  MultiPoly det() { return minor(0); }

 private:
  const std::vector<std::vector<MultiPoly>>& m_;
  std::unordered_map<unsigned, MultiPoly> memo_;

  MultiPoly minor(unsigned used) {
    const std::size_t n = m_.size();
    const std::size_t row = static_cast<std::size_t>(std::popcount(used));
    if (row == n) return MultiPoly(m_[0][0].vars(), Gq(1));
    if (auto it = memo_.find(used); it != memo_.end()) return it->second;
    MultiPoly total(m_[0][0].vars());
    int sign = 1;
    for (std::size_t col = 0; col < n; ++col) {
      if (used & (1u << col)) continue;
      const MultiPoly& entry = m_[row][col];
      if (!entry.is_zero()) {
        MultiPoly term = entry * minor(used | (1u << col));
        if (sign > 0)
          total += term;
        else
          total -= term;
      }
      sign = -sign;
    }
    memo_.emplace(used, total);
    return total;
  }
};

}  // namespace

std::vector<std::vector<RatFunc>> hessian(const RatFunc& f) {
  const std::size_t n = f.vars().size();
  std::vector<RatFunc> first;
  for (std::size_t i = 0; i < n; ++i) first.push_back(derivative(f, i));
  std::vector<std::vector<RatFunc>> h(n, std::vector<RatFunc>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      h[i][j] = derivative(first[i], j);
      h[j][i] = h[i][j];
    }
  return h;
}

RatFunc hessian_det(const RatFunc& f) {
  const std::size_t n = f.vars().size();
  if (n == 0) return RatFunc::constant(f.vars(), Gq(1));
  auto h = hessian(f);
  MultiPoly l(f.vars(), Gq(1));
  for (const auto& row : h)
    for (const auto& e : row)
      if (!e.is_polynomial()) l = l.is_one() ? e.den() : poly_lcm(l, e.den());
  std::vector<std::vector<MultiPoly>> cleared(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& e : h[i])
      cleared[i].push_back(l.is_one() ? e.num() : e.num() * divide_or_throw(l, e.den()));
  MultiPoly d = MinorExpansion(cleared).det();
  if (l.is_one()) return RatFunc(std::move(d));
  return RatFunc(std::move(d), pow(l, static_cast<unsigned>(n)));
}

RatFunc monge_ampere_residual(const RatFunc& f) {
  require_arity(f, 2, "monge_ampere_residual");
  auto h = hessian(f);
  return h[0][0] * h[1][1] - h[0][1] * h[0][1] - RatFunc::constant(f.vars(), Gq(1));
}

std::vector<RatFunc> gauss_map(const RatFunc& f) {
  if (f.is_constant()) fail(ErrorCode::ConstantFunction, "the Gauss map of a constant is zero");
  std::vector<RatFunc> g;
  for (std::size_t i = 0; i < f.vars().size(); ++i) g.push_back(derivative(f, i));
  return g;
}

std::size_t gauss_generic_rank(const RatFunc& f, Rng& rng, int trials, std::int64_t height) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be at least 1");
  const std::size_t n = f.vars().size();
  auto h = hessian(f);
  std::size_t best = 0;
  for (int trial = 0; trial < trials && best < n; ++trial) {
    bool done = false;
    for (int attempt = 0; attempt <= kPoleRetries && !done; ++attempt) {
      std::vector<Gq> point(n);
      for (auto& x : point) x = sample_gaussian_rational(rng, height);
      if (evaluate(f.den(), point).is_zero()) continue;
      Matrix m(n, std::vector<Gq>(n));
      bool pole = false;
      for (std::size_t i = 0; i < n && !pole; ++i)
        for (std::size_t j = 0; j < n && !pole; ++j) {
          Gq d = evaluate(h[i][j].den(), point);
          if (d.is_zero())
            pole = true;
          else
            m[i][j] = evaluate(h[i][j].num(), point) / d;
        }
      if (pole) continue;
      best = std::max(best, rank(std::move(m)));
      done = true;
    }
    if (!done) fail(ErrorCode::SamplingExhausted, "every sampled point hit a pole");
  }
  return best;
}

bool annihilator_check(const MultiPoly& p, const RatFunc& f) {
  const std::size_t n = f.vars().size();
  if (p.vars().size() != n)
    fail(ErrorCode::ArityMismatch, "annihilator has " + std::to_string(p.vars().size()) +
                                       " variables, function has " + std::to_string(n));
  std::map<std::string, RatFunc> assignment;
  for (std::size_t i = 0; i < n; ++i) assignment.emplace(p.vars().name(i), derivative(f, i));
  return substitute(RatFunc(p), assignment, f.vars()).is_zero();
}

MultiPoly gordan_noether() {
  VarSet v = VarSet::coordinates(5);
  auto z = [&](std::size_t i) { return MultiPoly::variable(v, i - 1); };
  return z(1) * z(1) * z(3) + z(1) * z(2) * z(4) + z(2) * z(2) * z(5);
}

RatFunc burgers_residual(const RatFunc& a) {
  require_arity(a, 2, "burgers_residual");
  return derivative(a, std::size_t{0}) + a * derivative(a, std::size_t{1});
}

namespace {

RatFunc require_univariate(const RatFunc& ell) {
  if (ell.vars().size() == 1) return ell;
  if (ell.vars().size() == 0 && ell.is_constant())
    return RatFunc::constant(VarSet::parse("t"), *ell.constant_value());
  fail(ErrorCode::WrongArity, "expected a univariate rational function");
}

RatFunc affine_part(const VarSet& v, const std::array<Gq, 3>& c) {
  MultiPoly p(v, c[2]);
  p += MultiPoly::variable(v, 0) * c[0];
  p += MultiPoly::variable(v, 1) * c[1];
  return RatFunc(p);
}

}  // namespace

RatFunc hesse2d_construct(const Hesse2dParams& params) {
  VarSet v = VarSet::coordinates(2);
  RatFunc ell = require_univariate(params.ell);
  MultiPoly z1 = MultiPoly::variable(v, 0), z2 = MultiPoly::variable(v, 1);
  const auto& [p1, p2] = params.pair;
  if (params.kind == 1) {
    if (p1.is_zero() && p2.is_zero())
      fail(ErrorCode::DegenerateDirection, "the linear form a1 z1 + a2 z2 is zero");
    return compose(ell, RatFunc(z1 * p1 + z2 * p2)) + affine_part(v, params.c);
  }
  if (params.kind == 2) {
    MultiPoly u = z2 - MultiPoly(v, p2);
    RatFunc slope(z1 - MultiPoly(v, p1), u);
    return compose(ell, slope) * RatFunc(u) + affine_part(v, params.c);
  }
  fail(ErrorCode::InvalidArgument, "kind must be 1 or 2");
}

MultiPoly hesse3d_construct(const Hesse3dParams& params) {
  VarSet v = VarSet::coordinates(3);
  if (params.kind == 1) {
    if (params.epsilon != 0 && params.epsilon != 1)
      fail(ErrorCode::InvalidArgument, "epsilon must be 0 or 1");
    const VarSet& pv = params.phi.vars();
    for (std::size_t i = 0; i < pv.size(); ++i)
      if (pv.name(i) != "z2" && pv.name(i) != "z3" && params.phi.degree_in(i) > 0)
        fail(ErrorCode::InvalidArgument, "phi may only involve z2 and z3");
    std::map<std::string, RatFunc> assignment;
    for (std::size_t i = 0; i < pv.size(); ++i)
      if (pv.name(i) != "z2" && pv.name(i) != "z3")
        assignment.emplace(pv.name(i), RatFunc::constant(v, Gq(0)));
    MultiPoly phi = substitute(RatFunc(params.phi), assignment, v).num();
    return MultiPoly::variable(v, 0) * Gq(params.epsilon) + phi;
  }
  if (params.kind == 2) {
    MultiPoly out(v);
    RatFunc z1 = RatFunc::variable(v, "z1");
    for (std::size_t k = 0; k < 3; ++k) {
      RatFunc ak = require_univariate(RatFunc(params.a[k]));
      if (!ak.is_polynomial()) fail(ErrorCode::InvalidArgument, "a_k must be polynomials");
      MultiPoly term = compose(ak, z1).num();
      out += k == 0 ? term : term * MultiPoly::variable(v, k);
    }
    return out;
  }
  fail(ErrorCode::InvalidArgument, "kind must be 1 or 2");
}

}  // namespace linefol
