#include "linefol/ratfunc.hpp"

#include <algorithm>

#include "linefol/error.hpp"

namespace linefol {

RatFunc::RatFunc(MultiPoly p) : num_(std::move(p)) { den_ = MultiPoly(num_.vars(), Gq(1)); }

RatFunc::RatFunc(MultiPoly num, MultiPoly den) {
  if (den.is_zero()) fail(ErrorCode::ZeroDenominator, "rational function with zero denominator");
  if (num.vars() != den.vars()) {
    if (den.vars().size() == 0 && den.is_constant()) {
      den = den.with_vars(num.vars());
    } else if (num.vars().size() == 0 && num.is_constant()) {
      num = num.with_vars(den.vars());
    } else {
      require_same_vars(num.vars(), den.vars());
    }
  }
  if (num.is_zero()) {
    num_ = std::move(num);
    den_ = MultiPoly(num_.vars(), Gq(1));
    return;
  }
  if (!den.is_constant()) {
    MultiPoly g = poly_gcd(num, den);
    if (!g.is_one()) {
      num = divide_or_throw(num, g);
      den = divide_or_throw(den, g);
    }
  }
  num_ = std::move(num);
  den_ = std::move(den);
  normalize_unit();
}

RatFunc::RatFunc(MultiPoly num, MultiPoly den, Coprime) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.is_zero()) {
    den_ = MultiPoly(num_.vars(), Gq(1));
    return;
  }
  normalize_unit();
}

void RatFunc::normalize_unit() {
  const Gq& lc = den_.leading_coefficient();
  if (lc.is_one()) return;
  Gq inv = lc.inverse();
  num_ *= inv;
  den_ *= inv;
}

RatFunc RatFunc::from_coprime(MultiPoly num, MultiPoly den) {
  if (den.is_zero()) fail(ErrorCode::ZeroDenominator, "rational function with zero denominator");
  return RatFunc(std::move(num), std::move(den), Coprime{});
}

RatFunc RatFunc::constant(const VarSet& vars, const Gq& c) { return RatFunc(MultiPoly(vars, c)); }

RatFunc RatFunc::variable(const VarSet& vars, std::string_view name) {
  return RatFunc(MultiPoly::variable(vars, name));
}

std::optional<Gq> RatFunc::constant_value() const {
  if (!is_constant()) return std::nullopt;
  return num_.constant_value();
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

namespace {

void check_vars(const RatFunc& x, const RatFunc& y) {
  if (x.vars() == y.vars()) return;
  if (x.vars().size() == 0 && x.is_constant()) return;
  if (y.vars().size() == 0 && y.is_constant()) return;
  require_same_vars(x.vars(), y.vars());
}

RatFunc add_sub(const RatFunc& x, const RatFunc& y, bool subtract) {
  check_vars(x, y);
  auto combine = [&](const MultiPoly& a, const MultiPoly& b) { return subtract ? a - b : a + b; };
  if (y.is_zero()) return x;
  if (x.is_zero()) return subtract ? -y : y;
  if (x.den() == y.den()) {
    MultiPoly num = combine(x.num(), y.num());
    if (x.is_polynomial()) return RatFunc(std::move(num));
    return RatFunc(std::move(num), x.den());
  }
  // gcd(p d + c, d) = gcd(c, d) = 1
  if (x.is_polynomial()) return RatFunc::from_coprime(combine(x.num() * y.den(), y.num()), y.den());
  if (y.is_polynomial()) return RatFunc::from_coprime(combine(x.num(), y.num() * x.den()), x.den());
  // Henrici: with g = gcd(b, d), gcd(a d' + c b', b' d) = gcd(a d' + c b', g)
  MultiPoly g = poly_gcd(x.den(), y.den());
  MultiPoly bp = divide_or_throw(x.den(), g);
  MultiPoly dp = divide_or_throw(y.den(), g);
  MultiPoly num = combine(x.num() * dp, y.num() * bp);
  if (num.is_zero()) return RatFunc(num);
  if (g.is_one()) return RatFunc::from_coprime(std::move(num), bp * y.den());
  MultiPoly g2 = poly_gcd(num, g);
  if (g2.is_one()) return RatFunc::from_coprime(std::move(num), bp * y.den());
  return RatFunc::from_coprime(divide_or_throw(num, g2), bp * divide_or_throw(y.den(), g2));
}

}  // namespace

RatFunc& RatFunc::operator+=(const RatFunc& o) { return *this = add_sub(*this, o, false); }
RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this = add_sub(*this, o, true); }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  check_vars(*this, o);
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = o;
  if (is_polynomial() && o.is_polynomial()) return *this = RatFunc(num_ * o.num_);
  if (this == &o || *this == o)
    return *this = RatFunc(num_ * num_, den_ * den_, Coprime{});
  // cross cancellation keeps both products coprime
  MultiPoly a = num_, b = den_, c = o.num_, d = o.den_;
  if (!d.is_one()) {
    MultiPoly g = poly_gcd(a, d);
    if (!g.is_one()) {
      a = divide_or_throw(a, g);
      d = divide_or_throw(d, g);
    }
  }
  if (!b.is_one()) {
    MultiPoly g = poly_gcd(c, b);
    if (!g.is_one()) {
      c = divide_or_throw(c, g);
      b = divide_or_throw(b, g);
    }
  }
  return *this = RatFunc(a * c, b * d, Coprime{});
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of the zero rational function");
  return RatFunc(den_, num_, Coprime{});
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc operator*(const Gq& c, const RatFunc& f) {
  if (c.is_zero()) return RatFunc(f.vars());
  RatFunc r = f;
  r.num_ *= c;
  return r;
}

RatFunc pow(const RatFunc& f, int exponent) {
  if (exponent < 0) return pow(f.inverse(), -exponent);
  unsigned e = static_cast<unsigned>(exponent);
  if (f.is_polynomial()) return RatFunc(pow(f.num(), e));
  // powers of coprime polynomials stay coprime
  return RatFunc::from_coprime(pow(f.num(), e), pow(f.den(), e));
}

RatFunc derivative(const RatFunc& f, std::size_t var) {
  if (f.is_polynomial()) return RatFunc(derivative(f.num(), var));
  MultiPoly dn = derivative(f.num(), var);
  MultiPoly dd = derivative(f.den(), var);
  if (dd.is_zero()) return RatFunc(dn, f.den());
  // D = D0 D1 with D0 free of the variable. Every prime p^e of D1 leaves
  // exactly p^(e-1) in N' D1 - N D1', so dividing by gcd with D is enough.
  MultiPoly d0 = content_in(f.den(), var);
  MultiPoly d1 = d0.is_one() ? f.den() : divide_or_throw(f.den(), d0);
  MultiPoly dd1 = d0.is_one() ? dd : derivative(d1, var);
  MultiPoly top = dn * d1 - f.num() * dd1;
  if (top.is_zero()) return RatFunc(f.vars());
  MultiPoly g = poly_gcd(top, f.den());
  MultiPoly den = f.den() * d1;
  if (g.is_one()) return RatFunc::from_coprime(std::move(top), std::move(den));
  return RatFunc::from_coprime(divide_or_throw(top, g), divide_or_throw(den, g));
}

RatFunc derivative(const RatFunc& f, std::string_view var) {
  return derivative(f, f.vars().require(var));
}

Gq evaluate(const RatFunc& f, std::span<const Gq> point) {
  Gq d = evaluate(f.den(), point);
  if (d.is_zero()) fail(ErrorCode::PoleAtPoint, "denominator vanishes at the point");
  return evaluate(f.num(), point) / d;
}

namespace {

struct Homogenizer {
  std::vector<std::vector<MultiPoly>> a_pows;
  std::vector<MultiPoly> b_pows;
  bool b_one;

  const MultiPoly& apow(std::size_t i, unsigned k) {
    auto& v = a_pows[i];
    while (v.size() <= k) v.push_back(v.back() * v[1]);
    return v[k];
  }
  const MultiPoly& bpow(unsigned k) {
    while (b_pows.size() <= k) b_pows.push_back(b_pows.back() * b_pows[1]);
    return b_pows[k];
  }

  /// B^deg(P) * P(A/B)
  MultiPoly apply(const MultiPoly& p, const VarSet& target) {
    MultiPoly out(target);
    const unsigned d = static_cast<unsigned>(std::max(p.total_degree(), 0));
    for (const auto& t : p.terms()) {
      MultiPoly term(target, t.coeff);
      for (std::size_t i = 0; i < a_pows.size(); ++i)
        if (t.mono.exp[i]) term = term * apow(i, t.mono.exp[i]);
      unsigned missing = d - t.mono.degree();
      if (missing && !b_one) term = term * bpow(missing);
      out += term;
    }
    return out;
  }
};

}  // namespace

RatFunc substitute(const RatFunc& f, const std::map<std::string, RatFunc>& assignment,
                   const VarSet& target) {
  const VarSet& src = f.vars();
  for (const auto& [name, value] : assignment) {
    if (!src.contains(name))
      fail(ErrorCode::UnknownVariable, "assignment to unknown variable '" + name + "'");
    if (value.vars() != target && !(value.vars().size() == 0 && value.is_constant()))
      fail(ErrorCode::VarSetMismatch, "substituted values must share one VarSet");
  }
  std::vector<RatFunc> images;
  images.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    auto it = assignment.find(src.name(i));
    if (it == assignment.end()) {
      images.push_back(RatFunc::variable(target, src.name(i)));
    } else if (it->second.vars() != target) {
      images.push_back(RatFunc::constant(target, *it->second.constant_value()));
    } else {
      images.push_back(it->second);
    }
  }

  MultiPoly b(target, Gq(1));
  for (const auto& r : images)
    if (!r.is_polynomial()) b = b.is_one() ? r.den() : poly_lcm(b, r.den());

  Homogenizer h;
  h.b_one = b.is_one();
  h.b_pows = {MultiPoly(target, Gq(1)), b};
  for (const auto& r : images) {
    MultiPoly a = h.b_one ? r.num() : r.num() * divide_or_throw(b, r.den());
    h.a_pows.push_back({MultiPoly(target, Gq(1)), a});
  }

  MultiPoly num = h.apply(f.num(), target);
  MultiPoly den = h.apply(f.den(), target);
  if (den.is_zero())
    fail(ErrorCode::IdenticallyZeroDenominator, "substitution lands on a pole identically");
  int shift = std::max(f.den().total_degree(), 0) - std::max(f.num().total_degree(), 0);
  if (!h.b_one && shift > 0) num = num * h.bpow(static_cast<unsigned>(shift));
  if (!h.b_one && shift < 0) den = den * h.bpow(static_cast<unsigned>(-shift));
  return RatFunc(std::move(num), std::move(den));
}

RatFunc compose(const RatFunc& f, const RatFunc& g) {
  if (f.vars().size() != 1) fail(ErrorCode::WrongArity, "compose expects a univariate outer function");
  return substitute(f, {{f.vars().name(0), g}}, g.vars());
}

namespace {

void monomials_of_degree(std::size_t nvars, std::size_t var, int left, Monomial& m,
                         std::vector<Monomial>& out) {
  if (var + 1 == nvars || nvars == 0) {
    if (nvars) m.exp[var] = static_cast<std::uint16_t>(left);
    if (nvars || left == 0) out.push_back(m);
    if (nvars) m.exp[var] = 0;
    return;
  }
  for (int k = left; k >= 0; --k) {
    m.exp[var] = static_cast<std::uint16_t>(k);
    monomials_of_degree(nvars, var + 1, left - k, m, out);
  }
  m.exp[var] = 0;
}

}  // namespace

MultiPoly sample_poly(Rng& rng, const VarSet& vars, int degree, std::int64_t height) {
  std::vector<MultiPoly::Term> terms;
  for (int d = degree; d >= 0; --d) {
    std::vector<Monomial> ms;
    Monomial m;
    monomials_of_degree(vars.size(), 0, d, m, ms);
    bool forced = d == degree;
    std::size_t force_at =
        ms.empty() ? 0 : static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(ms.size()) - 1));
    for (std::size_t k = 0; k < ms.size(); ++k) {
      if (forced && k == force_at)
        terms.push_back({ms[k], sample_nonzero_gaussian(rng, height)});
      else if (rng.uniform(0, 1))
        terms.push_back({ms[k], sample_gaussian_rational(rng, height)});
    }
  }
  return MultiPoly::from_terms(vars, std::move(terms));
}

RatFunc sample_ratfunc(Rng& rng, const VarSet& vars, int num_degree, int den_degree,
                       std::int64_t height) {
  MultiPoly num = sample_poly(rng, vars, num_degree, height);
  MultiPoly den = sample_poly(rng, vars, den_degree, height);
  return RatFunc(std::move(num), std::move(den));
}

}  // namespace linefol
