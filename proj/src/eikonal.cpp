#include "linefol/eikonal.hpp"

#include <algorithm>

#include "linefol/error.hpp"
#include "linefol/linalg.hpp"

namespace linefol {

namespace {

constexpr int kGradientSamples = 4;
constexpr int kPoleRetries = 50;
constexpr std::int64_t kSampleHeight = 100;

const VarSet& t_vars() {
  static const VarSet v = VarSet::parse("t");
  return v;
}

RatFunc univariate(const RatFunc& f) {
  if (f.vars().size() == 1) return f;
  if (f.vars().size() == 0 && f.is_constant()) return RatFunc::constant(t_vars(), *f.constant_value());
  fail(ErrorCode::WrongArity, "expected a univariate rational function");
}

std::vector<RatFunc> partials(const RatFunc& f) {
  std::vector<RatFunc> g;
  for (std::size_t i = 0; i < f.vars().size(); ++i) g.push_back(derivative(f, i));
  return g;
}

// z_i -> z_i + t g_i over vars + t.
std::map<std::string, RatFunc> flow_assignment(const VarSet& vars, const VarSet& ext,
                                               const std::vector<RatFunc>& g) {
  std::map<std::string, RatFunc> a;
  std::map<std::string, RatFunc> lift;
  RatFunc t = RatFunc::variable(ext, "t");
  for (std::size_t i = 0; i < vars.size(); ++i)
    a.emplace(vars.name(i), RatFunc::variable(ext, vars.name(i)) + t * substitute(g[i], lift, ext));
  return a;
}

VarSet with_time(const VarSet& vars) {
  if (vars.contains("t")) fail(ErrorCode::InvalidArgument, "the flow variable t is already in use");
  return vars.extended({"t"});
}

}  // namespace

bool LinearForm::is_zero() const {
  return coeffs[0].is_zero() && coeffs[1].is_zero() && coeffs[2].is_zero();
}

MultiPoly LinearForm::as_poly(const VarSet& vars) const {
  MultiPoly p(vars);
  for (std::size_t i = 0; i < 3; ++i)
    if (!coeffs[i].is_zero()) p += MultiPoly::variable(vars, i) * coeffs[i];
  return p;
}

Gq pairing(const LinearForm& u, const LinearForm& v) {
  return u.coeffs[0] * v.coeffs[0] + u.coeffs[1] * v.coeffs[1] + u.coeffs[2] * v.coeffs[2];
}

void IsotropicFrame::validate() const {
  if (norm2(alpha) != csq) fail(ErrorCode::InvalidArgument, "<alpha|alpha> differs from c^2");
  if (!norm2(beta).is_zero()) fail(ErrorCode::InvalidArgument, "beta is not isotropic");
  if (!pairing(alpha, beta).is_zero()) fail(ErrorCode::InvalidArgument, "<alpha|beta> is not zero");
}

RatFunc eikonal_operator(const RatFunc& f) {
  RatFunc e(f.vars());
  for (const auto& g : partials(f)) e += g * g;
  return e;
}

std::optional<Gq> is_eikonal_solution(const RatFunc& f) {
  return eikonal_operator(f).constant_value();
}

IsotropicFrame sample_isotropic_frame(Rng& rng, std::int64_t height) {
  if (height < 1) fail(ErrorCode::InvalidArgument, "height must be at least 1");
  for (;;) {
    Gq u = sample_gaussian_rational(rng, height);
    Gq lambda = sample_gaussian_rational(rng, height);
    Gq s = sample_gaussian_rational(rng, height);
    Gq w = Gq(1) + u * u;
    if (lambda.is_zero() || s.is_zero() || w.is_zero()) continue;
    Gq i = Gq::i();
    IsotropicFrame f{{{s * Gq(2) * u, s * (u * u - Gq(1)), Gq()}},
                     {{lambda * (Gq(1) - u * u), lambda * Gq(2) * u, lambda * i * w}},
                     (s * w) * (s * w)};
    return f;
  }
}

RatFunc build_solution(const IsotropicFrame& frame, const RatFunc& ell) {
  frame.validate();
  VarSet v = VarSet::coordinates(3);
  RatFunc inner(frame.beta.as_poly(v));
  try {
    return RatFunc(frame.alpha.as_poly(v)) + compose(univariate(ell), inner);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IdenticallyZeroDenominator)
      fail(ErrorCode::PoleOnAllOfSpace, "ell has a pole along all of beta . z");
    throw;
  }
}

RatFunc build_solution(const EikonalSolution& s) { return build_solution(s.frame, s.ell); }

EikonalSolution decompose_solution(const RatFunc& f, std::uint64_t seed) {
  if (f.vars().size() != 3) fail(ErrorCode::WrongArity, "eikonal decomposition needs z1, z2, z3");
  auto csq = is_eikonal_solution(f);
  if (!csq) fail(ErrorCode::NotASolution, "E(f) is not constant");
  const VarSet& v = f.vars();
  auto g = partials(f);

  Rng rng(seed);
  auto sample = [&]() {
    for (int attempt = 0; attempt < kPoleRetries; ++attempt) {
      std::vector<Gq> p(3);
      for (auto& x : p) x = sample_gaussian_rational(rng, kSampleHeight);
      std::vector<Gq> out;
      bool pole = false;
      for (const auto& gi : g) {
        Gq d = evaluate(gi.den(), p);
        if (d.is_zero()) {
          pole = true;
          break;
        }
        out.push_back(evaluate(gi.num(), p) / d);
      }
      if (!pole) return out;
    }
    fail(ErrorCode::SamplingExhausted, "every sampled point hit a pole of grad f");
  };

  std::vector<Gq> base = sample();
  LinearForm alpha{{base[0], base[1], base[2]}};
  Matrix diffs;
  for (int k = 0; k < kGradientSamples; ++k) {
    std::vector<Gq> q = sample();
    for (std::size_t i = 0; i < 3; ++i) q[i] -= base[i];
    diffs.push_back(std::move(q));
  }
  if (rank(diffs) > 1)
    fail(ErrorCode::StructureViolation, "gradient values do not lie on a line");

  LinearForm beta{};
  for (const auto& row : diffs) {
    std::size_t lead = 0;
    while (lead < 3 && row[lead].is_zero()) ++lead;
    if (lead == 3) continue;
    Gq inv = row[lead].inverse();
    for (std::size_t i = 0; i < 3; ++i) beta.coeffs[i] = row[i] * inv;
    break;
  }

  RatFunc rest = f - RatFunc(alpha.as_poly(v));
  RatFunc ell;
  if (beta.is_zero()) {
    if (!rest.is_constant()) fail(ErrorCode::StructureViolation, "constant gradient but f is not affine");
    ell = RatFunc::constant(t_vars(), *rest.constant_value());
  } else {
    std::size_t lead = 0;
    while (beta.coeffs[lead].is_zero()) ++lead;
    std::map<std::string, RatFunc> line;
    for (std::size_t i = 0; i < 3; ++i)
      line.emplace(v.name(i), i == lead ? RatFunc::variable(t_vars(), "t") : RatFunc::constant(t_vars(), Gq()));
    try {
      ell = substitute(rest, line, t_vars());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IdenticallyZeroDenominator) throw;
      fail(ErrorCode::StructureViolation, "f - alpha . z has a pole along the base line");
    }
  }

  EikonalSolution s{{alpha, beta, *csq}, ell};
  try {
    s.frame.validate();
  } catch (const Error&) {
    fail(ErrorCode::StructureViolation, "recovered forms violate the frame identities");
  }
  if (build_solution(s) != f)
    fail(ErrorCode::StructureViolation, "f is not of the form alpha . z + ell(beta . z)");
  return s;
}

bool flow_identity_check(const RatFunc& f, const Gq& csq) {
  auto g = partials(f);
  RatVectorField x{f.vars(), g};
  auto rate = lie_derivative_unreduced(x, f);
  if (rate.num != rate.den * csq) return false;
  for (const auto& gi : g)
    if (!is_first_integral(x, gi)) return false;
  return true;
}

bool gradient_first_integral_check(const RatFunc& f) {
  if (f.is_constant()) fail(ErrorCode::ConstantFunction, "f is constant");
  auto g = partials(f);
  RatVectorField x{f.vars(), g};
  for (const auto& gi : g)
    if (!is_first_integral(x, gi)) return false;
  return true;
}

RatFunc flow_residual_symbolic(const RatFunc& f, const Gq& csq) {
  VarSet ext = with_time(f.vars());
  auto moved = substitute(f, flow_assignment(f.vars(), ext, partials(f)), ext);
  RatFunc lifted = substitute(f, {}, ext);
  return moved - lifted - RatFunc::constant(ext, csq) * RatFunc::variable(ext, "t");
}

std::vector<RatFunc> gradient_drift_symbolic(const RatFunc& f) {
  VarSet ext = with_time(f.vars());
  auto g = partials(f);
  auto assignment = flow_assignment(f.vars(), ext, g);
  std::vector<RatFunc> out;
  for (const auto& gi : g) out.push_back(substitute(gi, assignment, ext) - substitute(gi, {}, ext));
  return out;
}

namespace {

// z_i -> p_i + t g_i(p) over the single variable t.
std::map<std::string, RatFunc> line_through(const RatFunc& f, const std::vector<RatFunc>& g,
                                            std::span<const Gq> p) {
  if (p.size() != f.vars().size()) fail(ErrorCode::ArityMismatch, "point has the wrong dimension");
  std::map<std::string, RatFunc> a;
  RatFunc t = RatFunc::variable(t_vars(), "t");
  for (std::size_t i = 0; i < p.size(); ++i)
    a.emplace(f.vars().name(i),
              RatFunc::constant(t_vars(), p[i]) + RatFunc::constant(t_vars(), evaluate(g[i], p)) * t);
  return a;
}

}  // namespace

RatFunc flow_residual_at(const RatFunc& f, const Gq& csq, std::span<const Gq> point) {
  auto g = partials(f);
  auto line = line_through(f, g, point);
  RatFunc t = RatFunc::variable(t_vars(), "t");
  return substitute(f, line, t_vars()) - RatFunc::constant(t_vars(), evaluate(f, point)) -
         RatFunc::constant(t_vars(), csq) * t;
}

std::vector<RatFunc> gradient_drift_at(const RatFunc& f, std::span<const Gq> point) {
  auto g = partials(f);
  auto line = line_through(f, g, point);
  std::vector<RatFunc> out;
  for (const auto& gi : g)
    out.push_back(substitute(gi, line, t_vars()) - RatFunc::constant(t_vars(), evaluate(gi, point)));
  return out;
}

RatFunc radial_obstruction_residual(const RatFunc& ell, const Gq& csq) {
  RatFunc l = univariate(ell);
  RatFunc d = derivative(l, std::size_t{0});
  RatFunc t = RatFunc::variable(l.vars(), l.vars().name(0));
  return RatFunc::constant(l.vars(), Gq(4)) * t * d * d - RatFunc::constant(l.vars(), csq);
}

bool frame_quadratic_is_square(const LinearForm& alpha, const LinearForm& beta) {
  Gq a2 = norm2(beta), a1 = Gq(2) * pairing(alpha, beta), a0 = -norm2(alpha);
  if (a2.is_zero()) return a1.is_zero();
  return (a1 * a1 - Gq(4) * a2 * a0).is_zero();
}

void RiccatiEquation::validate() const {
  if (a.vars().size() > 1) fail(ErrorCode::InvalidArgument, "a must be univariate");
  if (a.total_degree() > 2) fail(ErrorCode::InvalidArgument, "a must have degree at most 2");
  if (a.is_zero() && c0.is_zero() && c3.is_zero() && a3.is_zero())
    fail(ErrorCode::InvalidArgument, "all Riccati coefficients vanish");
}

RatFunc riccati_residual(const RiccatiEquation& eq, const RatFunc& y) {
  eq.validate();
  RatFunc yy = univariate(y);
  const VarSet& v = yy.vars();
  RatFunc a(eq.a.vars().size() == 0 ? eq.a.with_vars(v) : eq.a);
  auto k = [&](const Gq& c) { return RatFunc::constant(v, c); };
  return a * derivative(yy, std::size_t{0}) - (k(eq.c0) + k(eq.c3) * yy + k(eq.a3) * yy * yy);
}

RiccatiFamily parse_riccati_family(const std::string& name) {
  if (name == "double-pole") return RiccatiFamily::DoublePole;
  if (name == "euler") return RiccatiFamily::Euler;
  if (name == "quadratic") return RiccatiFamily::Quadratic;
  fail(ErrorCode::InvalidArgument, "unknown Riccati family '" + name + "'");
}

RiccatiEquation riccati_family(RiccatiFamily which, const Gq& param) {
  MultiPoly t = MultiPoly::variable(t_vars(), 0);
  switch (which) {
    case RiccatiFamily::DoublePole: return {t * t, Gq(), Gq(-1), Gq()};
    case RiccatiFamily::Euler: return {t, Gq(), -param, Gq()};
    case RiccatiFamily::Quadratic: return {t * t, Gq(), Gq(), Gq(1)};
    default: fail(ErrorCode::InvalidArgument, "unknown Riccati family");
  }
}

std::optional<RatFunc> riccati_family_solution(RiccatiFamily which, const Gq& param) {
  RatFunc t = RatFunc::variable(t_vars(), "t");
  switch (which) {
    case RiccatiFamily::DoublePole: return RatFunc::constant(t_vars(), Gq());
    case RiccatiFamily::Euler: {
      if (!param.is_real() || param.re().get_den() != 1) return std::nullopt;
      Integer n = param.re().get_num();
      if (!n.fits_sint_p()) fail(ErrorCode::InvalidArgument, "exponent out of range");
      return pow(t, -static_cast<int>(n.get_si()));
    }
    case RiccatiFamily::Quadratic: return t / (RatFunc::constant(t_vars(), Gq(1)) + RatFunc::constant(t_vars(), param) * t);
    default: fail(ErrorCode::InvalidArgument, "unknown Riccati family");
  }
}

std::vector<MultiPoly> riccati_rational_solutions(const RiccatiEquation& eq, const MultiPoly& den,
                                                  int num_degree) {
  eq.validate();
  if (!eq.c0.is_zero() || !eq.a3.is_zero())
    fail(ErrorCode::InvalidArgument, "only linear homogeneous equations are supported");
  if (num_degree < 0) fail(ErrorCode::InvalidArgument, "num_degree must be nonnegative");
  const VarSet& v = t_vars();
  MultiPoly d = univariate(RatFunc(den)).num();
  if (d.is_zero()) fail(ErrorCode::ZeroDenominator, "zero denominator");
  MultiPoly a = eq.a.with_vars(v);
  MultiPoly dd = derivative(d, std::size_t{0});
  MultiPoly c3(v, eq.c3);

  std::vector<MultiPoly> images;
  int rows = 0;
  for (int k = 0; k <= num_degree; ++k) {
    MultiPoly n = MultiPoly::monomial(v, Monomial::unit(0, static_cast<unsigned>(k)), Gq(1));
    MultiPoly img = a * (derivative(n, std::size_t{0}) * d - n * dd) - c3 * n * d;
    rows = std::max(rows, img.total_degree() + 1);
    images.push_back(std::move(img));
  }
  Matrix m(static_cast<std::size_t>(rows), std::vector<Gq>(images.size()));
  for (std::size_t k = 0; k < images.size(); ++k)
    for (const auto& t : images[k].terms()) m[t.mono.exp[0]][k] = t.coeff;

  std::vector<MultiPoly> out;
  for (const auto& vec : kernel(std::move(m), images.size())) {
    MultiPoly n(v);
    for (std::size_t k = 0; k < vec.size(); ++k)
      if (!vec[k].is_zero())
        n += MultiPoly::monomial(v, Monomial::unit(0, static_cast<unsigned>(k)), vec[k]);
    out.push_back(std::move(n));
  }
  return out;
}

}  // namespace linefol
