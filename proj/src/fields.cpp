#include "linefol/fields.hpp"

#include <algorithm>

#include "linefol/error.hpp"
#include "linefol/expr.hpp"

namespace linefol {

PolyVectorField::PolyVectorField(VarSet vars, std::vector<MultiPoly> components, bool reduced)
    : vars_(std::move(vars)), comps_(std::move(components)), reduced_(reduced) {
  if (comps_.size() != vars_.size())
    fail(ErrorCode::ArityMismatch, std::to_string(comps_.size()) + " components for " +
                                       std::to_string(vars_.size()) + " variables");
  for (auto& c : comps_) {
    if (c.vars() != vars_) {
      if (c.vars().size() == 0 && c.is_constant())
        c = c.with_vars(vars_);
      else
        require_same_vars(c.vars(), vars_);
    }
  }
}

PolyVectorField PolyVectorField::from_strings(const VarSet& vars,
                                              const std::vector<std::string>& comps) {
  std::vector<MultiPoly> polys;
  polys.reserve(comps.size());
  for (const auto& s : comps) polys.push_back(parse_poly(s, vars));
  return PolyVectorField(vars, std::move(polys));
}

bool PolyVectorField::is_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

int PolyVectorField::max_degree() const {
  int d = -1;
  for (const auto& c : comps_) d = std::max(d, c.total_degree());
  return d;
}

std::vector<Gq> PolyVectorField::at(std::span<const Gq> point) const {
  std::vector<Gq> v;
  v.reserve(comps_.size());
  for (const auto& c : comps_) v.push_back(evaluate(c, point));
  return v;
}

bool RatVectorField::is_zero() const {
  for (const auto& c : components)
    if (!c.is_zero()) return false;
  return true;
}

RatVectorField to_rational(const PolyVectorField& x) {
  RatVectorField r{x.vars(), {}};
  for (const auto& c : x.components()) r.components.emplace_back(c);
  return r;
}

MultiPoly lie_derivative(const PolyVectorField& x, const MultiPoly& g) {
  require_same_vars(x.vars(), g.vars());
  MultiPoly out(x.vars());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero() || g.degree_in(i) <= 0) continue;
    out += x[i] * derivative(g, i);
  }
  return out;
}

RatFunc lie_derivative(const PolyVectorField& x, const RatFunc& g) {
  require_same_vars(x.vars(), g.vars());
  if (g.is_polynomial()) return RatFunc(lie_derivative(x, g.num()));
  // X(N/D) = (X(N) D - N X(D)) / D^2
  MultiPoly top = lie_derivative(x, g.num()) * g.den() - g.num() * lie_derivative(x, g.den());
  return RatFunc(std::move(top), g.den() * g.den());
}

RatFunc lie_derivative(const RatVectorField& x, const RatFunc& g) {
  require_same_vars(x.vars, g.vars());
  if (x.components.size() != x.vars.size())
    fail(ErrorCode::ArityMismatch, "vector field arity differs from its VarSet");
  RatFunc out(x.vars);
  for (std::size_t i = 0; i < x.components.size(); ++i) {
    if (x.components[i].is_zero()) continue;
    RatFunc d = derivative(g, i);
    if (!d.is_zero()) out += x.components[i] * d;
  }
  return out;
}

PolyVectorField lie_bracket(const PolyVectorField& x, const PolyVectorField& y) {
  require_same_vars(x.vars(), y.vars());
  std::vector<MultiPoly> comps;
  comps.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    comps.push_back(lie_derivative(x, y[i]) - lie_derivative(y, x[i]));
  return PolyVectorField(x.vars(), std::move(comps));
}

Reduction primitive_reduce(const PolyVectorField& x) {
  if (x.is_zero()) fail(ErrorCode::ZeroField, "the zero vector field has no direction");
  MultiPoly g(x.vars());
  for (const auto& c : x.components()) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : poly_gcd(g, c);
    if (g.is_one()) break;
  }
  if (g.is_one()) return {PolyVectorField(x.vars(), x.components(), true), g};
  std::vector<MultiPoly> comps;
  comps.reserve(x.size());
  for (const auto& c : x.components()) comps.push_back(divide_or_throw(c, g));
  return {PolyVectorField(x.vars(), std::move(comps), true), g};
}

LineFieldCertificate line_field_certificate(const PolyVectorField& x) {
  if (x.is_zero()) fail(ErrorCode::ZeroField, "the zero vector field has no direction");
  std::vector<MultiPoly> y;
  y.reserve(x.size());
  for (const auto& c : x.components()) y.push_back(lie_derivative(x, c));

  LineFieldCertificate cert;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      MultiPoly r = y[i] * x[j] - y[j] * x[i];
      if (!r.is_zero()) {
        cert.failing_pair = PairResidual{i, j, std::move(r)};
        return cert;
      }
    }
  }
  std::size_t k = 0;
  while (x[k].is_zero()) ++k;
  auto mu = exact_divide(y[k], x[k]);
  if (!mu) fail(ErrorCode::InternalInconsistency, "cross conditions hold but the cofactor is not polynomial");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (y[i] != *mu * x[i])
      fail(ErrorCode::InternalInconsistency, "cofactor does not scale every component");
  cert.holds = true;
  cert.mu = std::move(*mu);
  return cert;
}

bool verify_certificate(const PolyVectorField& x, const LineFieldCertificate& cert) {
  if (cert.holds) {
    if (!cert.mu || cert.failing_pair) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (lie_derivative(x, x[i]) != *cert.mu * x[i]) return false;
    return true;
  }
  if (!cert.failing_pair || cert.mu) return false;
  const auto& fp = *cert.failing_pair;
  if (fp.i >= x.size() || fp.j >= x.size() || fp.residual.is_zero()) return false;
  MultiPoly r = lie_derivative(x, x[fp.i]) * x[fp.j] - lie_derivative(x, x[fp.j]) * x[fp.i];
  return r == fp.residual;
}

bool is_first_integral(const PolyVectorField& x, const RatFunc& h) {
  return lie_derivative(x, h).is_zero();
}

UnreducedRatio lie_derivative_unreduced(const RatVectorField& x, const RatFunc& h) {
  require_same_vars(x.vars, h.vars());
  if (x.components.size() != x.vars.size())
    fail(ErrorCode::ArityMismatch, "vector field arity differs from its VarSet");
  std::vector<MultiPoly> dens;
  for (const auto& c : x.components)
    if (!c.is_polynomial() && std::find(dens.begin(), dens.end(), c.den()) == dens.end())
      dens.push_back(c.den());
  const MultiPoly& p = h.num();
  const MultiPoly& q = h.den();
  MultiPoly num(x.vars);
  for (std::size_t j = 0; j < x.components.size(); ++j) {
    const RatFunc& c = x.components[j];
    if (c.is_zero()) continue;
    MultiPoly dh = h.is_polynomial() ? derivative(p, j) : derivative(p, j) * q - p * derivative(q, j);
    if (dh.is_zero()) continue;
    MultiPoly term = c.num() * dh;
    for (const auto& d : dens)
      if (c.is_polynomial() || d != c.den()) term = term * d;
    num += term;
  }
  MultiPoly den(x.vars, Gq(1));
  for (const auto& d : dens) den = den * d;
  if (!h.is_polynomial()) den = den * q * q;
  return {std::move(num), std::move(den)};
}

bool is_first_integral(const RatVectorField& x, const RatFunc& h) {
  return lie_derivative_unreduced(x, h).num.is_zero();
}

std::optional<PairResidual> symmetry_residual(const PolyVectorField& y, const PolyVectorField& x) {
  PolyVectorField z = lie_bracket(y, x);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      MultiPoly m = z[i] * x[j] - z[j] * x[i];
      if (!m.is_zero()) return PairResidual{i, j, std::move(m)};
    }
  return std::nullopt;
}

bool is_infinitesimal_symmetry(const PolyVectorField& y, const PolyVectorField& x) {
  return !symmetry_residual(y, x).has_value();
}

RatVectorField gradient(const RatFunc& f) {
  RatVectorField g{f.vars(), {}};
  g.components.reserve(f.vars().size());
  for (std::size_t i = 0; i < f.vars().size(); ++i) g.components.push_back(derivative(f, i));
  if (g.is_zero()) fail(ErrorCode::ConstantFunction, "gradient of a constant function");
  return g;
}

PolyVectorField clear_denominators(const RatVectorField& x) {
  if (x.is_zero()) fail(ErrorCode::ZeroField, "the zero vector field has no direction");
  MultiPoly l(x.vars, Gq(1));
  for (const auto& c : x.components)
    if (!c.is_zero() && !c.is_polynomial()) l = l.is_one() ? c.den() : poly_lcm(l, c.den());
  std::vector<MultiPoly> comps;
  comps.reserve(x.components.size());
  for (const auto& c : x.components) {
    if (c.is_zero()) {
      comps.emplace_back(x.vars);
    } else {
      comps.push_back(c.num() * (c.is_polynomial() ? l : divide_or_throw(l, c.den())));
    }
  }
  return primitive_reduce(PolyVectorField(x.vars, std::move(comps))).field;
}

std::ostream& operator<<(std::ostream& os, const PolyVectorField& x) {
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  return os << ")";
}

}  // namespace linefol
