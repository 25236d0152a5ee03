#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "linefol/ratfunc.hpp"

namespace linefol {

/// X = sum X_i d/dz_i with polynomial components. The zero field is
/// representable (a bracket may vanish) but rejected where a direction
/// field is required.
class PolyVectorField {
 public:
  PolyVectorField() = default;
  /// Throws ArityMismatch unless one component per variable.
  PolyVectorField(VarSet vars, std::vector<MultiPoly> components, bool reduced = false);

  static PolyVectorField from_strings(const VarSet& vars, const std::vector<std::string>& comps);

  const VarSet& vars() const { return vars_; }
  const std::vector<MultiPoly>& components() const { return comps_; }
  const MultiPoly& operator[](std::size_t i) const { return comps_[i]; }
  std::size_t size() const { return comps_.size(); }

  bool is_zero() const;
  /// Set when the components are known to have unit gcd.
  bool reduced() const { return reduced_; }
  int max_degree() const;

  std::vector<Gq> at(std::span<const Gq> point) const;

  friend bool operator==(const PolyVectorField& a, const PolyVectorField& b) {
    return a.vars_ == b.vars_ && a.comps_ == b.comps_;
  }

 private:
  VarSet vars_;
  std::vector<MultiPoly> comps_;
  bool reduced_ = false;
};

struct RatVectorField {
  VarSet vars;
  std::vector<RatFunc> components;

  bool is_zero() const;
};

RatVectorField to_rational(const PolyVectorField& x);

MultiPoly lie_derivative(const PolyVectorField& x, const MultiPoly& g);
RatFunc lie_derivative(const PolyVectorField& x, const RatFunc& g);
RatFunc lie_derivative(const RatVectorField& x, const RatFunc& g);

/// [X,Y]_i = X(Y_i) - Y(X_i); not reduced.
PolyVectorField lie_bracket(const PolyVectorField& x, const PolyVectorField& y);

struct Reduction {
  PolyVectorField field;
  MultiPoly cofactor;
};

/// Divides by the monic gcd of the components. Throws ZeroField.
Reduction primitive_reduce(const PolyVectorField& x);

struct PairResidual {
  std::size_t i = 0;
  std::size_t j = 0;
  MultiPoly residual;
};

struct LineFieldCertificate {
  bool holds = false;
  std::optional<MultiPoly> mu;
  std::optional<PairResidual> failing_pair;
};

/// Leaves are straight lines iff X(X_i) X_j - X(X_j) X_i = 0 for all i < j;
/// then X(X_i) = mu X_i with mu polynomial. Throws ZeroField and, should
/// the exact division fail, InternalInconsistency.
LineFieldCertificate line_field_certificate(const PolyVectorField& x);

/// Independent re-check of a certificate against X.
bool verify_certificate(const PolyVectorField& x, const LineFieldCertificate& cert);

/// X(h) as num/den without cancelling common factors; den is the product
/// of the distinct component denominators times den(h)^2. Cheap when only
/// zero tests are needed.
struct UnreducedRatio {
  MultiPoly num;
  MultiPoly den;
};
UnreducedRatio lie_derivative_unreduced(const RatVectorField& x, const RatFunc& h);

bool is_first_integral(const PolyVectorField& x, const RatFunc& h);
bool is_first_integral(const RatVectorField& x, const RatFunc& h);

/// First nonvanishing 2x2 minor of ([Y,X], X), if any.
std::optional<PairResidual> symmetry_residual(const PolyVectorField& y, const PolyVectorField& x);
bool is_infinitesimal_symmetry(const PolyVectorField& y, const PolyVectorField& x);

/// Throws ConstantFunction.
RatVectorField gradient(const RatFunc& f);

/// Multiplies by the lcm of the denominators and reduces. Throws ZeroField.
PolyVectorField clear_denominators(const RatVectorField& x);

std::ostream& operator<<(std::ostream& os, const PolyVectorField& x);

}  // namespace linefol
