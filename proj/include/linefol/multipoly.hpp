#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linefol/arith.hpp"

namespace linefol {

inline constexpr std::size_t kMaxVars = 8;

/// Ordered, immutable list of variable names shared by every value built
/// over it. Two VarSets are interchangeable iff their names agree in order.
class VarSet {
 public:
  VarSet();
  explicit VarSet(std::vector<std::string> names);

  /// "z1,z2,z3" -> {z1, z2, z3}
  static VarSet parse(std::string_view csv);
  /// z1..zn
  static VarSet coordinates(std::size_t n);

  std::size_t size() const { return names_->size(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Throws UnknownVariable.
  std::size_t require(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  /// This VarSet followed by the given names (already present names skipped).
  VarSet extended(const std::vector<std::string>& extra) const;

  std::string to_string() const;

  friend bool operator==(const VarSet& a, const VarSet& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }
  friend bool operator!=(const VarSet& a, const VarSet& b) { return !(a == b); }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};

  static Monomial unit(std::size_t var, unsigned power = 1);

  unsigned degree() const;
  bool is_one() const;
  bool divides(const Monomial& other) const;

  Monomial operator*(const Monomial& o) const;
  /// Requires divides(); exponents are subtracted.
  Monomial operator/(const Monomial& o) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp == b.exp; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.exp != b.exp; }
};

Monomial monomial_gcd(const Monomial& a, const Monomial& b);

/// Graded lexicographic order with z1 > z2 > ... inside one degree.
bool grlex_less(const Monomial& a, const Monomial& b);

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(b, a); }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const;
};

/// Sparse polynomial over Q(i). Terms are kept sorted by decreasing grlex
/// order, without zero coefficients.
class MultiPoly {
 public:
  struct Term {
    Monomial mono;
    Gq coeff;
  };

  MultiPoly() = default;
  explicit MultiPoly(VarSet vars) : vars_(std::move(vars)) {}
  MultiPoly(VarSet vars, const Gq& c);

  static MultiPoly variable(const VarSet& vars, std::size_t index);
  static MultiPoly variable(const VarSet& vars, std::string_view name);
  static MultiPoly monomial(const VarSet& vars, const Monomial& m, const Gq& c);
  /// Sorts, merges equal monomials and drops zeros.
  static MultiPoly from_terms(VarSet vars, std::vector<Term> terms);
  /// Caller guarantees strictly decreasing monomials and nonzero coefficients.
  static MultiPoly from_sorted_terms(VarSet vars, std::vector<Term> terms);

  const VarSet& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  /// Value of a constant polynomial.
  std::optional<Gq> constant_value() const;
  /// -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t var) const;
  bool is_homogeneous() const;
  /// Bit i set iff variable i occurs.
  unsigned variable_mask() const;

  const Term& leading_term() const { return terms_.front(); }
  const Gq& leading_coefficient() const { return terms_.front().coeff; }
  /// Scaled so that the leading coefficient is 1 (zero stays zero).
  MultiPoly monic() const;
  /// Same polynomial over another VarSet of the same arity.
  MultiPoly with_vars(VarSet vars) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Gq& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Gq& c) { return a *= c; }
  friend MultiPoly operator*(const Gq& c, MultiPoly a) { return a *= c; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  /// Multiplies every term by a monomial.
  MultiPoly shifted(const Monomial& m) const;

 private:
  VarSet vars_;
  std::vector<Term> terms_;

  friend MultiPoly add_impl(const MultiPoly&, const MultiPoly&, bool);
};

MultiPoly pow(const MultiPoly& p, unsigned exponent);

enum class PolyOp { Add, Sub, Mul };
MultiPoly poly_arith(const MultiPoly& p, const MultiPoly& q, PolyOp op);

/// Throws VarSetMismatch unless both operands live over the same VarSet.
void require_same_vars(const VarSet& a, const VarSet& b);

MultiPoly derivative(const MultiPoly& p, std::size_t var);
MultiPoly derivative(const MultiPoly& p, std::string_view var);

/// Exact value at a point; point.size() must equal the arity.
Gq evaluate(const MultiPoly& p, std::span<const Gq> point);

/// Replaces one variable by a constant.
MultiPoly evaluate_var(const MultiPoly& p, std::size_t var, const Gq& value);

/// r with q * r == p, if it exists.
std::optional<MultiPoly> exact_divide(const MultiPoly& p, const MultiPoly& q);
/// Like exact_divide but failure is an InternalInconsistency.
MultiPoly divide_or_throw(const MultiPoly& p, const MultiPoly& q);

/// Greatest common divisor normalized to leading coefficient 1;
/// gcd(p, 0) is p made monic. Throws BothZero.
MultiPoly poly_gcd(const MultiPoly& p, const MultiPoly& q);
MultiPoly poly_lcm(const MultiPoly& p, const MultiPoly& q);

/// gcd of the coefficients of p viewed as a polynomial in `var`, monic.
MultiPoly content_in(const MultiPoly& p, std::size_t var);

/// Coefficients of p viewed as a polynomial in `var`, index = power.
std::vector<MultiPoly> coefficients_in(const MultiPoly& p, std::size_t var);

/// (degree, component) pairs in increasing degree; empty iff p == 0.
std::vector<std::pair<int, MultiPoly>> homogeneous_components(const MultiPoly& p);

}  // namespace linefol
