#pragma once

#include <map>
#include <span>
#include <string>

#include "linefol/multipoly.hpp"

namespace linefol {

/// num/den with gcd(num, den) = 1 and den's leading coefficient equal to 1.
/// Normalization happens on construction, so == is semantic equality.
class RatFunc {
 public:
  RatFunc() : num_(), den_(VarSet(), Gq(1)) {}
  explicit RatFunc(const VarSet& vars) : num_(vars), den_(vars, Gq(1)) {}
  RatFunc(MultiPoly p);  // NOLINT(google-explicit-constructor)
  /// Throws ZeroDenominator.
  RatFunc(MultiPoly num, MultiPoly den);

  /// Skips the gcd; caller guarantees gcd(num, den) = 1.
  static RatFunc from_coprime(MultiPoly num, MultiPoly den);
  static RatFunc constant(const VarSet& vars, const Gq& c);
  static RatFunc variable(const VarSet& vars, std::string_view name);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  const VarSet& vars() const { return num_.vars(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  std::optional<Gq> constant_value() const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend RatFunc operator*(const Gq& c, const RatFunc& f);

  /// Throws DivisionByZero for the zero function.
  RatFunc inverse() const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

 private:
  MultiPoly num_;
  MultiPoly den_;

  struct Coprime {};
  RatFunc(MultiPoly num, MultiPoly den, Coprime);
  void normalize_unit();
};

/// Negative exponents invert.
RatFunc pow(const RatFunc& f, int exponent);

RatFunc derivative(const RatFunc& f, std::size_t var);
RatFunc derivative(const RatFunc& f, std::string_view var);

/// Throws PoleAtPoint when the denominator vanishes.
Gq evaluate(const RatFunc& f, std::span<const Gq> point);

/// Replaces variables of f by rational functions over `target`. Variables
/// without an entry map to the same-named variable of `target`
/// (UnknownVariable if absent). Throws IdenticallyZeroDenominator.
RatFunc substitute(const RatFunc& f, const std::map<std::string, RatFunc>& assignment,
                   const VarSet& target);

/// Univariate convenience: f(g) where f lives over a one-variable VarSet.
RatFunc compose(const RatFunc& f, const RatFunc& g);

/// Random polynomial with every monomial of total degree <= degree present
/// with probability 1/2 (the top-degree part is never empty when degree >= 0).
MultiPoly sample_poly(Rng& rng, const VarSet& vars, int degree, std::int64_t height);
/// Random num/den with den nonconstant when den_degree > 0.
RatFunc sample_ratfunc(Rng& rng, const VarSet& vars, int num_degree, int den_degree,
                       std::int64_t height);

}  // namespace linefol
