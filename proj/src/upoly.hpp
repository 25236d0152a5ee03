#pragma once

// Dense univariate polynomials over Q(i). Internal helper for the GCD code;
// the public univariate type is a MultiPoly over a one-variable VarSet.

#include <vector>

#include "linefol/arith.hpp"

namespace linefol::detail {

class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Gq> coeffs) : c_(std::move(coeffs)) { trim(); }
  explicit UPoly(const Gq& constant) {
    if (!constant.is_zero()) c_.push_back(constant);
  }

  /// x - root
  static UPoly linear_root(const Gq& root) { return UPoly({-root, Gq(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Gq>& coeffs() const { return c_; }
  const Gq& operator[](std::size_t i) const { return c_[i]; }
  const Gq& lead() const { return c_.back(); }

  Gq eval(const Gq& x) const;
  UPoly monic() const;

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly operator*(const UPoly& o) const;
  UPoly scaled(const Gq& s) const;

  /// Returns quotient; remainder written to `rem`.
  UPoly divmod(const UPoly& d, UPoly& rem) const;
  /// Exact quotient; caller guarantees divisibility.
  UPoly exact_div(const UPoly& d) const;

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

 private:
  std::vector<Gq> c_;  // low to high
  void trim();
};

/// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(UPoly a, UPoly b);

}  // namespace linefol::detail
