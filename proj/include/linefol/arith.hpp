#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace linefol {

using Integer = mpz_class;
/// mpq_class keeps numerator and denominator coprime with a positive
/// denominator after every operation.
using Rational = mpq_class;

std::string to_string(const Rational& q);

/// Exact element of Q(i).
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {  // NOLINT
    re_.canonicalize();
  }
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return sgn(im_) == 0 && re_ == 1; }

  GaussianRational conj() const { return {re_, -im_}; }
  /// re² + im², the field norm down to Q.
  Rational norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational inverse() const;

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  /// Canonical text "a/b + c/d i"; parts equal to zero are omitted.
  std::string to_string() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

using Gq = GaussianRational;

Gq pow(const Gq& base, unsigned exponent);

/// Inverse of GaussianRational::to_string. Accepts "3", "-1/2 i", "i",
/// "1/2 - 1/2 i", with insignificant whitespace.
Gq parse_gaussian(std::string_view text);

enum class ArithOp { Add, Sub, Mul, Div };
Gq gq_arith(const Gq& a, const Gq& b, ArithOp op);

/// Square root inside Q(i) when one exists.
std::optional<Gq> sqrt_exact(const Gq& value);
std::optional<Rational> sqrt_exact(const Rational& value);

std::size_t hash_value(const Rational& q);
std::size_t hash_value(const Gq& z);

/// Seeded generator with a platform-independent output stream.
/// std::mt19937_64 is fully specified by the standard; the range reduction
/// below is done by hand because std::uniform_int_distribution is not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// Derives an independent child seed.
  std::uint64_t split();

 private:
  std::mt19937_64 engine_;
};

/// Rational with |numerator| <= height and 1 <= denominator <= height.
Rational sample_rational(Rng& rng, std::int64_t height);
Gq sample_gaussian_rational(Rng& rng, std::int64_t height);
/// As above but never zero.
Gq sample_nonzero_gaussian(Rng& rng, std::int64_t height);

}  // namespace linefol

template <>
struct std::hash<linefol::Gq> {
  std::size_t operator()(const linefol::Gq& z) const { return linefol::hash_value(z); }
};
