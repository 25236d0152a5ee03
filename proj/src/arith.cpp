#include "linefol/arith.hpp"

#include <cctype>

#include "linefol/error.hpp"

namespace linefol {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::VarSetMismatch: return "VarSetMismatch";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::PoleAtPoint: return "PoleAtPoint";
    case ErrorCode::IdenticallyZeroDenominator: return "IdenticallyZeroDenominator";
    case ErrorCode::BothZero: return "BothZero";
    case ErrorCode::DivisorZero: return "DivisorZero";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::ZeroField: return "ZeroField";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::ConstantFunction: return "ConstantFunction";
    case ErrorCode::WrongArity: return "WrongArity";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::SamplingExhausted: return "SamplingExhausted";
    case ErrorCode::DegenerateDirection: return "DegenerateDirection";
    case ErrorCode::DegenerateData: return "DegenerateData";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::DuplicateLines: return "DuplicateLines";
    case ErrorCode::NotALineField: return "NotALineField";
    case ErrorCode::PoleOnAllOfSpace: return "PoleOnAllOfSpace";
    case ErrorCode::NotASolution: return "NotASolution";
    case ErrorCode::StructureViolation: return "StructureViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string to_string(const Rational& q) { return q.get_str(); }

Gq Gq::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  Rational n = norm();
  return {re_ / n, -im_ / n};
}

Gq& Gq::operator+=(const Gq& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Gq& Gq::operator-=(const Gq& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Gq& Gq::operator*=(const Gq& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Gq& Gq::operator/=(const Gq& o) {
  if (o.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string Gq::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  if (sgn(re_) != 0) out = re_.get_str();
  if (sgn(im_) != 0) {
    Rational mag = abs(im_);
    std::string body = mag == 1 ? "i" : mag.get_str() + " i";
    if (out.empty()) {
      out = (sgn(im_) < 0 ? "-" : "") + body;
    } else {
      out += sgn(im_) < 0 ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

Gq pow(const Gq& base, unsigned exponent) {
  Gq result(1);
  Gq b = base;
  while (exponent) {
    if (exponent & 1u) result *= b;
    exponent >>= 1u;
    if (exponent) b *= b;
  }
  return result;
}

namespace {

bool read_uint(std::string_view s, std::size_t& pos, Integer& out) {
  std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start) return false;
  out = Integer(std::string(s.substr(start, pos - start)));
  return true;
}

}  // namespace

Gq parse_gaussian(std::string_view s) {
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  skip_space();
  if (pos == s.size()) throw SyntaxError(pos, "empty Gaussian rational");
  Gq result;
  bool first = true;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
      skip_space();
    } else if (!first) {
      throw SyntaxError(pos, "expected '+' or '-'");
    }
    first = false;
    Rational value(1);
    bool have_number = false;
    Integer num;
    if (read_uint(s, pos, num)) {
      have_number = true;
      Integer den(1);
      if (pos < s.size() && s[pos] == '/') {
        ++pos;
        if (!read_uint(s, pos, den)) throw SyntaxError(pos, "expected denominator");
        if (den == 0) fail(ErrorCode::DivisionByZero, "zero denominator in literal");
      }
      value = Rational(num, den);
      value.canonicalize();
      skip_space();
    }
    bool imaginary = false;
    if (pos < s.size() && s[pos] == 'i') {
      imaginary = true;
      ++pos;
      skip_space();
    }
    if (!have_number && !imaginary) throw SyntaxError(pos, "expected number or 'i'");
    if (sign < 0) value = -value;
    result += imaginary ? Gq(Rational(0), value) : Gq(value);
  }
  return result;
}

Gq gq_arith(const Gq& a, const Gq& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  return {};
}

std::optional<Rational> sqrt_exact(const Rational& value) {
  if (sgn(value) < 0) return std::nullopt;
  const Integer& n = value.get_num();
  const Integer& d = value.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  Integer rn = sqrt(n);
  Integer rd = sqrt(d);
  return Rational(rn, rd);
}

std::optional<Gq> sqrt_exact(const Gq& value) {
  const Rational& a = value.re();
  const Rational& b = value.im();
  if (sgn(b) == 0) {
    if (sgn(a) >= 0) {
      if (auto r = sqrt_exact(a)) return Gq(*r);
      return std::nullopt;
    }
    if (auto r = sqrt_exact(Rational(-a))) return Gq(Rational(0), *r);
    return std::nullopt;
  }
  // (x + iy)^2 = a + ib  =>  x^2 = (a + |z|)/2, y = b / (2x)
  auto modulus = sqrt_exact(Rational(a * a + b * b));
  if (!modulus) return std::nullopt;
  Rational x2 = (a + *modulus) / 2;
  auto x = sqrt_exact(x2);
  if (!x || sgn(*x) == 0) return std::nullopt;
  Rational y = b / (2 * *x);
  return Gq(*x, y);
}

std::size_t hash_value(const Rational& q) {
  std::size_t h = mpz_get_ui(q.get_num_mpz_t()) * 1000003u;
  h ^= mpz_get_ui(q.get_den_mpz_t()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  if (sgn(q) < 0) h = ~h;
  return h;
}

std::size_t hash_value(const Gq& z) {
  std::size_t h = hash_value(z.re());
  return h ^ (hash_value(z.im()) * 31u + 0x517cc1b727220a95ULL);
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) fail(ErrorCode::InvalidArgument, "empty sampling range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1u;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t draw;
  do {
    draw = next();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

std::uint64_t Rng::split() { return next() ^ 0x6a09e667f3bcc909ULL; }

Rational sample_rational(Rng& rng, std::int64_t height) {
  if (height < 1) fail(ErrorCode::InvalidArgument, "height must be >= 1");
  std::int64_t num = rng.uniform(-height, height);
  std::int64_t den = rng.uniform(1, height);
  Rational q(static_cast<long>(num), static_cast<unsigned long>(den));
  q.canonicalize();
  return q;
}

Gq sample_gaussian_rational(Rng& rng, std::int64_t height) {
  Rational re = sample_rational(rng, height);
  Rational im = sample_rational(rng, height);
  return {re, im};
}

Gq sample_nonzero_gaussian(Rng& rng, std::int64_t height) {
  for (;;) {
    Gq z = sample_gaussian_rational(rng, height);
    if (!z.is_zero()) return z;
  }
}

}  // namespace linefol
