#include "upoly.hpp"

#include "linefol/error.hpp"

namespace linefol::detail {

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Gq UPoly::eval(const Gq& x) const {
  Gq acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

UPoly UPoly::monic() const {
  if (c_.empty() || lead().is_one()) return *this;
  return scaled(lead().inverse());
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (c_.empty() || o.c_.empty()) return {};
  std::vector<Gq> out(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  }
  return UPoly(std::move(out));
}

UPoly UPoly::scaled(const Gq& s) const {
  if (s.is_zero()) return {};
  std::vector<Gq> out = c_;
  for (auto& v : out) v *= s;
  return UPoly(std::move(out));
}

UPoly UPoly::divmod(const UPoly& d, UPoly& rem) const {
  if (d.is_zero()) fail(ErrorCode::DivisorZero, "univariate division by zero");
  rem = *this;
  if (degree() < d.degree()) return {};
  std::vector<Gq> q(static_cast<std::size_t>(degree() - d.degree() + 1));
  Gq inv = d.lead().inverse();
  std::vector<Gq>& r = rem.c_;
  for (int k = degree() - d.degree(); k >= 0; --k) {
    const Gq& top = r[static_cast<std::size_t>(k + d.degree())];
    if (top.is_zero()) continue;
    Gq factor = top * inv;
    for (std::size_t j = 0; j < d.c_.size(); ++j)
      r[static_cast<std::size_t>(k) + j] -= factor * d.c_[j];
    q[static_cast<std::size_t>(k)] = std::move(factor);
  }
  rem.trim();
  return UPoly(std::move(q));
}

UPoly UPoly::exact_div(const UPoly& d) const {
  UPoly rem;
  UPoly q = divmod(d, rem);
  if (!rem.is_zero()) fail(ErrorCode::InternalInconsistency, "inexact univariate division");
  return q;
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r;
    a.divmod(b, r);
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

}  // namespace linefol::detail
