#include "linefol/multipoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "linefol/error.hpp"
#include "upoly.hpp"

namespace linefol {

// ---------------------------------------------------------------- VarSet

namespace {

const std::shared_ptr<const std::vector<std::string>>& empty_names() {
  static const auto names = std::make_shared<const std::vector<std::string>>();
  return names;
}

}  // namespace

VarSet::VarSet() : names_(empty_names()) {}

VarSet::VarSet(std::vector<std::string> names) {
  if (names.size() > kMaxVars)
    fail(ErrorCode::InvalidArgument,
         "at most " + std::to_string(kMaxVars) + " variables are supported");
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) fail(ErrorCode::InvalidArgument, "empty variable name");
    for (std::size_t j = 0; j < i; ++j)
      if (names[i] == names[j])
        fail(ErrorCode::InvalidArgument, "duplicate variable '" + names[i] + "'");
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

VarSet VarSet::parse(std::string_view csv) {
  std::vector<std::string> names;
  std::string current;
  for (char c : csv) {
    if (c == ',') {
      names.push_back(current);
      current.clear();
    } else if (c != ' ') {
      current.push_back(c);
    }
  }
  if (!current.empty() || !names.empty()) names.push_back(current);
  return VarSet(std::move(names));
}

VarSet VarSet::coordinates(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("z" + std::to_string(i));
  return VarSet(std::move(names));
}

std::optional<std::size_t> VarSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i)
    if ((*names_)[i] == name) return i;
  return std::nullopt;
}

std::size_t VarSet::require(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  fail(ErrorCode::UnknownVariable, "unknown variable '" + std::string(name) + "'");
}

VarSet VarSet::extended(const std::vector<std::string>& extra) const {
  std::vector<std::string> names = *names_;
  for (const auto& n : extra)
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  return VarSet(std::move(names));
}

std::string VarSet::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < names_->size(); ++i) {
    if (i) out += ",";
    out += (*names_)[i];
  }
  return out;
}

// -------------------------------------------------------------- Monomial

Monomial Monomial::unit(std::size_t var, unsigned power) {
  Monomial m;
  m.exp[var] = static_cast<std::uint16_t>(power);
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (auto e : exp) d += e;
  return d;
}

bool Monomial::is_one() const {
  for (auto e : exp)
    if (e) return false;
  return true;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (exp[i] > other.exp[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned e = unsigned(exp[i]) + o.exp[i];
    if (e > 0xFFFFu) fail(ErrorCode::InvalidArgument, "exponent overflow");
    m.exp[i] = static_cast<std::uint16_t>(e);
  }
  return m;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    m.exp[i] = static_cast<std::uint16_t>(exp[i] - o.exp[i]);
  return m;
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = std::min(a.exp[i], b.exp[i]);
  return m;
}

bool grlex_less(const Monomial& a, const Monomial& b) {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i];
  return false;
}

std::size_t MonomialHash::operator()(const Monomial& m) const {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto e : m.exp) {
    h ^= e;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

// ------------------------------------------------------------- MultiPoly

void require_same_vars(const VarSet& a, const VarSet& b) {
  if (a != b)
    fail(ErrorCode::VarSetMismatch, "operands over [" + a.to_string() + "] and [" +
                                        b.to_string() + "]");
}

namespace {

// A constant built without a VarSet combines with anything.
const VarSet& common_vars(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars() == b.vars()) return a.vars();
  if (a.vars().size() == 0 && a.is_constant()) return b.vars();
  if (b.vars().size() == 0 && b.is_constant()) return a.vars();
  require_same_vars(a.vars(), b.vars());
  return a.vars();
}

}  // namespace

MultiPoly::MultiPoly(VarSet vars, const Gq& c) : vars_(std::move(vars)) {
  if (!c.is_zero()) terms_.push_back({Monomial{}, c});
}

MultiPoly MultiPoly::variable(const VarSet& vars, std::size_t index) {
  if (index >= vars.size()) fail(ErrorCode::UnknownVariable, "variable index out of range");
  return monomial(vars, Monomial::unit(index), Gq(1));
}

MultiPoly MultiPoly::variable(const VarSet& vars, std::string_view name) {
  return variable(vars, vars.require(name));
}

MultiPoly MultiPoly::monomial(const VarSet& vars, const Monomial& m, const Gq& c) {
  MultiPoly p(vars);
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

MultiPoly MultiPoly::from_terms(VarSet vars, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_less(b.mono, a.mono); });
  MultiPoly p(std::move(vars));
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
  return p;
}

MultiPoly MultiPoly::from_sorted_terms(VarSet vars, std::vector<Term> terms) {
  MultiPoly p(std::move(vars));
  p.terms_ = std::move(terms);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

bool MultiPoly::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff.is_one();
}

std::optional<Gq> MultiPoly::constant_value() const {
  if (terms_.empty()) return Gq();
  if (is_constant()) return terms_[0].coeff;
  return std::nullopt;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.front().mono.degree());
}

int MultiPoly::degree_in(std::size_t var) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, int(t.mono.exp[var]));
  return d;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.front().mono.degree() == terms_.back().mono.degree();
}

unsigned MultiPoly::variable_mask() const {
  unsigned mask = 0;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (t.mono.exp[i]) mask |= 1u << i;
  return mask;
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty() || leading_coefficient().is_one()) return *this;
  return *this * leading_coefficient().inverse();
}

MultiPoly MultiPoly::with_vars(VarSet vars) const {
  if (vars.size() != vars_.size() && !(vars_.size() == 0 && is_constant()))
    fail(ErrorCode::ArityMismatch, "cannot move polynomial to a VarSet of different size");
  MultiPoly p = *this;
  p.vars_ = std::move(vars);
  return p;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

MultiPoly add_impl(const MultiPoly& a, const MultiPoly& b, bool subtract) {
  MultiPoly out(common_vars(a, b));
  out.terms_.reserve(a.terms_.size() + b.terms_.size());
  auto ia = a.terms_.begin(), ib = b.terms_.begin();
  while (ia != a.terms_.end() || ib != b.terms_.end()) {
    if (ib == b.terms_.end() || (ia != a.terms_.end() && grlex_less(ib->mono, ia->mono))) {
      out.terms_.push_back(*ia++);
    } else if (ia == a.terms_.end() || grlex_less(ia->mono, ib->mono)) {
      out.terms_.push_back({ib->mono, subtract ? -ib->coeff : ib->coeff});
      ++ib;
    } else {
      Gq c = subtract ? ia->coeff - ib->coeff : ia->coeff + ib->coeff;
      if (!c.is_zero()) out.terms_.push_back({ia->mono, std::move(c)});
      ++ia;
      ++ib;
    }
  }
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) { return *this = add_impl(*this, o, false); }
MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this = add_impl(*this, o, true); }
MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const Gq& c) {
  if (c.is_zero()) {
    terms_.clear();
  } else if (!c.is_one()) {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

MultiPoly MultiPoly::shifted(const Monomial& m) const {
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.mono = t.mono * m;
  return p;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.vars_ != b.vars_) {
    bool a_free = a.vars_.size() == 0 && a.is_constant();
    bool b_free = b.vars_.size() == 0 && b.is_constant();
    if (!a_free && !b_free) return false;
  }
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

// Multiplication: clear denominators, multiply Gaussian integers with
// mpz_addmul into a hash table, divide once at the end.
namespace {

struct IntForm {
  std::vector<Monomial> mono;
  std::vector<Integer> re, im;
  Integer den{1};
  bool real = true;
};

IntForm to_int_form(const MultiPoly& p) {
  IntForm f;
  for (const auto& t : p.terms()) {
    mpz_lcm(f.den.get_mpz_t(), f.den.get_mpz_t(), t.coeff.re().get_den_mpz_t());
    mpz_lcm(f.den.get_mpz_t(), f.den.get_mpz_t(), t.coeff.im().get_den_mpz_t());
    if (!t.coeff.is_real()) f.real = false;
  }
  f.mono.reserve(p.size());
  f.re.reserve(p.size());
  f.im.reserve(p.size());
  for (const auto& t : p.terms()) {
    f.mono.push_back(t.mono);
    Integer r = t.coeff.re().get_num() * (f.den / t.coeff.re().get_den());
    Integer i = t.coeff.im().get_num() * (f.den / t.coeff.im().get_den());
    f.re.push_back(std::move(r));
    f.im.push_back(std::move(i));
  }
  return f;
}

MultiPoly multiply_small(const MultiPoly& a, const MultiPoly& b, const VarSet& vars) {
  // b has exactly one term
  const auto& bt = b.terms().front();
  std::vector<MultiPoly::Term> terms;
  terms.reserve(a.size());
  for (const auto& t : a.terms()) terms.push_back({t.mono * bt.mono, t.coeff * bt.coeff});
  return MultiPoly::from_sorted_terms(vars, std::move(terms));
}

}  // namespace

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  const VarSet& vars = common_vars(a, b);
  if (a.is_zero() || b.is_zero()) return MultiPoly(vars);
  if (b.size() == 1) return multiply_small(a, b, vars);
  if (a.size() == 1) return multiply_small(b, a, vars);

  IntForm fa = to_int_form(a);
  IntForm fb = to_int_form(b);
  const bool real = fa.real && fb.real;

  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  index.reserve(a.size() * b.size());
  std::vector<Monomial> monos;
  std::vector<Integer> acc_re, acc_im;
  for (std::size_t i = 0; i < fa.mono.size(); ++i) {
    for (std::size_t j = 0; j < fb.mono.size(); ++j) {
      Monomial m = fa.mono[i] * fb.mono[j];
      auto [it, inserted] = index.try_emplace(m, monos.size());
      if (inserted) {
        monos.push_back(m);
        acc_re.emplace_back(0);
        if (!real) acc_im.emplace_back(0);
      }
      std::size_t k = it->second;
      mpz_ptr re = acc_re[k].get_mpz_t();
      mpz_addmul(re, fa.re[i].get_mpz_t(), fb.re[j].get_mpz_t());
      if (!real) {
        mpz_ptr im = acc_im[k].get_mpz_t();
        mpz_submul(re, fa.im[i].get_mpz_t(), fb.im[j].get_mpz_t());
        mpz_addmul(im, fa.re[i].get_mpz_t(), fb.im[j].get_mpz_t());
        mpz_addmul(im, fa.im[i].get_mpz_t(), fb.re[j].get_mpz_t());
      }
    }
  }

  Integer den = fa.den * fb.den;
  std::vector<MultiPoly::Term> terms;
  terms.reserve(monos.size());
  for (std::size_t k = 0; k < monos.size(); ++k) {
    bool re_zero = sgn(acc_re[k]) == 0;
    bool im_zero = real || sgn(acc_im[k]) == 0;
    if (re_zero && im_zero) continue;
    Rational re(acc_re[k], den);
    re.canonicalize();
    Rational im;
    if (!im_zero) {
      im = Rational(acc_im[k], den);
      im.canonicalize();
    }
    terms.push_back({monos[k], Gq(std::move(re), std::move(im))});
  }
  std::sort(terms.begin(), terms.end(), [](const MultiPoly::Term& x, const MultiPoly::Term& y) {
    return grlex_less(y.mono, x.mono);
  });
  return MultiPoly::from_sorted_terms(vars, std::move(terms));
}

MultiPoly pow(const MultiPoly& p, unsigned exponent) {
  MultiPoly result(p.vars(), Gq(1));
  MultiPoly base = p;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent) base = base * base;
  }
  return result;
}

MultiPoly poly_arith(const MultiPoly& p, const MultiPoly& q, PolyOp op) {
  require_same_vars(p.vars(), q.vars());
  switch (op) {
    case PolyOp::Add: return p + q;
    case PolyOp::Sub: return p - q;
    case PolyOp::Mul: return p * q;
  }
  return MultiPoly(p.vars());
}

MultiPoly derivative(const MultiPoly& p, std::size_t var) {
  if (var >= p.vars().size()) fail(ErrorCode::UnknownVariable, "variable index out of range");
  std::vector<MultiPoly::Term> terms;
  for (const auto& t : p.terms()) {
    unsigned e = t.mono.exp[var];
    if (!e) continue;
    Monomial m = t.mono;
    m.exp[var] = static_cast<std::uint16_t>(e - 1);
    terms.push_back({m, t.coeff * Gq(static_cast<long>(e))});
  }
  // lowering one exponent by one keeps the grlex order
  return MultiPoly::from_sorted_terms(p.vars(), std::move(terms));
}

MultiPoly derivative(const MultiPoly& p, std::string_view var) {
  return derivative(p, p.vars().require(var));
}

Gq evaluate(const MultiPoly& p, std::span<const Gq> point) {
  const std::size_t n = p.vars().size();
  if (point.size() != n)
    fail(ErrorCode::WrongArity, "point has " + std::to_string(point.size()) +
                                    " coordinates, expected " + std::to_string(n));
  std::vector<std::vector<Gq>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    int d = p.degree_in(i);
    powers[i].reserve(static_cast<std::size_t>(std::max(d, 0)) + 1);
    powers[i].emplace_back(1);
    for (int k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * point[i]);
  }
  Gq acc;
  for (const auto& t : p.terms()) {
    Gq v = t.coeff;
    for (std::size_t i = 0; i < n; ++i)
      if (t.mono.exp[i]) v *= powers[i][t.mono.exp[i]];
    acc += v;
  }
  return acc;
}

MultiPoly evaluate_var(const MultiPoly& p, std::size_t var, const Gq& value) {
  int d = p.degree_in(var);
  if (d <= 0) return p;
  std::vector<Gq> powers{Gq(1)};
  for (int k = 1; k <= d; ++k) powers.push_back(powers.back() * value);
  std::vector<MultiPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m = t.mono;
    Gq c = t.coeff * powers[m.exp[var]];
    if (c.is_zero()) continue;
    m.exp[var] = 0;
    terms.push_back({m, std::move(c)});
  }
  return MultiPoly::from_terms(p.vars(), std::move(terms));
}

std::vector<MultiPoly> coefficients_in(const MultiPoly& p, std::size_t var) {
  int d = p.degree_in(var);
  if (d < 0) return {};
  std::vector<std::vector<MultiPoly::Term>> buckets(static_cast<std::size_t>(d) + 1);
  for (const auto& t : p.terms()) {
    Monomial m = t.mono;
    std::size_t e = m.exp[var];
    m.exp[var] = 0;
    buckets[e].push_back({m, t.coeff});
  }
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(MultiPoly::from_terms(p.vars(), std::move(b)));
  return out;
}

std::vector<std::pair<int, MultiPoly>> homogeneous_components(const MultiPoly& p) {
  std::map<int, std::vector<MultiPoly::Term>> buckets;
  for (const auto& t : p.terms()) buckets[int(t.mono.degree())].push_back(t);
  std::vector<std::pair<int, MultiPoly>> out;
  for (auto& [deg, terms] : buckets)
    out.emplace_back(deg, MultiPoly::from_sorted_terms(p.vars(), std::move(terms)));
  return out;
}

// ---------------------------------------------------------------- division

namespace {

bool degrees_allow(const MultiPoly& p, const MultiPoly& q) {
  if (q.total_degree() > p.total_degree()) return false;
  for (std::size_t i = 0; i < p.vars().size(); ++i)
    if (q.degree_in(i) > p.degree_in(i)) return false;
  return true;
}

}  // namespace

std::optional<MultiPoly> exact_divide(const MultiPoly& p, const MultiPoly& q) {
  const VarSet& vars = common_vars(p, q);
  if (q.is_zero()) fail(ErrorCode::DivisorZero, "exact division by the zero polynomial");
  if (p.is_zero()) return MultiPoly(vars);
  if (q.is_constant()) return (p * q.leading_coefficient().inverse()).with_vars(vars);
  if (!degrees_allow(p, q)) return std::nullopt;
  const auto& lt = q.leading_term();
  if (!lt.mono.divides(p.leading_term().mono)) return std::nullopt;
  if (q.size() == 1) {
    Gq inv = lt.coeff.inverse();
    std::vector<MultiPoly::Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) {
      if (!lt.mono.divides(t.mono)) return std::nullopt;
      terms.push_back({t.mono / lt.mono, t.coeff * inv});
    }
    return MultiPoly::from_sorted_terms(vars, std::move(terms));
  }

  Gq inv = lt.coeff.inverse();
  std::map<Monomial, Gq, GrlexGreater> rem;
  for (const auto& t : p.terms()) rem.emplace_hint(rem.end(), t.mono, t.coeff);
  std::vector<MultiPoly::Term> quotient;
  const unsigned q_low = q.terms().back().mono.degree();
  const unsigned p_low = p.terms().back().mono.degree();
  while (!rem.empty()) {
    auto head = rem.begin();
    if (!lt.mono.divides(head->first)) return std::nullopt;
    Monomial m = head->first / lt.mono;
    // every product term has degree >= deg(m) + q_low; p has nothing below p_low
    if (m.degree() + q_low < p_low) return std::nullopt;
    Gq c = head->second * inv;
    rem.erase(head);
    for (std::size_t k = 1; k < q.size(); ++k) {
      const auto& t = q.terms()[k];
      Monomial mm = t.mono * m;
      Gq delta = c * t.coeff;
      auto [it, inserted] = rem.try_emplace(mm, -delta);
      if (!inserted) {
        it->second -= delta;
        if (it->second.is_zero()) rem.erase(it);
      }
    }
    quotient.push_back({m, std::move(c)});
  }
  return MultiPoly::from_sorted_terms(vars, std::move(quotient));
}

MultiPoly divide_or_throw(const MultiPoly& p, const MultiPoly& q) {
  auto r = exact_divide(p, q);
  if (!r) fail(ErrorCode::InternalInconsistency, "expected exact polynomial division");
  return *r;
}

// --------------------------------------------------------------------- gcd

namespace {

using detail::UPoly;
using YCoeffs = std::map<Monomial, UPoly, GrlexGreater>;

MultiPoly gcd_nonzero(const MultiPoly& a, const MultiPoly& b);

/// gcd of the coefficients of p as a polynomial in var.
MultiPoly content_impl(const MultiPoly& p, std::size_t var) {
  auto coeffs = coefficients_in(p, var);
  std::sort(coeffs.begin(), coeffs.end(),
            [](const MultiPoly& x, const MultiPoly& y) { return x.size() < y.size(); });
  MultiPoly g(p.vars());
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd_nonzero(g, c);
    if (g.is_constant()) break;
  }
  return g;
}


Monomial monomial_content(const MultiPoly& p) {
  Monomial m = p.terms().front().mono;
  for (const auto& t : p.terms()) m = monomial_gcd(m, t.mono);
  return m;
}

MultiPoly divide_monomial(const MultiPoly& p, const Monomial& m) {
  if (m.is_one()) return p;
  std::vector<MultiPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({t.mono / m, t.coeff});
  return MultiPoly::from_sorted_terms(p.vars(), std::move(terms));
}

UPoly to_upoly(const MultiPoly& p, std::size_t var) {
  std::vector<Gq> c(static_cast<std::size_t>(std::max(p.degree_in(var), 0)) + 1);
  for (const auto& t : p.terms()) c[t.mono.exp[var]] = t.coeff;
  return UPoly(std::move(c));
}

MultiPoly from_upoly(const VarSet& vars, const UPoly& u, std::size_t var) {
  std::vector<MultiPoly::Term> terms;
  for (int k = u.degree(); k >= 0; --k) {
    const Gq& c = u[static_cast<std::size_t>(k)];
    if (!c.is_zero()) terms.push_back({Monomial::unit(var, unsigned(k)), c});
  }
  return MultiPoly::from_sorted_terms(vars, std::move(terms));
}

YCoeffs to_ycoeffs(const MultiPoly& p, std::size_t y) {
  std::map<Monomial, std::vector<Gq>, GrlexGreater> dense;
  for (const auto& t : p.terms()) {
    Monomial m = t.mono;
    std::size_t e = m.exp[y];
    m.exp[y] = 0;
    auto& v = dense[m];
    if (v.size() <= e) v.resize(e + 1);
    v[e] = t.coeff;
  }
  YCoeffs out;
  for (auto& [m, v] : dense) out.emplace_hint(out.end(), m, UPoly(std::move(v)));
  return out;
}

MultiPoly from_ycoeffs(const VarSet& vars, const YCoeffs& h, std::size_t y) {
  std::vector<MultiPoly::Term> terms;
  for (const auto& [m, u] : h)
    for (int k = 0; k <= u.degree(); ++k) {
      const Gq& c = u[static_cast<std::size_t>(k)];
      if (c.is_zero()) continue;
      Monomial mm = m;
      mm.exp[y] = static_cast<std::uint16_t>(k);
      terms.push_back({mm, c});
    }
  return MultiPoly::from_terms(vars, std::move(terms));
}

UPoly ycontent(const YCoeffs& h) {
  UPoly g;
  for (const auto& [m, u] : h) {
    g = gcd(g, u);
    if (g.degree() == 0) break;
  }
  return g;
}

void divide_ycontent(YCoeffs& h, const UPoly& c) {
  if (c.degree() <= 0) return;
  for (auto& [m, u] : h) u = u.exact_div(c);
}

int ydegree(const YCoeffs& h) {
  int d = -1;
  for (const auto& [m, u] : h) d = std::max(d, u.degree());
  return d;
}

MultiPoly evaluate_ycoeffs(const VarSet& vars, const YCoeffs& h, const Gq& y0) {
  std::vector<MultiPoly::Term> terms;
  for (const auto& [m, u] : h) {
    Gq v = u.eval(y0);
    if (!v.is_zero()) terms.push_back({m, std::move(v)});
  }
  return MultiPoly::from_sorted_terms(vars, std::move(terms));
}

Gq brown_point(std::size_t k) {
  long v = static_cast<long>(k / 2 + 1);
  return Gq(k % 2 ? -v : v);
}

/// Dense evaluation/interpolation in y over Q(i); inputs share the same
/// variable support and contain y.
MultiPoly gcd_brown(const MultiPoly& a_in, const MultiPoly& b_in, std::size_t y) {
  const VarSet& vars = a_in.vars();
  YCoeffs a = to_ycoeffs(a_in, y);
  YCoeffs b = to_ycoeffs(b_in, y);
  UPoly ca = ycontent(a), cb = ycontent(b);
  UPoly c = gcd(ca, cb);
  divide_ycontent(a, ca);
  divide_ycontent(b, cb);
  MultiPoly content = from_upoly(vars, c, y);

  MultiPoly ap = from_ycoeffs(vars, a, y);
  MultiPoly bp = from_ycoeffs(vars, b, y);
  if (ydegree(a) <= 0 || ydegree(b) <= 0 || a.size() == 1 || b.size() == 1)
    return (content * gcd_nonzero(ap, bp)).monic();

  const UPoly& la = a.begin()->second;
  const UPoly& lb = b.begin()->second;
  UPoly gamma = gcd(la, lb);
  const int bound = std::min(ydegree(a), ydegree(b)) + gamma.degree();

  YCoeffs h;
  UPoly q(Gq(1));
  int used = 0;
  std::optional<Monomial> lead;
  const std::size_t max_points = static_cast<std::size_t>(4 * bound + 64);
  for (std::size_t k = 0; k < max_points; ++k) {
    Gq y0 = brown_point(k);
    if (la.eval(y0).is_zero() || lb.eval(y0).is_zero()) continue;
    MultiPoly g = gcd_nonzero(evaluate_ycoeffs(vars, a, y0), evaluate_ycoeffs(vars, b, y0));
    if (g.is_constant()) return content.monic();
    const Monomial& lm = g.leading_term().mono;
    if (lead && grlex_less(*lead, lm)) continue;
    if (!lead || grlex_less(lm, *lead)) {
      lead = lm;
      h.clear();
      q = UPoly(Gq(1));
      used = 0;
    }
    g *= gamma.eval(y0);

    Gq q0 = q.eval(y0);
    bool changed = false;
    for (const auto& t : g.terms()) h.try_emplace(t.mono);
    auto gt = g.terms().begin();
    for (auto it = h.begin(); it != h.end();) {
      Gq target;
      if (gt != g.terms().end() && gt->mono == it->first) target = (gt++)->coeff;
      Gq diff = target - it->second.eval(y0);
      if (!diff.is_zero()) {
        it->second += q.scaled(diff / q0);
        changed = true;
      }
      it = it->second.is_zero() ? h.erase(it) : std::next(it);
    }
    q = q * UPoly::linear_root(y0);
    ++used;

    if ((!changed && used >= 2) || used > bound) {
      YCoeffs cand = h;
      divide_ycontent(cand, ycontent(cand));
      MultiPoly g_full = from_ycoeffs(vars, cand, y);
      if (exact_divide(ap, g_full) && exact_divide(bp, g_full))
        return (content * g_full).monic();
      if (used > bound) {
        lead.reset();
        h.clear();
        q = UPoly(Gq(1));
        used = 0;
      }
    }
  }
  fail(ErrorCode::InternalInconsistency, "gcd interpolation did not converge");
}

MultiPoly gcd_primitive(MultiPoly a, MultiPoly b) {
  const VarSet& vars = a.vars();
  if (a.is_constant() || b.is_constant()) return MultiPoly(vars, Gq(1));

  unsigned ma = a.variable_mask(), mb = b.variable_mask();
  if (ma != mb) {
    for (std::size_t v = 0; v < vars.size(); ++v) {
      unsigned bit = 1u << v;
      if ((ma & bit) && !(mb & bit)) a = content_impl(a, v);
      if ((mb & bit) && !(ma & bit)) b = content_impl(b, v);
    }
    return gcd_nonzero(a, b);
  }

  if (degrees_allow(a, b) && exact_divide(a, b)) return b.monic();
  if (degrees_allow(b, a) && exact_divide(b, a)) return a.monic();

  std::size_t best = kMaxVars;
  int best_deg = 0;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (!(ma & (1u << v))) continue;
    int d = std::max(a.degree_in(v), b.degree_in(v));
    if (best == kMaxVars || d < best_deg) {
      best = v;
      best_deg = d;
    }
  }
  if ((ma & (ma - 1)) == 0)
    return from_upoly(vars, gcd(to_upoly(a, best), to_upoly(b, best)), best);
  return gcd_brown(a, b, best);
}

MultiPoly gcd_nonzero(const MultiPoly& a, const MultiPoly& b) {
  const VarSet& vars = common_vars(a, b);
  if (a.is_constant() || b.is_constant()) return MultiPoly(vars, Gq(1));
  Monomial ca = monomial_content(a), cb = monomial_content(b);
  Monomial m = monomial_gcd(ca, cb);
  MultiPoly g = gcd_primitive(divide_monomial(a, ca).with_vars(vars),
                              divide_monomial(b, cb).with_vars(vars));
  return g.shifted(m).monic();
}

}  // namespace

MultiPoly poly_gcd(const MultiPoly& p, const MultiPoly& q) {
  const VarSet& vars = common_vars(p, q);
  if (p.is_zero() && q.is_zero()) fail(ErrorCode::BothZero, "gcd(0, 0) is undefined");
  if (p.is_zero()) return q.monic().with_vars(vars);
  if (q.is_zero()) return p.monic().with_vars(vars);
  return gcd_nonzero(p, q);
}

MultiPoly content_in(const MultiPoly& p, std::size_t var) {
  if (p.is_zero()) return p;
  return content_impl(p, var);
}

MultiPoly poly_lcm(const MultiPoly& p, const MultiPoly& q) {
  if (p.is_zero() || q.is_zero()) return MultiPoly(common_vars(p, q));
  MultiPoly g = poly_gcd(p, q);
  return (divide_or_throw(p, g) * q).monic();
}

}  // namespace linefol
