#include "linefol/expr.hpp"

#include <bit>
#include <cctype>
#include <optional>

#include "linefol/error.hpp"

namespace linefol {

namespace {

constexpr unsigned kMaxExponent = 4096;

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expr parse() {
    skip();
    if (pos_ == s_.size()) throw SyntaxError(pos_, "empty expression");
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) {
      if (s_[pos_] == ')') throw SyntaxError(pos_, "unbalanced ')'");
      throw SyntaxError(pos_, "unexpected '" + std::string(1, s_[pos_]) + "'");
    }
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  static Expr binary(Expr::Kind k, std::size_t at, Expr lhs, Expr rhs) {
    Expr e;
    e.kind = k;
    e.position = at;
    e.args.push_back(std::move(lhs));
    e.args.push_back(std::move(rhs));
    return e;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) return lhs;
      std::size_t at = pos_;
      Expr::Kind k = s_[pos_] == '+' ? Expr::Kind::Add : Expr::Kind::Sub;
      ++pos_;
      lhs = binary(k, at, std::move(lhs), term());
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '*' && s_[pos_] != '/')) return lhs;
      std::size_t at = pos_;
      Expr::Kind k = s_[pos_] == '*' ? Expr::Kind::Mul : Expr::Kind::Div;
      ++pos_;
      lhs = binary(k, at, std::move(lhs), factor());
    }
  }

  Expr factor() {
    skip();
    std::optional<std::size_t> minus;
    if (pos_ < s_.size() && s_[pos_] == '-') minus = pos_++;
    Expr b = base();
    if (peek('^')) {
      std::size_t at = pos_++;
      skip();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw SyntaxError(pos_, "exponent must be a nonnegative integer");
      Integer n = read_uint();
      if (n > kMaxExponent) throw SyntaxError(at, "exponent too large");
      Expr p;
      p.kind = Expr::Kind::Pow;
      p.position = at;
      p.exponent = static_cast<unsigned>(n.get_ui());
      p.args.push_back(std::move(b));
      b = std::move(p);
    }
    if (minus) {
      Expr n;
      n.kind = Expr::Kind::Negate;
      n.position = *minus;
      n.args.push_back(std::move(b));
      return n;
    }
    return b;
  }

  Integer read_uint() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  Expr base() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "unexpected end of input");
    Expr e;
    e.position = pos_;
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      e.kind = Expr::Kind::Integer;
      e.value = read_uint();
    } else if (c == '(') {
      ++pos_;
      e = expr();
      skip();
      if (pos_ >= s_.size()) throw SyntaxError(pos_, "missing ')'");
      if (s_[pos_] != ')') throw SyntaxError(pos_, "expected ')'");
      ++pos_;
    } else if (c == 'i') {
      ++pos_;
      e.kind = Expr::Kind::Imaginary;
    } else if (c == 't' || c == 's') {
      ++pos_;
      e.kind = Expr::Kind::Variable;
      e.name = std::string(1, c);
    } else if (c == 'z') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == start) throw SyntaxError(pos_, "expected index after 'z'");
      e.kind = Expr::Kind::Variable;
      e.name = "z" + std::string(s_.substr(start, pos_ - start));
    } else if (c == ')') {
      throw SyntaxError(pos_, "unbalanced ')'");
    } else {
      throw SyntaxError(pos_, "unexpected '" + std::string(1, c) + "'");
    }
    if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) ||
                             (e.kind != Expr::Kind::Integer && std::isdigit(static_cast<unsigned char>(s_[pos_])))))
      throw SyntaxError(pos_, "implicit multiplication is not allowed");
    return e;
  }
};

}  // namespace

Expr parse_ast(std::string_view text) { return Parser(text).parse(); }

RatFunc evaluate_ast(const Expr& e, const VarSet& vars) {
  switch (e.kind) {
    case Expr::Kind::Integer: return RatFunc::constant(vars, Gq(Rational(e.value)));
    case Expr::Kind::Imaginary: return RatFunc::constant(vars, Gq::i());
    case Expr::Kind::Variable: {
      if (!vars.contains(e.name))
        fail(ErrorCode::UnknownVariable, "unknown variable '" + e.name + "' at position " +
                                             std::to_string(e.position));
      return RatFunc::variable(vars, e.name);
    }
    case Expr::Kind::Negate: return -evaluate_ast(e.args[0], vars);
    case Expr::Kind::Add: return evaluate_ast(e.args[0], vars) + evaluate_ast(e.args[1], vars);
    case Expr::Kind::Sub: return evaluate_ast(e.args[0], vars) - evaluate_ast(e.args[1], vars);
    case Expr::Kind::Mul: return evaluate_ast(e.args[0], vars) * evaluate_ast(e.args[1], vars);
    case Expr::Kind::Div: {
      RatFunc den = evaluate_ast(e.args[1], vars);
      if (den.is_zero())
        fail(ErrorCode::ZeroDenominator,
             "division by the zero polynomial at position " + std::to_string(e.position));
      return evaluate_ast(e.args[0], vars) / den;
    }
    case Expr::Kind::Pow: return pow(evaluate_ast(e.args[0], vars), static_cast<int>(e.exponent));
  }
  return RatFunc(vars);
}

RatFunc parse_expr(std::string_view text, const VarSet& vars) {
  return evaluate_ast(parse_ast(text), vars);
}

MultiPoly parse_poly(std::string_view text, const VarSet& vars) {
  RatFunc f = parse_expr(text, vars);
  if (!f.is_polynomial())
    fail(ErrorCode::InvalidArgument, "expected a polynomial, got a rational function");
  return f.num();
}

namespace {

std::string monomial_text(const Monomial& m, const VarSet& vars) {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!m.exp[i]) continue;
    if (!out.empty()) out += "*";
    out += vars.name(i);
    if (m.exp[i] > 1) out += "^" + std::to_string(m.exp[i]);
  }
  return out;
}

// (negative, text-without-sign)
std::pair<bool, std::string> term_text(const MultiPoly::Term& t, const VarSet& vars) {
  std::string mono = monomial_text(t.mono, vars);
  const Gq& c = t.coeff;
  bool negative = false;
  std::string coeff;
  bool unit = false;
  if (c.is_real()) {
    negative = sgn(c.re()) < 0;
    Rational mag = abs(c.re());
    unit = mag == 1;
    coeff = mag.get_str();
  } else if (sgn(c.re()) == 0) {
    negative = sgn(c.im()) < 0;
    Rational mag = abs(c.im());
    coeff = mag == 1 ? "i" : mag.get_str() + "*i";
  } else {
    coeff = "(" + format_scalar(c) + ")";
  }
  if (mono.empty()) return {negative, coeff};
  if (unit) return {negative, mono};
  return {negative, coeff + "*" + mono};
}

}  // namespace

std::string format_scalar(const Gq& c) {
  if (c.is_zero()) return "0";
  std::string out;
  if (sgn(c.re()) != 0) out = c.re().get_str();
  if (sgn(c.im()) != 0) {
    Rational mag = abs(c.im());
    std::string body = mag == 1 ? "i" : mag.get_str() + "*i";
    if (out.empty())
      out = (sgn(c.im()) < 0 ? "-" : "") + body;
    else
      out += (sgn(c.im()) < 0 ? " - " : " + ") + body;
  }
  return out;
}

std::string format_poly(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& t : p.terms()) {
    auto [negative, text] = term_text(t, p.vars());
    if (out.empty())
      out = (negative ? "-" : "") + text;
    else
      out += (negative ? " - " : " + ") + text;
  }
  return out;
}

std::string format_expr(const RatFunc& f) {
  if (f.is_polynomial()) return format_poly(f.num());
  std::string num = format_poly(f.num());
  if (f.num().size() > 1) num = "(" + num + ")";
  std::string den = format_poly(f.den());
  const auto& d = f.den();
  bool simple = d.size() == 1 && d.leading_coefficient().is_one() &&
                std::popcount(d.variable_mask()) == 1;
  if (!simple) den = "(" + den + ")";
  return num + "/" + den;
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << format_poly(p); }
std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << format_expr(f); }
std::ostream& operator<<(std::ostream& os, const Gq& c) { return os << format_scalar(c); }

}  // namespace linefol
