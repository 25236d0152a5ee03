#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "linefol/ratfunc.hpp"

namespace linefol {

/// Parse tree of the wire grammar
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := ('-')? base ('^' uint)?
///   base   := int | 'i' | var | '(' expr ')'
///   var    := 'z' uint | 't' | 's'
/// A literal "2/3" is the quotient of two integer literals, so "2/3^2" is 2/9.
struct Expr {
  enum class Kind { Integer, Imaginary, Variable, Negate, Add, Sub, Mul, Div, Pow };

  Kind kind = Kind::Integer;
  Integer value;      // Integer
  std::string name;   // Variable
  unsigned exponent = 0;  // Pow
  std::size_t position = 0;
  std::vector<Expr> args;
};

/// Throws SyntaxError with the byte offset of the offending token.
Expr parse_ast(std::string_view text);

/// Throws UnknownVariable, ZeroDenominator.
RatFunc evaluate_ast(const Expr& e, const VarSet& vars);

RatFunc parse_expr(std::string_view text, const VarSet& vars);
/// parse_expr that also requires a polynomial result.
MultiPoly parse_poly(std::string_view text, const VarSet& vars);

/// Deterministic text in the grammar above, graded-lex term order.
std::string format_poly(const MultiPoly& p);
std::string format_expr(const RatFunc& f);
/// A scalar in the grammar ("1/2 - 3*i").
std::string format_scalar(const Gq& c);

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);
std::ostream& operator<<(std::ostream& os, const RatFunc& f);
std::ostream& operator<<(std::ostream& os, const Gq& c);

}  // namespace linefol
