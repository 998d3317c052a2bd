#pragma once

// Expression front-end for Fun(U)_q.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' ['-'] INT)?
//   atom   := INT | 'q' | 's' | 'f0' | 'z[' INT ',' INT ']' | 'zs[' INT ',' INT ']'
//           | GEN '(' expr ')' | '(' expr ')'
//   GEN    := ('E' | 'F' | 'K' | 'Ki') (INT | 'n')
//
// '*' is the noncommutative product; '/' and negative powers need a scalar
// operand. GEN(expr) applies a generator.

#include "json.hpp"

#include <string>
#include <string_view>
#include <vector>

#include "qball/action.hpp"
#include "qball/error.hpp"

namespace qball {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct ExprNode {
  enum class Kind { Number, Q, S, Letter, Neg, Add, Sub, Mul, Div, Pow, Apply };

  Kind kind = Kind::Number;
  Integer number;
  qball::Letter letter;
  int exponent = 0;
  QGen gen;
  std::vector<ExprNode> children;
  int line = 1;
  int column = 1;
};

/// Parses and range-checks an expression for the given shape.
ExprNode parse_expression(std::string_view text, const Shape& shape);
/// Parses a whitespace- or comma-separated generator word such as "En Fn K1".
std::vector<QGen> parse_generator_word(std::string_view text, const Shape& shape);

Element evaluate(const ExprNode& node, const Action& action);
/// parse_expression followed by evaluate.
Element parse_element(std::string_view text, const Action& action);

nlohmann::json to_json(const Element& f);
Element element_from_json(const nlohmann::json& j, const Algebra& algebra);

}  // namespace qball
