#ifndef GAUSSCAP_TOOLS_EXPRESSION_HPP
#define GAUSSCAP_TOOLS_EXPRESSION_HPP

#include <map>
#include <memory>
#include <string>

namespace gausscap::cli {

// Arithmetic over named variables: numbers, identifiers, + - * /, unary
// minus and parentheses. Used for per-mode rules such as "0.2+0.7*k/N".
class Expression {
 public:
  using Variables = std::map<std::string, double>;

  /// Throws Error{ParseError}.
  static Expression parse(const std::string& text);

  /// Throws Error{InvalidArgument} on unbound variables or division by zero.
  double eval(const Variables& vars) const;

  const std::string& text() const noexcept { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

/// Evaluates an expression that must produce a whole number.
int eval_integer(const Expression& e, const Expression::Variables& vars);

}  // namespace gausscap::cli

#endif
