#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bourgen {

// Value and first derivative carried together (forward-mode AD).
struct Dual {
  double value = 0.0;
  double derivative = 0.0;
};

namespace detail {
struct ExprNode;
}

// Arithmetic expression over named variables.
//
// Grammar, loosest binding first:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)?         right-associative
//   exponent:= '-' exponent | power
//   primary := number | variable | 'pi' | func '(' expr ')' | '(' expr ')'
// with func one of sqrt sin cos cosh sinh exp log. So -s^2 is -(s^2) and
// "2*s+-3" is 2s - 3.
class Expression {
 public:
  static Expression parse(std::string_view text, std::vector<std::string> variables = {"s"});

  double operator()(double x) const;
  double evaluate(std::span<const double> values) const;

  // Forward-mode derivative with respect to variable `wrt`.
  Dual evaluate_dual(std::span<const double> values, std::size_t wrt = 0) const;
  Dual evaluate_dual(double x) const;

  // Symbolic derivative AST with respect to variable `wrt`.
  Expression derivative(std::size_t wrt = 0) const;

  const std::string& text() const noexcept { return text_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  std::string to_string() const;

 private:
  Expression(std::shared_ptr<const detail::ExprNode> root, std::string text,
             std::vector<std::string> variables);

  std::shared_ptr<const detail::ExprNode> root_;
  std::string text_;
  std::vector<std::string> variables_;
};

}  // namespace bourgen
