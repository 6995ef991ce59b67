#pragma once

#include <memory>
#include <string>

namespace nonlocal {

/// Arithmetic expression in x and y: + - * / ^, unary minus, parentheses,
/// constants pi and e, and sin cos tan exp log sqrt abs tanh sinh cosh atan.
class Expression {
 public:
  /// Throws a parse error pointing at the offending position.
  static Expression parse(const std::string& text);

  double operator()(double x, double y = 0.0) const;
  const std::string& text() const noexcept { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace nonlocal
