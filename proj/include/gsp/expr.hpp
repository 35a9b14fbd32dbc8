#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gsp {

struct ExpressionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Arithmetic over the sequence index n: + - * /, unary minus, parentheses,
/// numeric literals, `pi`, `n`, sqrt(x) and pow(x, y).
class Expression {
 public:
  Expression() : Expression(0.0) {}
  explicit Expression(double constant);
  static Expression parse(std::string_view text);

  double operator()(double n) const;
  const std::string& text() const { return text_; }
  bool uses_n() const { return uses_n_; }

 private:
  enum class Op { push, var, add, sub, mul, div, neg, sqrt, pow };
  struct Instr {
    Op op;
    double value = 0.0;
  };
  friend class ExprParser;

  std::vector<Instr> code_;
  std::string text_;
  bool uses_n_ = false;
};

}  // namespace gsp
