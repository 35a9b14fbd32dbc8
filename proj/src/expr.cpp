#include "gsp/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace gsp {

namespace {
constexpr std::size_t kMaxDepth = 64;
}

class ExprParser {
 public:
  ExprParser(std::string_view s, Expression& out) : s_(s), out_(out) {}

  void run() {
    expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
  }

 private:
  using Op = Expression::Op;

  [[noreturn]] void fail(const std::string& what) const {
    throw ExpressionError("bad expression '" + std::string(s_) + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void emit(Op op, double v = 0.0) { out_.code_.push_back({op, v}); }

  void expr() {
    term();
    for (;;) {
      if (eat('+')) {
        term();
        emit(Op::add);
      } else if (eat('-')) {
        term();
        emit(Op::sub);
      } else {
        return;
      }
    }
  }
  void term() {
    unary();
    for (;;) {
      if (eat('*')) {
        unary();
        emit(Op::mul);
      } else if (eat('/')) {
        unary();
        emit(Op::div);
      } else {
        return;
      }
    }
  }
  void unary() {
    if (eat('-')) {
      unary();
      emit(Op::neg);
      return;
    }
    if (eat('+')) {
      unary();
      return;
    }
    primary();
  }
  void primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      if (++nesting_ > kMaxNesting) fail("nested too deeply");
      expr();
      if (!eat(')')) fail("missing ')'");
      --nesting_;
      return;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const char* begin = s_.data() + pos_;
      const auto [ptr, ec] = std::from_chars(begin, s_.data() + s_.size(), v);
      if (ec != std::errc()) fail("bad number");
      pos_ += static_cast<std::size_t>(ptr - begin);
      emit(Op::push, v);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string_view name = s_.substr(start, pos_ - start);
      if (name == "n") {
        emit(Op::var);
        out_.uses_n_ = true;
      } else if (name == "pi") {
        emit(Op::push, std::numbers::pi);
      } else if (name == "sqrt") {
        if (!eat('(')) fail("expected '(' after sqrt");
        expr();
        if (!eat(')')) fail("missing ')'");
        emit(Op::sqrt);
      } else if (name == "pow") {
        if (!eat('(')) fail("expected '(' after pow");
        expr();
        if (!eat(',')) fail("pow takes two arguments");
        expr();
        if (!eat(')')) fail("missing ')'");
        emit(Op::pow);
      } else {
        fail("unknown name '" + std::string(name) + "'");
      }
      return;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  static constexpr int kMaxNesting = 200;

  std::string_view s_;
  std::size_t pos_ = 0;
  int nesting_ = 0;
  Expression& out_;
};

Expression::Expression(double constant) {
  code_.push_back({Op::push, constant});
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, constant);
  text_.assign(buf, res.ptr);
}

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.code_.clear();
  e.text_ = std::string(text);
  ExprParser(text, e).run();
  std::size_t depth = 0, max_depth = 0;
  for (const Instr& in : e.code_) {
    if (in.op == Op::push || in.op == Op::var) ++depth;
    else if (in.op != Op::neg && in.op != Op::sqrt) --depth;
    max_depth = std::max(max_depth, depth);
  }
  if (max_depth > kMaxDepth) throw ExpressionError("expression nested too deeply: " + e.text_);
  return e;
}

double Expression::operator()(double n) const {
  double stack[kMaxDepth];
  std::size_t top = 0;
  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::push: stack[top++] = in.value; break;
      case Op::var: stack[top++] = n; break;
      case Op::neg: stack[top - 1] = -stack[top - 1]; break;
      case Op::sqrt: stack[top - 1] = std::sqrt(stack[top - 1]); break;
      default: {
        const double b = stack[--top];
        double& a = stack[top - 1];
        if (in.op == Op::add) a += b;
        else if (in.op == Op::sub) a -= b;
        else if (in.op == Op::mul) a *= b;
        else if (in.op == Op::div) a /= b;
        else a = std::pow(a, b);
      }
    }
  }
  return stack[0];
}

}  // namespace gsp
