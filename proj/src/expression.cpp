#include "nonlocal/expression.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

#include "nonlocal/error.hpp"
#include "nonlocal/io_format.hpp"

namespace nonlocal {

struct Expression::Node {
  enum class Op { number, var_x, var_y, neg, add, sub, mul, div, pow, call };
  Op op = Op::number;
  double value = 0.0;
  double (*fn)(double) = nullptr;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;

  double eval(double x, double y) const {
    switch (op) {
      case Op::number: return value;
      case Op::var_x: return x;
      case Op::var_y: return y;
      case Op::neg: return -lhs->eval(x, y);
      case Op::add: return lhs->eval(x, y) + rhs->eval(x, y);
      case Op::sub: return lhs->eval(x, y) - rhs->eval(x, y);
      case Op::mul: return lhs->eval(x, y) * rhs->eval(x, y);
      case Op::div: return lhs->eval(x, y) / rhs->eval(x, y);
      case Op::pow: return std::pow(lhs->eval(x, y), rhs->eval(x, y));
      case Op::call: return fn(lhs->eval(x, y));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Op = Expression::Node::Op;

struct Function {
  std::string_view name;
  double (*fn)(double);
};

const std::array<Function, 11> kFunctions{{
    {"sin", [](double v) { return std::sin(v); }},
    {"cos", [](double v) { return std::cos(v); }},
    {"tan", [](double v) { return std::tan(v); }},
    {"exp", [](double v) { return std::exp(v); }},
    {"log", [](double v) { return std::log(v); }},
    {"sqrt", [](double v) { return std::sqrt(v); }},
    {"abs", [](double v) { return std::abs(v); }},
    {"tanh", [](double v) { return std::tanh(v); }},
    {"sinh", [](double v) { return std::sinh(v); }},
    {"cosh", [](double v) { return std::cosh(v); }},
    {"atan", [](double v) { return std::atan(v); }},
}};

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

// expr   := term (('+'|'-') term)*
// term   := unary (('*'|'/') unary)*
// unary  := '-' unary | '+' unary | power
// power  := atom ('^' unary)?
// atom   := number | name | name '(' expr ')' | '(' expr ')'
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::parse, "expression '" + std::string(text_) + "': " + what +
                                      " at position " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      if (accept('+')) {
        n = make(Op::add, n, term());
      } else if (accept('-')) {
        n = make(Op::sub, n, term());
      } else {
        return n;
      }
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      if (accept('*')) {
        n = make(Op::mul, n, unary());
      } else if (accept('/')) {
        n = make(Op::div, n, unary());
      } else {
        return n;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (accept('^')) return make(Op::pow, base, unary());
    return base;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    if (accept('(')) {
      NodePtr n = expr();
      if (!accept(')')) fail("expected ')'");
      return n;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return name();
    fail("unexpected character");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      }
    }
    auto n = std::make_shared<Expression::Node>();
    n->value = parse_double(text_.substr(start, pos_ - start), "number");
    return n;
  }

  NodePtr name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view id = text_.substr(start, pos_ - start);
    if (id == "x") return make(Op::var_x);
    if (id == "y") return make(Op::var_y);
    if (id == "pi" || id == "e") {
      auto n = std::make_shared<Expression::Node>();
      n->value = id == "pi" ? std::numbers::pi : std::numbers::e;
      return n;
    }
    for (const Function& f : kFunctions) {
      if (f.name != id) continue;
      if (!accept('(')) fail("expected '(' after " + std::string(id));
      NodePtr arg = expr();
      if (!accept(')')) fail("expected ')'");
      auto n = std::make_shared<Expression::Node>();
      n->op = Op::call;
      n->fn = f.fn;
      n->lhs = std::move(arg);
      return n;
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(id) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.text_ = text;
  e.root_ = Parser(e.text_).parse();
  return e;
}

double Expression::operator()(double x, double y) const {
  if (!root_) throw Error(ErrorKind::validation, "empty expression");
  return root_->eval(x, y);
}

}  // namespace nonlocal
