#include "expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include <gausscap/errors.hpp>

namespace gausscap::cli {

struct Expression::Node {
  char op = 0;  // 0 number, 'v' variable, '~' negation, else binary operator
  double value = 0.0;
  std::string name;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr run() {
    NodePtr e = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError,
                "expression \"" + s_ + "\" at offset " + std::to_string(pos_) + ": " + why);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr binary(char op, NodePtr l, NodePtr r) {
    auto n = std::make_shared<Expression::Node>();
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  NodePtr sum() {
    NodePtr e = product();
    for (;;) {
      if (accept('+')) e = binary('+', e, product());
      else if (accept('-')) e = binary('-', e, product());
      else return e;
    }
  }

  NodePtr product() {
    NodePtr e = unary();
    for (;;) {
      if (accept('*')) e = binary('*', e, unary());
      else if (accept('/')) e = binary('/', e, unary());
      else return e;
    }
  }

  NodePtr unary() {
    if (accept('-')) {
      auto n = std::make_shared<Expression::Node>();
      n->op = '~';
      n->lhs = unary();
      return n;
    }
    if (accept('+')) return unary();
    return primary();
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (accept('(')) {
      NodePtr e = sum();
      if (!accept(')')) fail("missing ')'");
      return e;
    }
    const char c = s_[pos_];
    auto n = std::make_shared<Expression::Node>();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* first = s_.data() + pos_;
      const auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), n->value);
      if (ec != std::errc()) fail("bad number");
      pos_ += static_cast<std::size_t>(ptr - first);
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      n->op = 'v';
      n->name = s_.substr(start, pos_ - start);
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

double eval_node(const Expression::Node& n, const Expression::Variables& vars,
                 const std::string& text) {
  switch (n.op) {
    case 0:
      return n.value;
    case 'v': {
      const auto it = vars.find(n.name);
      if (it == vars.end()) {
        throw Error(ErrorCode::InvalidArgument,
                    "expression \"" + text + "\": unknown variable '" + n.name + "'");
      }
      return it->second;
    }
    case '~':
      return -eval_node(*n.lhs, vars, text);
    default:
      break;
  }
  const double l = eval_node(*n.lhs, vars, text);
  const double r = eval_node(*n.rhs, vars, text);
  switch (n.op) {
    case '+': return l + r;
    case '-': return l - r;
    case '*': return l * r;
    default:
      if (r == 0.0) {
        throw Error(ErrorCode::InvalidArgument, "expression \"" + text + "\": division by zero");
      }
      return l / r;
  }
}

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.text_ = text;
  e.root_ = Parser(text).run();
  return e;
}

double Expression::eval(const Variables& vars) const { return eval_node(*root_, vars, text_); }

int eval_integer(const Expression& e, const Expression::Variables& vars) {
  const double v = e.eval(vars);
  const double r = std::round(v);
  if (!std::isfinite(v) || std::abs(v - r) > 1e-9 || std::abs(r) > 1e9) {
    throw Error(ErrorCode::InvalidArgument,
                "expression \"" + e.text() + "\" must give an integer, got " + std::to_string(v));
  }
  return static_cast<int>(r);
}

}  // namespace gausscap::cli
