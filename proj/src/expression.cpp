#include "bourgen/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "bourgen/errors.hpp"

namespace bourgen {

namespace detail {

enum class Op { number, variable, add, sub, mul, div, pow, neg, sqrt, sin, cos, cosh, sinh, exp, log };

struct ExprNode {
  Op op;
  double number = 0.0;
  std::size_t variable = 0;
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;
};

}  // namespace detail

using detail::ExprNode;
using detail::Op;
using NodePtr = std::shared_ptr<const ExprNode>;

namespace {

struct FunctionName {
  std::string_view name;
  Op op;
};

constexpr FunctionName kFunctions[] = {
    {"sqrt", Op::sqrt}, {"sin", Op::sin}, {"cos", Op::cos}, {"cosh", Op::cosh},
    {"sinh", Op::sinh}, {"exp", Op::exp}, {"log", Op::log},
};

NodePtr number(double v) { return std::make_shared<ExprNode>(ExprNode{Op::number, v, 0, nullptr, nullptr}); }
NodePtr unary(Op op, NodePtr a) { return std::make_shared<ExprNode>(ExprNode{op, 0.0, 0, std::move(a), nullptr}); }
NodePtr binary(Op op, NodePtr a, NodePtr b) {
  return std::make_shared<ExprNode>(ExprNode{op, 0.0, 0, std::move(a), std::move(b)});
}

bool is_number(const NodePtr& n, double v) { return n->op == Op::number && n->number == v; }

// Light constant folding keeps derivative trees readable.
NodePtr add(NodePtr a, NodePtr b) {
  if (is_number(a, 0.0)) return b;
  if (is_number(b, 0.0)) return a;
  return binary(Op::add, std::move(a), std::move(b));
}
NodePtr sub(NodePtr a, NodePtr b) {
  if (is_number(b, 0.0)) return a;
  if (is_number(a, 0.0)) return unary(Op::neg, std::move(b));
  return binary(Op::sub, std::move(a), std::move(b));
}
NodePtr mul(NodePtr a, NodePtr b) {
  if (is_number(a, 0.0) || is_number(b, 0.0)) return number(0.0);
  if (is_number(a, 1.0)) return b;
  if (is_number(b, 1.0)) return a;
  return binary(Op::mul, std::move(a), std::move(b));
}
NodePtr div(NodePtr a, NodePtr b) {
  if (is_number(a, 0.0)) return number(0.0);
  if (is_number(b, 1.0)) return a;
  return binary(Op::div, std::move(a), std::move(b));
}

bool depends_on(const NodePtr& n, std::size_t wrt) {
  if (!n) return false;
  if (n->op == Op::variable) return n->variable == wrt;
  return depends_on(n->lhs, wrt) || depends_on(n->rhs, wrt);
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& variables)
      : text_(text), variables_(variables) {}

  NodePtr parse() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError(pos_, {"expression"}, "empty expression");
    NodePtr root = expr();
    skip_space();
    if (pos_ < text_.size()) throw ParseError(pos_, {"operator", "end of input"});
    return root;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw ParseError(pos_, {std::string(1, c)});
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = binary(Op::add, lhs, term());
      else if (accept('-')) lhs = binary(Op::sub, lhs, term());
      else return lhs;
    }
  }
  NodePtr term() {
    NodePtr lhs = unary_minus();
    for (;;) {
      if (accept('*')) lhs = binary(Op::mul, lhs, unary_minus());
      else if (accept('/')) lhs = binary(Op::div, lhs, unary_minus());
      else return lhs;
    }
  }
  NodePtr unary_minus() {
    if (accept('-')) return unary(Op::neg, unary_minus());
    return power();
  }
  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return binary(Op::pow, base, exponent());
    return base;
  }
  NodePtr exponent() {
    if (accept('-')) return unary(Op::neg, exponent());
    return power();
  }
  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError(pos_, {"number", "variable", "function", "("});
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return literal();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(pos_, {"number", "variable", "function", "("});
  }
  NodePtr literal() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) throw ParseError(start, {"number"}, "malformed number");
    return number(value);
  }
  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    for (const auto& f : kFunctions) {
      if (f.name == name) {
        expect('(');
        NodePtr arg = expr();
        expect(')');
        return unary(f.op, arg);
      }
    }
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (variables_[i] == name) {
        auto node = std::make_shared<ExprNode>(ExprNode{Op::variable, 0.0, i, nullptr, nullptr});
        return node;
      }
    }
    if (name == "pi") return number(std::numbers::pi);
    std::vector<std::string> expected(variables_.begin(), variables_.end());
    expected.emplace_back("function");
    throw ParseError(start, expected, "unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& variables_;
  std::size_t pos_ = 0;
};

double eval(const ExprNode& n, std::span<const double> v) {
  switch (n.op) {
    case Op::number: return n.number;
    case Op::variable: return v[n.variable];
    case Op::add: return eval(*n.lhs, v) + eval(*n.rhs, v);
    case Op::sub: return eval(*n.lhs, v) - eval(*n.rhs, v);
    case Op::mul: return eval(*n.lhs, v) * eval(*n.rhs, v);
    case Op::div: return eval(*n.lhs, v) / eval(*n.rhs, v);
    case Op::pow: return std::pow(eval(*n.lhs, v), eval(*n.rhs, v));
    case Op::neg: return -eval(*n.lhs, v);
    case Op::sqrt: return std::sqrt(eval(*n.lhs, v));
    case Op::sin: return std::sin(eval(*n.lhs, v));
    case Op::cos: return std::cos(eval(*n.lhs, v));
    case Op::cosh: return std::cosh(eval(*n.lhs, v));
    case Op::sinh: return std::sinh(eval(*n.lhs, v));
    case Op::exp: return std::exp(eval(*n.lhs, v));
    case Op::log: return std::log(eval(*n.lhs, v));
  }
  return 0.0;
}

Dual eval_dual(const ExprNode& n, std::span<const double> v, std::size_t wrt) {
  switch (n.op) {
    case Op::number: return {n.number, 0.0};
    case Op::variable: return {v[n.variable], n.variable == wrt ? 1.0 : 0.0};
    case Op::neg: {
      const Dual a = eval_dual(*n.lhs, v, wrt);
      return {-a.value, -a.derivative};
    }
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div:
    case Op::pow: {
      const Dual a = eval_dual(*n.lhs, v, wrt);
      const Dual b = eval_dual(*n.rhs, v, wrt);
      switch (n.op) {
        case Op::add: return {a.value + b.value, a.derivative + b.derivative};
        case Op::sub: return {a.value - b.value, a.derivative - b.derivative};
        case Op::mul: return {a.value * b.value, a.derivative * b.value + a.value * b.derivative};
        case Op::div:
          return {a.value / b.value, (a.derivative * b.value - a.value * b.derivative) / (b.value * b.value)};
        default: {
          const double p = std::pow(a.value, b.value);
          double d = 0.0;
          if (a.derivative != 0.0) d += b.value * std::pow(a.value, b.value - 1.0) * a.derivative;
          if (b.derivative != 0.0) d += p * std::log(a.value) * b.derivative;
          return {p, d};
        }
      }
    }
    default: break;
  }
  const Dual a = eval_dual(*n.lhs, v, wrt);
  switch (n.op) {
    case Op::sqrt: {
      const double r = std::sqrt(a.value);
      return {r, a.derivative / (2.0 * r)};
    }
    case Op::sin: return {std::sin(a.value), std::cos(a.value) * a.derivative};
    case Op::cos: return {std::cos(a.value), -std::sin(a.value) * a.derivative};
    case Op::cosh: return {std::cosh(a.value), std::sinh(a.value) * a.derivative};
    case Op::sinh: return {std::sinh(a.value), std::cosh(a.value) * a.derivative};
    case Op::exp: {
      const double e = std::exp(a.value);
      return {e, e * a.derivative};
    }
    case Op::log: return {std::log(a.value), a.derivative / a.value};
    default: return {};
  }
}

NodePtr differentiate(const NodePtr& n, std::size_t wrt) {
  if (!depends_on(n, wrt)) return number(0.0);
  switch (n->op) {
    case Op::number: return number(0.0);
    case Op::variable: return number(1.0);
    case Op::add: return add(differentiate(n->lhs, wrt), differentiate(n->rhs, wrt));
    case Op::sub: return sub(differentiate(n->lhs, wrt), differentiate(n->rhs, wrt));
    case Op::mul:
      return add(mul(differentiate(n->lhs, wrt), n->rhs), mul(n->lhs, differentiate(n->rhs, wrt)));
    case Op::div:
      return div(sub(mul(differentiate(n->lhs, wrt), n->rhs), mul(n->lhs, differentiate(n->rhs, wrt))),
                 binary(Op::pow, n->rhs, number(2.0)));
    case Op::pow: {
      const NodePtr& u = n->lhs;
      const NodePtr& w = n->rhs;
      if (!depends_on(w, wrt)) {
        // w * u^(w-1) * u'
        return mul(mul(w, binary(Op::pow, u, sub(w, number(1.0)))), differentiate(u, wrt));
      }
      // u^w * (w' log u + w u'/u)
      return mul(n, add(mul(differentiate(w, wrt), unary(Op::log, u)),
                        div(mul(w, differentiate(u, wrt)), u)));
    }
    case Op::neg: return unary(Op::neg, differentiate(n->lhs, wrt));
    case Op::sqrt: return div(differentiate(n->lhs, wrt), mul(number(2.0), n));
    case Op::sin: return mul(unary(Op::cos, n->lhs), differentiate(n->lhs, wrt));
    case Op::cos: return unary(Op::neg, mul(unary(Op::sin, n->lhs), differentiate(n->lhs, wrt)));
    case Op::cosh: return mul(unary(Op::sinh, n->lhs), differentiate(n->lhs, wrt));
    case Op::sinh: return mul(unary(Op::cosh, n->lhs), differentiate(n->lhs, wrt));
    case Op::exp: return mul(n, differentiate(n->lhs, wrt));
    case Op::log: return div(differentiate(n->lhs, wrt), n->lhs);
  }
  return number(0.0);
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string print(const ExprNode& n, const std::vector<std::string>& vars) {
  const auto bin = [&](const char* op) {
    return "(" + print(*n.lhs, vars) + " " + op + " " + print(*n.rhs, vars) + ")";
  };
  const auto fn = [&](const char* name) { return std::string(name) + "(" + print(*n.lhs, vars) + ")"; };
  switch (n.op) {
    case Op::number: return format_number(n.number);
    case Op::variable: return vars[n.variable];
    case Op::add: return bin("+");
    case Op::sub: return bin("-");
    case Op::mul: return bin("*");
    case Op::div: return bin("/");
    case Op::pow: return bin("^");
    case Op::neg: return "(-" + print(*n.lhs, vars) + ")";
    case Op::sqrt: return fn("sqrt");
    case Op::sin: return fn("sin");
    case Op::cos: return fn("cos");
    case Op::cosh: return fn("cosh");
    case Op::sinh: return fn("sinh");
    case Op::exp: return fn("exp");
    case Op::log: return fn("log");
  }
  return {};
}

}  // namespace

Expression::Expression(NodePtr root, std::string text, std::vector<std::string> variables)
    : root_(std::move(root)), text_(std::move(text)), variables_(std::move(variables)) {}

Expression Expression::parse(std::string_view text, std::vector<std::string> variables) {
  if (variables.empty()) throw ConfigError("Expression::parse: no variables declared");
  Parser parser(text, variables);
  NodePtr root = parser.parse();
  return Expression(std::move(root), std::string(text), std::move(variables));
}

double Expression::operator()(double x) const { return evaluate(std::span<const double>(&x, 1)); }

double Expression::evaluate(std::span<const double> values) const {
  if (values.size() < variables_.size()) throw ConfigError("Expression::evaluate: missing variable values");
  return eval(*root_, values);
}

Dual Expression::evaluate_dual(std::span<const double> values, std::size_t wrt) const {
  if (values.size() < variables_.size()) throw ConfigError("Expression::evaluate: missing variable values");
  return eval_dual(*root_, values, wrt);
}

Dual Expression::evaluate_dual(double x) const { return evaluate_dual(std::span<const double>(&x, 1), 0); }

Expression Expression::derivative(std::size_t wrt) const {
  NodePtr d = differentiate(root_, wrt);
  std::string text = print(*d, variables_);
  return Expression(std::move(d), std::move(text), variables_);
}

std::string Expression::to_string() const { return print(*root_, variables_); }

}  // namespace bourgen
