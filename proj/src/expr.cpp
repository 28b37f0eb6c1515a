#include "setorder/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "setorder/error.hpp"

namespace setorder {

struct Expr::Node {
  enum class Kind { Num, Const, X, N, Neg, Add, Sub, Mul, Div, Pow, Call };
  Kind kind = Kind::Num;
  double value = 0.0;
  std::string name;       // Const and Call
  std::size_t index = 0;  // X: 1-based
  std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expr::Node;
using Kind = Node::Kind;
using NodePtr = std::shared_ptr<const Node>;

struct Token {
  enum class Type { Num, Ident, Op, End };
  Type type = Type::End;
  std::string text;
  double num = 0.0;
  int line = 1;
  int col = 1;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < src.size() &&
         std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '.'))
        ++j;
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k])))
            ++k;
          j = k;
        }
      }
      t.type = Token::Type::Num;
      t.text = std::string(src.substr(i, j - i));
      auto [ptr, ec] =
          std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.num);
      if (ec != std::errc() || ptr != t.text.data() + t.text.size())
        throw ParseError("malformed number '" + t.text + "'", line, col);
      advance(j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                src[j] == '_'))
        ++j;
      t.type = Token::Type::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else {
      static const char* two[] = {"<=", ">=", "==", "!=", "&&"};
      t.type = Token::Type::Op;
      for (const char* op : two) {
        if (src.substr(i, 2) == op) t.text = op;
      }
      if (t.text.empty()) {
        if (std::string_view("+-*/^(),<>").find(c) == std::string_view::npos)
          throw ParseError(std::string("unexpected character '") + c + "'", line,
                           col);
        t.text = std::string(1, c);
      }
      advance(t.text.size());
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

NodePtr make(Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

bool is_function(const std::string& s) {
  return s == "sin" || s == "cos" || s == "exp" || s == "abs" || s == "sqrt";
}

}  // namespace

class ExprParser {
 public:
  explicit ExprParser(std::string_view src) : toks_(tokenize(src)) {}

  Expr parse_expr_only() {
    NodePtr e = expr();
    expect_end();
    return Expr(e);
  }

  Guard parse_guard() {
    Guard g;
    if (peek().type == Token::Type::End) return g;
    while (true) {
      Guard::Chain ch;
      ch.terms.push_back(Expr(expr()));
      while (auto cmp = comparison()) {
        ch.ops.push_back(*cmp);
        ch.terms.push_back(Expr(expr()));
      }
      if (ch.ops.empty())
        throw ParseError("expected comparison", peek().line, peek().col);
      g.chains_.push_back(std::move(ch));
      if (is_op("&&")) {
        ++pos_;
        continue;
      }
      break;
    }
    expect_end();
    return g;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool is_op(const char* s) const {
    return peek().type == Token::Type::Op && peek().text == s;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().col);
  }
  void expect_op(const char* s) {
    if (!is_op(s)) fail(std::string("expected '") + s + "'");
    ++pos_;
  }
  void expect_end() {
    if (peek().type != Token::Type::End)
      fail("unexpected token '" + peek().text + "'");
  }

  std::optional<Guard::Cmp> comparison() {
    if (peek().type != Token::Type::Op) return std::nullopt;
    const std::string& t = peek().text;
    std::optional<Guard::Cmp> c;
    if (t == "<") c = Guard::Cmp::Lt;
    if (t == "<=") c = Guard::Cmp::Le;
    if (t == ">") c = Guard::Cmp::Gt;
    if (t == ">=") c = Guard::Cmp::Ge;
    if (t == "==") c = Guard::Cmp::Eq;
    if (t == "!=") c = Guard::Cmp::Ne;
    if (c) ++pos_;
    return c;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (is_op("+") || is_op("-")) {
      const Kind k = peek().text == "+" ? Kind::Add : Kind::Sub;
      ++pos_;
      lhs = make(k, lhs, term());
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (is_op("*") || is_op("/")) {
      const Kind k = peek().text == "*" ? Kind::Mul : Kind::Div;
      ++pos_;
      lhs = make(k, lhs, unary());
    }
    return lhs;
  }

  NodePtr unary() {
    if (is_op("-")) {
      ++pos_;
      return make(Kind::Neg, unary());
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (is_op("^")) {
      ++pos_;
      return make(Kind::Pow, base, unary());
    }
    return base;
  }

  NodePtr atom() {
    const Token t = peek();
    if (t.type == Token::Type::Num) {
      ++pos_;
      auto n = std::make_shared<Node>();
      n->kind = Kind::Num;
      n->value = t.num;
      return n;
    }
    if (t.type == Token::Type::Ident) {
      ++pos_;
      if (is_function(t.text)) {
        if (!is_op("(")) fail("expected '(' after " + t.text);
        ++pos_;
        auto n = std::make_shared<Node>();
        n->kind = Kind::Call;
        n->name = t.text;
        n->a = expr();
        expect_op(")");
        return n;
      }
      auto n = std::make_shared<Node>();
      if (t.text == "pi" || t.text == "e" || t.text == "inf") {
        n->kind = Kind::Const;
        n->name = t.text;
        n->value = t.text == "pi"  ? std::numbers::pi
                   : t.text == "e" ? std::numbers::e
                                   : std::numeric_limits<double>::infinity();
        return n;
      }
      if (t.text == "n") {
        n->kind = Kind::N;
        return n;
      }
      if (t.text.size() >= 2 && t.text[0] == 'x') {
        std::size_t idx = 0;
        auto [ptr, ec] = std::from_chars(t.text.data() + 1,
                                         t.text.data() + t.text.size(), idx);
        if (ec == std::errc() && ptr == t.text.data() + t.text.size() &&
            idx >= 1 && t.text[1] != '0') {
          n->kind = Kind::X;
          n->index = idx;
          return n;
        }
      }
      throw ParseError("unknown identifier '" + t.text + "'", t.line, t.col);
    }
    if (is_op("(")) {
      ++pos_;
      NodePtr e = expr();
      expect_op(")");
      return e;
    }
    if (t.type == Token::Type::End) fail("unexpected end of input");
    fail("unexpected token '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

namespace {

double eval_node(const Node& n, const Env& env) {
  auto checked = [](double v, const char* what) {
    if (std::isnan(v)) throw DomainError(std::string("NaN in ") + what);
    return v;
  };
  switch (n.kind) {
    case Kind::Num:
    case Kind::Const:
      return n.value;
    case Kind::X:
      if (n.index > env.x.size())
        throw UnboundVariable("x" + std::to_string(n.index) + " is not bound");
      return env.x[n.index - 1];
    case Kind::N:
      if (!env.n) throw UnboundVariable("n is not bound");
      return static_cast<double>(*env.n);
    case Kind::Neg:
      return -eval_node(*n.a, env);
    case Kind::Add:
      return checked(eval_node(*n.a, env) + eval_node(*n.b, env), "+");
    case Kind::Sub:
      return checked(eval_node(*n.a, env) - eval_node(*n.b, env), "-");
    case Kind::Mul:
      return checked(eval_node(*n.a, env) * eval_node(*n.b, env), "*");
    case Kind::Div: {
      const double num = eval_node(*n.a, env);
      const double den = eval_node(*n.b, env);
      if (den == 0.0) throw DomainError("division by zero");
      return checked(num / den, "/");
    }
    case Kind::Pow:
      return checked(std::pow(eval_node(*n.a, env), eval_node(*n.b, env)), "^");
    case Kind::Call: {
      const double v = eval_node(*n.a, env);
      if (n.name == "sin") return checked(std::sin(v), "sin");
      if (n.name == "cos") return checked(std::cos(v), "cos");
      if (n.name == "exp") return checked(std::exp(v), "exp");
      if (n.name == "abs") return std::abs(v);
      if (v < 0) throw DomainError("sqrt of a negative number");
      return std::sqrt(v);
    }
  }
  return 0.0;
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string unparse_node(const Node& n) {
  switch (n.kind) {
    case Kind::Num:
      return format_number(n.value);
    case Kind::Const:
      return n.name;
    case Kind::X:
      return "x" + std::to_string(n.index);
    case Kind::N:
      return "n";
    case Kind::Neg:
      return "(-" + unparse_node(*n.a) + ")";
    case Kind::Call:
      return n.name + "(" + unparse_node(*n.a) + ")";
    default:
      break;
  }
  const char* op = n.kind == Kind::Add   ? " + "
                   : n.kind == Kind::Sub ? " - "
                   : n.kind == Kind::Mul ? " * "
                   : n.kind == Kind::Div ? " / "
                                         : " ^ ";
  return "(" + unparse_node(*n.a) + op + unparse_node(*n.b) + ")";
}

bool same(const Node* a, const Node* b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->name != b->name || a->index != b->index)
    return false;
  if ((a->kind == Kind::Num || a->kind == Kind::Const) &&
      !(a->value == b->value ||
        (std::isnan(a->value) && std::isnan(b->value))))
    return false;
  return same(a->a.get(), b->a.get()) && same(a->b.get(), b->b.get());
}

std::size_t max_x(const Node* n) {
  if (!n) return 0;
  std::size_t m = n->kind == Kind::X ? n->index : 0;
  return std::max({m, max_x(n->a.get()), max_x(n->b.get())});
}

bool has_n(const Node* n) {
  if (!n) return false;
  return n->kind == Kind::N || has_n(n->a.get()) || has_n(n->b.get());
}

}  // namespace

Expr Expr::parse(std::string_view src) {
  return ExprParser(src).parse_expr_only();
}

Expr Expr::constant(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Num;
  n->value = v;
  return Expr(n);
}

double Expr::eval(const Env& env) const { return eval_node(*root_, env); }
std::string Expr::unparse() const { return unparse_node(*root_); }
bool Expr::same_tree(const Expr& other) const {
  return same(root_.get(), other.root_.get());
}
std::size_t Expr::max_x_index() const { return max_x(root_.get()); }
bool Expr::uses_n() const { return has_n(root_.get()); }

Guard Guard::parse(std::string_view src) {
  return ExprParser(src).parse_guard();
}

bool Guard::eval(const Env& env) const {
  for (const auto& ch : chains_) {
    double lhs = ch.terms[0].eval(env);
    for (std::size_t k = 0; k < ch.ops.size(); ++k) {
      const double rhs = ch.terms[k + 1].eval(env);
      bool ok = false;
      switch (ch.ops[k]) {
        case Cmp::Lt: ok = lhs < rhs; break;
        case Cmp::Le: ok = lhs <= rhs; break;
        case Cmp::Gt: ok = lhs > rhs; break;
        case Cmp::Ge: ok = lhs >= rhs; break;
        case Cmp::Eq: ok = lhs == rhs; break;
        case Cmp::Ne: ok = lhs != rhs; break;
      }
      if (!ok) return false;
      lhs = rhs;
    }
  }
  return true;
}

std::string Guard::unparse() const {
  static const char* names[] = {" < ", " <= ", " > ", " >= ", " == ", " != "};
  std::string out;
  for (std::size_t c = 0; c < chains_.size(); ++c) {
    if (c > 0) out += " && ";
    const auto& ch = chains_[c];
    out += ch.terms[0].unparse();
    for (std::size_t k = 0; k < ch.ops.size(); ++k) {
      out += names[static_cast<int>(ch.ops[k])];
      out += ch.terms[k + 1].unparse();
    }
  }
  return out;
}

std::size_t Guard::max_x_index() const {
  std::size_t m = 0;
  for (const auto& ch : chains_)
    for (const auto& t : ch.terms) m = std::max(m, t.max_x_index());
  return m;
}

bool Guard::uses_n() const {
  for (const auto& ch : chains_)
    for (const auto& t : ch.terms)
      if (t.uses_n()) return true;
  return false;
}

}  // namespace setorder
