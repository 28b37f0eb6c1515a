#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace setorder {

/// Variable bindings: x1..xk map to x[0..k-1]; n is the perturbation index.
struct Env {
  std::span<const double> x;
  std::optional<long long> n;
};

/// Arithmetic expression.
///
/// Grammar, loosest binding first:
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*
///   unary := '-' unary | power
///   power := atom ('^' unary)?            right-associative
///   atom  := number | const | var | func '(' expr ')' | '(' expr ')'
/// Constants pi, e, inf. Variables x1, x2, ... and n. Functions sin, cos, exp,
/// abs, sqrt. exp overflow saturates to inf; division by zero, sqrt of a
/// negative number and any NaN result raise DomainError.
class Expr {
 public:
  struct Node;

  static Expr parse(std::string_view src);
  static Expr constant(double v);

  double eval(const Env& env) const;
  /// Fully parenthesized text that parses back to an equal tree.
  std::string unparse() const;
  bool same_tree(const Expr& other) const;

  /// Largest k such that xk occurs (0 if none).
  std::size_t max_x_index() const;
  bool uses_n() const;

 private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
  friend class ExprParser;
};

/// Conjunction of chained comparisons, e.g. "x1 >= 0 && x1 < 2" or
/// "0 <= x1 < 2". An empty guard is always true.
class Guard {
 public:
  enum class Cmp { Lt, Le, Gt, Ge, Eq, Ne };
  struct Chain {
    std::vector<Expr> terms;
    std::vector<Cmp> ops;  ///< ops.size() == terms.size() - 1
  };

  Guard() = default;
  static Guard parse(std::string_view src);

  bool eval(const Env& env) const;
  bool always() const { return chains_.empty(); }
  std::string unparse() const;
  std::size_t max_x_index() const;
  bool uses_n() const;

 private:
  std::vector<Chain> chains_;
  friend class ExprParser;
};

}  // namespace setorder
