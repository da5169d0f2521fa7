#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>

#include "phasegeom/chart.hpp"
#include "phasegeom/rational.hpp"

namespace phasegeom {

enum class ExprKind {
  Number,
  Coord,
  Time,
  Neg,
  Exp,
  Ln,
  Sin,
  Cos,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
};

struct ExprNode;

/// Immutable symbolic expression over chart coordinates and time.
/// Values are shared trees; construction runs light local simplification
/// (constant folding, 0/1 absorption) but no canonicalization.
class Expr {
 public:
  using Ptr = std::shared_ptr<const ExprNode>;

  /// Default-constructs the exact constant 0.
  Expr();
  /// Wraps an existing node (used when walking child pointers).
  explicit Expr(Ptr p) : p_(std::move(p)) {}

  static Expr number(const Rational& r);
  static Expr number(std::int64_t n) { return number(Rational(n)); }
  static Expr number(double v);
  static Expr coordinate(int index, std::string name);
  static Expr coordinate(const Chart& chart, int index);
  static Expr time();

  const ExprNode& node() const { return *p_; }
  const Ptr& ptr() const { return p_; }

  ExprKind kind() const;
  bool is_number() const { return kind() == ExprKind::Number; }
  /// True when this is the literal constant 0 (exact or 0.0).
  bool is_zero_literal() const;
  bool is_one_literal() const;
  /// Numeric value of a Number node; throws otherwise.
  double number_value() const;
  /// Exact rational payload if this is an exact Number node.
  const Rational* exact_value() const;

  /// Value at a phase-space point. Throws EvalDomainError when a
  /// subexpression leaves its domain (x/0, ln of non-positive, non-finite
  /// result).
  double eval(std::span<const double> point, double time) const;

  /// Exact partial derivative with respect to coordinate `index`.
  Expr diff_coord(int index) const;
  /// Exact partial derivative with respect to explicit time.
  Expr diff_time() const;

  /// Grammar-compatible rendering; parse(str()) reproduces the tree.
  std::string str() const;

  /// Structural equality (same tree shape and payloads).
  static bool same(const Expr& a, const Expr& b);

  friend Expr operator+(const Expr&, const Expr&);
  friend Expr operator-(const Expr&, const Expr&);
  friend Expr operator*(const Expr&, const Expr&);
  friend Expr operator/(const Expr&, const Expr&);
  friend Expr operator-(const Expr&);

 private:
  static Expr make(ExprNode&& n);

  friend Expr pow(const Expr& base, const Expr& exponent);
  friend Expr exp(const Expr&);
  friend Expr ln(const Expr&);
  friend Expr sin(const Expr&);
  friend Expr cos(const Expr&);

  Ptr p_;
};

struct ExprNode {
  ExprKind kind = ExprKind::Number;
  // Number payload
  bool exact = true;
  Rational rat;
  double flt = 0.0;
  // Coord payload
  int coord = -1;
  std::string name;
  // children
  Expr::Ptr a;
  Expr::Ptr b;
  // tree node count, maintained by the factories
  std::uint32_t size = 1;
};

Expr pow(const Expr& base, const Expr& exponent);
inline Expr pow(const Expr& base, const Rational& r) { return pow(base, Expr::number(r)); }
inline Expr pow(const Expr& base, std::int64_t k) { return pow(base, Expr::number(k)); }
Expr exp(const Expr&);
Expr ln(const Expr&);
Expr sin(const Expr&);
Expr cos(const Expr&);

class EvalDomainError : public std::runtime_error {
 public:
  EvalDomainError(const std::string& reason, std::string subtree)
      : std::runtime_error(reason + " in subexpression: " + subtree),
        subtree_(std::move(subtree)) {}
  const std::string& subtree() const { return subtree_; }

 private:
  std::string subtree_;
};

}  // namespace phasegeom
