#include "phasegeom/expr.hpp"

#include <charconv>
#include <cmath>

namespace phasegeom {

namespace {

const std::shared_ptr<const ExprNode>& zero_node() {
  static const std::shared_ptr<const ExprNode> z = std::make_shared<const ExprNode>();
  return z;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool num_equals(const Expr& e, std::int64_t v) {
  if (!e.is_number()) return false;
  const ExprNode& n = e.node();
  return n.exact ? n.rat == Rational(v) : n.flt == static_cast<double>(v);
}

// Folds a binary arithmetic op over two Number nodes. Exact when both
// operands are exact and the rational op does not overflow.
Expr fold_numbers(ExprKind k, const Expr& a, const Expr& b) {
  const ExprNode& na = a.node();
  const ExprNode& nb = b.node();
  if (na.exact && nb.exact) {
    std::optional<Rational> r;
    switch (k) {
      case ExprKind::Add: r = rat_add(na.rat, nb.rat); break;
      case ExprKind::Sub: r = rat_sub(na.rat, nb.rat); break;
      case ExprKind::Mul: r = rat_mul(na.rat, nb.rat); break;
      case ExprKind::Div: r = rat_div(na.rat, nb.rat); break;
      default: break;
    }
    if (r) return Expr::number(*r);
  }
  double x = a.number_value();
  double y = b.number_value();
  switch (k) {
    case ExprKind::Add: return Expr::number(x + y);
    case ExprKind::Sub: return Expr::number(x - y);
    case ExprKind::Mul: return Expr::number(x * y);
    case ExprKind::Div: return Expr::number(x / y);
    default: throw std::logic_error("fold_numbers: bad kind");
  }
}

}  // namespace

Expr::Expr() : p_(zero_node()) {}

ExprKind Expr::kind() const { return p_->kind; }

Expr Expr::make(ExprNode&& n) { return Expr(std::make_shared<const ExprNode>(std::move(n))); }

Expr Expr::number(const Rational& r) {
  ExprNode n;
  n.exact = true;
  n.rat = r;
  return make(std::move(n));
}

Expr Expr::number(double v) {
  ExprNode n;
  n.exact = false;
  n.flt = v;
  return make(std::move(n));
}

Expr Expr::coordinate(int index, std::string name) {
  if (index < 0) throw std::invalid_argument("Expr::coordinate: negative index");
  ExprNode n;
  n.kind = ExprKind::Coord;
  n.coord = index;
  n.name = std::move(name);
  return make(std::move(n));
}

Expr Expr::coordinate(const Chart& chart, int index) {
  return coordinate(index, chart.name(index));
}

Expr Expr::time() {
  ExprNode n;
  n.kind = ExprKind::Time;
  return make(std::move(n));
}

bool Expr::is_zero_literal() const {
  if (!is_number()) return false;
  return p_->exact ? p_->rat.is_zero() : p_->flt == 0.0;
}

bool Expr::is_one_literal() const {
  if (!is_number()) return false;
  return p_->exact ? p_->rat.is_one() : p_->flt == 1.0;
}

double Expr::number_value() const {
  if (!is_number()) throw std::logic_error("Expr::number_value: not a Number node");
  return p_->exact ? p_->rat.to_double() : p_->flt;
}

const Rational* Expr::exact_value() const {
  if (is_number() && p_->exact) return &p_->rat;
  return nullptr;
}

// ---------------------------------------------------------------------------
// smart constructors with light local simplification

Expr operator-(const Expr& x) {
  if (x.is_number()) {
    const ExprNode& n = x.node();
    if (n.exact) {
      if (auto r = rat_neg(n.rat)) return Expr::number(*r);
    }
    return Expr::number(-x.number_value());
  }
  if (x.kind() == ExprKind::Neg) return Expr(x.node().a);
  ExprNode n;
  n.kind = ExprKind::Neg;
  n.a = x.ptr();
  return Expr::make(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_number() && b.is_number()) return fold_numbers(ExprKind::Add, a, b);
  if (a.is_zero_literal()) return b;
  if (b.is_zero_literal()) return a;
  if (b.kind() == ExprKind::Neg) return a - Expr(b.node().a);
  ExprNode n;
  n.kind = ExprKind::Add;
  n.a = a.ptr();
  n.b = b.ptr();
  return Expr::make(std::move(n));
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_number() && b.is_number()) return fold_numbers(ExprKind::Sub, a, b);
  if (b.is_zero_literal()) return a;
  if (a.is_zero_literal()) return -b;
  if (a.ptr() == b.ptr()) return Expr();
  if (b.kind() == ExprKind::Neg) return a + Expr(b.node().a);
  ExprNode n;
  n.kind = ExprKind::Sub;
  n.a = a.ptr();
  n.b = b.ptr();
  return Expr::make(std::move(n));
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_number() && b.is_number()) return fold_numbers(ExprKind::Mul, a, b);
  if (a.is_zero_literal() || b.is_zero_literal()) return Expr();
  if (a.is_one_literal()) return b;
  if (b.is_one_literal()) return a;
  if (num_equals(a, -1)) return -b;
  if (num_equals(b, -1)) return -a;
  if (a.kind() == ExprKind::Neg && b.kind() == ExprKind::Neg)
    return Expr(a.node().a) * Expr(b.node().a);
  if (a.kind() == ExprKind::Neg) return -(Expr(a.node().a) * b);
  if (b.kind() == ExprKind::Neg) return -(a * Expr(b.node().a));
  ExprNode n;
  n.kind = ExprKind::Mul;
  n.a = a.ptr();
  n.b = b.ptr();
  return Expr::make(std::move(n));
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero_literal()) {
    // Keep the node; the division-by-zero surfaces as an eval error with
    // the offending subtree attached.
  } else {
    if (a.is_number() && b.is_number()) return fold_numbers(ExprKind::Div, a, b);
    if (a.is_zero_literal()) return Expr();
    if (b.is_one_literal()) return a;
    if (num_equals(b, -1)) return -a;
    if (a.ptr() == b.ptr()) return Expr::number(1);
  }
  ExprNode n;
  n.kind = ExprKind::Div;
  n.a = a.ptr();
  n.b = b.ptr();
  return Expr::make(std::move(n));
}

Expr pow(const Expr& base, const Expr& exponent) {
  if (!exponent.is_number()) {
    throw std::invalid_argument("pow: exponent must be a numeric constant");
  }
  if (exponent.is_zero_literal()) return Expr::number(1);
  if (exponent.is_one_literal()) return base;
  if (base.is_number()) {
    const Rational* br = base.exact_value();
    const Rational* er = exponent.exact_value();
    if (br && er && er->is_integer()) {
      if (auto r = rat_pow(*br, er->num)) return Expr::number(*r);
    }
    double v = std::pow(base.number_value(), exponent.number_value());
    if (std::isfinite(v)) return Expr::number(v);
  }
  ExprNode n;
  n.kind = ExprKind::Pow;
  n.a = base.ptr();
  n.b = exponent.ptr();
  return Expr::make(std::move(n));
}

Expr exp(const Expr& x) {
  if (x.is_zero_literal()) return Expr::number(1);
  ExprNode n;
  n.kind = ExprKind::Exp;
  n.a = x.ptr();
  return Expr::make(std::move(n));
}

Expr ln(const Expr& x) {
  if (x.is_one_literal()) return Expr();
  ExprNode n;
  n.kind = ExprKind::Ln;
  n.a = x.ptr();
  return Expr::make(std::move(n));
}

Expr sin(const Expr& x) {
  if (x.is_zero_literal()) return Expr();
  ExprNode n;
  n.kind = ExprKind::Sin;
  n.a = x.ptr();
  return Expr::make(std::move(n));
}

Expr cos(const Expr& x) {
  if (x.is_zero_literal()) return Expr::number(1);
  ExprNode n;
  n.kind = ExprKind::Cos;
  n.a = x.ptr();
  return Expr::make(std::move(n));
}

// ---------------------------------------------------------------------------
// evaluation

double Expr::eval(std::span<const double> point, double time) const {
  const ExprNode& n = *p_;
  switch (n.kind) {
    case ExprKind::Number:
      return n.exact ? n.rat.to_double() : n.flt;
    case ExprKind::Coord:
      if (n.coord >= static_cast<int>(point.size())) {
        throw EvalDomainError("point dimension too small for coordinate " + n.name, str());
      }
      return point[static_cast<size_t>(n.coord)];
    case ExprKind::Time:
      return time;
    case ExprKind::Neg:
      return -Expr(n.a).eval(point, time);
    case ExprKind::Exp: {
      double v = std::exp(Expr(n.a).eval(point, time));
      if (!std::isfinite(v)) throw EvalDomainError("exp overflow", str());
      return v;
    }
    case ExprKind::Ln: {
      double u = Expr(n.a).eval(point, time);
      if (!(u > 0.0)) throw EvalDomainError("ln of non-positive argument", str());
      return std::log(u);
    }
    case ExprKind::Sin:
      return std::sin(Expr(n.a).eval(point, time));
    case ExprKind::Cos:
      return std::cos(Expr(n.a).eval(point, time));
    case ExprKind::Add:
      return Expr(n.a).eval(point, time) + Expr(n.b).eval(point, time);
    case ExprKind::Sub:
      return Expr(n.a).eval(point, time) - Expr(n.b).eval(point, time);
    case ExprKind::Mul:
      return Expr(n.a).eval(point, time) * Expr(n.b).eval(point, time);
    case ExprKind::Div: {
      double num = Expr(n.a).eval(point, time);
      double den = Expr(n.b).eval(point, time);
      if (den == 0.0) throw EvalDomainError("division by zero", str());
      return num / den;
    }
    case ExprKind::Pow: {
      double base = Expr(n.a).eval(point, time);
      const Rational* er = Expr(n.b).exact_value();
      double v;
      if (er && er->is_integer() && er->num >= -64 && er->num <= 64) {
        std::int64_t k = er->num;
        if (k < 0 && base == 0.0) throw EvalDomainError("zero base with negative exponent", str());
        double acc = 1.0;
        double b = base;
        std::uint64_t e = static_cast<std::uint64_t>(k < 0 ? -k : k);
        while (e > 0) {
          if (e & 1) acc *= b;
          b *= b;
          e >>= 1;
        }
        v = k < 0 ? 1.0 / acc : acc;
      } else {
        v = std::pow(base, Expr(n.b).eval(point, time));
      }
      if (!std::isfinite(v)) throw EvalDomainError("pow out of domain", str());
      return v;
    }
  }
  throw std::logic_error("Expr::eval: corrupt node");
}

// ---------------------------------------------------------------------------
// differentiation

namespace {

Expr diff_impl(const Expr& e, int coord_index, bool by_time) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case ExprKind::Number:
      return Expr();
    case ExprKind::Coord:
      return (!by_time && n.coord == coord_index) ? Expr::number(1) : Expr();
    case ExprKind::Time:
      return by_time ? Expr::number(1) : Expr();
    case ExprKind::Neg:
      return -diff_impl(Expr(n.a), coord_index, by_time);
    case ExprKind::Exp:
      return diff_impl(Expr(n.a), coord_index, by_time) * e;
    case ExprKind::Ln:
      return diff_impl(Expr(n.a), coord_index, by_time) / Expr(n.a);
    case ExprKind::Sin:
      return diff_impl(Expr(n.a), coord_index, by_time) * cos(Expr(n.a));
    case ExprKind::Cos:
      return -(diff_impl(Expr(n.a), coord_index, by_time) * sin(Expr(n.a)));
    case ExprKind::Add:
      return diff_impl(Expr(n.a), coord_index, by_time) + diff_impl(Expr(n.b), coord_index, by_time);
    case ExprKind::Sub:
      return diff_impl(Expr(n.a), coord_index, by_time) - diff_impl(Expr(n.b), coord_index, by_time);
    case ExprKind::Mul: {
      Expr a(n.a), b(n.b);
      return diff_impl(a, coord_index, by_time) * b + a * diff_impl(b, coord_index, by_time);
    }
    case ExprKind::Div: {
      Expr a(n.a), b(n.b);
      return (diff_impl(a, coord_index, by_time) * b - a * diff_impl(b, coord_index, by_time)) /
             pow(b, 2);
    }
    case ExprKind::Pow: {
      Expr base(n.a), expo(n.b);
      // d(u^r) = r * u^(r-1) * du for constant r
      Expr rm1 = expo - Expr::number(1);
      return expo * pow(base, rm1) * diff_impl(base, coord_index, by_time);
    }
  }
  throw std::logic_error("diff: corrupt node");
}

}  // namespace

Expr Expr::diff_coord(int index) const { return diff_impl(*this, index, false); }
Expr Expr::diff_time() const { return diff_impl(*this, 0, true); }

// ---------------------------------------------------------------------------
// printing

namespace {

// Effective precedence for parenthesization. Higher binds tighter.
constexpr int kPrecAdd = 10;
constexpr int kPrecMul = 20;
constexpr int kPrecNeg = 25;
constexpr int kPrecPow = 30;
constexpr int kPrecAtom = 40;

int node_prec(const ExprNode& n) {
  switch (n.kind) {
    case ExprKind::Add:
    case ExprKind::Sub:
      return kPrecAdd;
    case ExprKind::Mul:
    case ExprKind::Div:
      return kPrecMul;
    case ExprKind::Neg:
      return kPrecNeg;
    case ExprKind::Pow:
      return kPrecPow;
    case ExprKind::Number:
      if (n.exact) {
        if (n.rat.num < 0) return kPrecNeg;
        if (!n.rat.is_integer()) return kPrecMul;  // prints as p/q
        return kPrecAtom;
      }
      return n.flt < 0 ? kPrecNeg : kPrecAtom;
    default:
      return kPrecAtom;
  }
}

void print_node(std::string& out, const Expr& e);

void print_child(std::string& out, const Expr& child, int parent_prec, bool tight_side) {
  int cp = node_prec(child.node());
  bool parens = tight_side ? cp <= parent_prec : cp < parent_prec;
  if (parens) out += '(';
  print_node(out, child);
  if (parens) out += ')';
}

void print_node(std::string& out, const Expr& e) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case ExprKind::Number:
      out += n.exact ? n.rat.str() : format_double(n.flt);
      return;
    case ExprKind::Coord:
      out += n.name;
      return;
    case ExprKind::Time:
      out += 't';
      return;
    case ExprKind::Neg: {
      out += '-';
      // Unary minus binds tighter than * in the grammar, so any infix
      // child needs parentheses to round-trip structurally.
      int cp = node_prec(*n.a);
      bool parens = cp <= kPrecMul;
      if (parens) out += '(';
      print_node(out, Expr(n.a));
      if (parens) out += ')';
      return;
    }
    case ExprKind::Exp:
    case ExprKind::Ln:
    case ExprKind::Sin:
    case ExprKind::Cos: {
      switch (n.kind) {
        case ExprKind::Exp: out += "exp("; break;
        case ExprKind::Ln: out += "ln("; break;
        case ExprKind::Sin: out += "sin("; break;
        default: out += "cos("; break;
      }
      print_node(out, Expr(n.a));
      out += ')';
      return;
    }
    case ExprKind::Add:
      print_child(out, Expr(n.a), kPrecAdd, false);
      out += " + ";
      print_child(out, Expr(n.b), kPrecAdd, true);
      return;
    case ExprKind::Sub:
      print_child(out, Expr(n.a), kPrecAdd, false);
      out += " - ";
      print_child(out, Expr(n.b), kPrecAdd, true);
      return;
    case ExprKind::Mul:
      print_child(out, Expr(n.a), kPrecMul, false);
      out += '*';
      print_child(out, Expr(n.b), kPrecMul, true);
      return;
    case ExprKind::Div:
      print_child(out, Expr(n.a), kPrecMul, false);
      out += '/';
      print_child(out, Expr(n.b), kPrecMul, true);
      return;
    case ExprKind::Pow:
      print_child(out, Expr(n.a), kPrecPow, true);
      out += '^';
      print_child(out, Expr(n.b), kPrecPow, true);
      return;
  }
}

}  // namespace

std::string Expr::str() const {
  std::string out;
  print_node(out, *this);
  return out;
}

bool Expr::same(const Expr& a, const Expr& b) {
  if (a.p_ == b.p_) return true;
  const ExprNode& x = a.node();
  const ExprNode& y = b.node();
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case ExprKind::Number:
      if (x.exact != y.exact) return false;
      return x.exact ? x.rat == y.rat : x.flt == y.flt;
    case ExprKind::Coord:
      return x.coord == y.coord;
    case ExprKind::Time:
      return true;
    case ExprKind::Neg:
    case ExprKind::Exp:
    case ExprKind::Ln:
    case ExprKind::Sin:
    case ExprKind::Cos:
      return same(Expr(x.a), Expr(y.a));
    default:
      return same(Expr(x.a), Expr(y.a)) && same(Expr(x.b), Expr(y.b));
  }
}

}  // namespace phasegeom
