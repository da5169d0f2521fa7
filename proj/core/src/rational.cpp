#include "phasegeom/rational.hpp"

#include <cstdlib>
#include <stdexcept>

namespace phasegeom {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

bool fits(i128 v) {
  return v >= static_cast<i128>(INT64_MIN) && v <= static_cast<i128>(INT64_MAX);
}

std::optional<Rational> make(i128 num, i128 den) {
  if (den == 0) return std::nullopt;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  if (!fits(num) || !fits(den)) return std::nullopt;
  Rational r;
  r.num = static_cast<i64>(num);
  r.den = static_cast<i64>(den);
  return r;
}

}  // namespace

Rational::Rational(i64 n, i64 d) {
  auto r = make(n, d);
  if (!r) throw std::invalid_argument("Rational: zero denominator");
  *this = *r;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::optional<Rational> rat_add(const Rational& a, const Rational& b) {
  return make(static_cast<i128>(a.num) * b.den + static_cast<i128>(b.num) * a.den,
              static_cast<i128>(a.den) * b.den);
}

std::optional<Rational> rat_sub(const Rational& a, const Rational& b) {
  return make(static_cast<i128>(a.num) * b.den - static_cast<i128>(b.num) * a.den,
              static_cast<i128>(a.den) * b.den);
}

std::optional<Rational> rat_mul(const Rational& a, const Rational& b) {
  return make(static_cast<i128>(a.num) * b.num, static_cast<i128>(a.den) * b.den);
}

std::optional<Rational> rat_div(const Rational& a, const Rational& b) {
  if (b.num == 0) return std::nullopt;
  return make(static_cast<i128>(a.num) * b.den, static_cast<i128>(a.den) * b.num);
}

std::optional<Rational> rat_neg(const Rational& a) {
  return make(-static_cast<i128>(a.num), a.den);
}

std::optional<Rational> rat_pow(const Rational& a, i64 k) {
  if (k == 0) return Rational(1);
  bool invert = k < 0;
  if (invert && a.num == 0) return std::nullopt;
  std::uint64_t e = invert ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  Rational base = a;
  Rational acc(1);
  while (e > 0) {
    if (e & 1) {
      auto m = rat_mul(acc, base);
      if (!m) return std::nullopt;
      acc = *m;
    }
    e >>= 1;
    if (e > 0) {
      auto m = rat_mul(base, base);
      if (!m) return std::nullopt;
      base = *m;
    }
  }
  if (invert) return rat_div(Rational(1), acc);
  return acc;
}

}  // namespace phasegeom
