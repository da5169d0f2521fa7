#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>

namespace phasegeom {

/// Exact rational with 64-bit numerator and positive denominator.
/// Arithmetic that would overflow signals failure so callers can fall
/// back to floating point instead of silently wrapping.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d);

  bool is_integer() const { return den == 1; }
  bool is_zero() const { return num == 0; }
  bool is_one() const { return num == 1 && den == 1; }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

std::optional<Rational> rat_add(const Rational& a, const Rational& b);
std::optional<Rational> rat_sub(const Rational& a, const Rational& b);
std::optional<Rational> rat_mul(const Rational& a, const Rational& b);
std::optional<Rational> rat_div(const Rational& a, const Rational& b);  // nullopt also when b == 0
std::optional<Rational> rat_neg(const Rational& a);
/// a^k for integer k (negative k inverts); nullopt on overflow or 0^negative.
std::optional<Rational> rat_pow(const Rational& a, std::int64_t k);

}  // namespace phasegeom
