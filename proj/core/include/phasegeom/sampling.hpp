#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "phasegeom/chart.hpp"
#include "phasegeom/expr.hpp"

namespace phasegeom {

/// How sample points for numeric zero-testing are drawn.
struct SampleSpec {
  int count = 100;
  double coord_lo = -1.0;
  double coord_hi = 1.0;
  /// Optional per-coordinate ranges; empty means use coord_lo/coord_hi.
  std::vector<std::pair<double, double>> per_coord;
  double t_lo = 0.0;
  double t_hi = 1.0;
  std::uint64_t seed = 42;
  double tol = 1e-9;
};

struct PointSet {
  std::vector<std::vector<double>> points;
  std::vector<double> times;
};

/// Deterministic (seeded) uniform sample of phase-space points and times.
PointSet sample_points(int dimension, const SampleSpec& spec);

struct ZeroCheck {
  bool zero = true;
  double max_abs = 0.0;
  std::vector<double> witness;
  double witness_time = 0.0;
  /// Points whose evaluation kept failing after bounded resampling.
  int discarded = 0;

  void merge(const ZeroCheck& other);
};

/// Sampled numeric zero-testing of symbolic identities. Evaluation domain
/// errors discard the sample and redraw it (bounded retries).
class ZeroTester {
 public:
  ZeroTester(int dimension, SampleSpec spec);

  const SampleSpec& spec() const { return spec_; }
  const PointSet& points() const { return pts_; }
  int dimension() const { return dim_; }
  double tol() const { return spec_.tol; }

  ZeroCheck check(const Expr& e) const;
  ZeroCheck check(const Expr& e, double tol) const;
  /// Worst result over a family of expressions (e.g. field components).
  ZeroCheck check_all(const std::vector<Expr>& es) const;
  ZeroCheck check_all(const std::vector<Expr>& es, double tol) const;

 private:
  int dim_;
  SampleSpec spec_;
  PointSet pts_;
};

}  // namespace phasegeom
