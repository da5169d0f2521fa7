#include "phasegeom/sampling.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace phasegeom {

namespace {

// Fixed mapping from the raw 64-bit stream to [0,1); avoids the
// implementation-defined behaviour of std::uniform_real_distribution so
// that a seed pins the sample bytes.
double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> draw_point(int dim, const SampleSpec& spec, std::mt19937_64& rng) {
  std::vector<double> z(static_cast<size_t>(dim));
  for (int a = 0; a < dim; ++a) {
    double lo = spec.coord_lo;
    double hi = spec.coord_hi;
    if (!spec.per_coord.empty()) {
      lo = spec.per_coord[static_cast<size_t>(a)].first;
      hi = spec.per_coord[static_cast<size_t>(a)].second;
    }
    z[static_cast<size_t>(a)] = lo + (hi - lo) * unit_double(rng);
  }
  return z;
}

}  // namespace

PointSet sample_points(int dimension, const SampleSpec& spec) {
  if (spec.count <= 0) throw std::invalid_argument("SampleSpec: count must be positive");
  if (!spec.per_coord.empty() && static_cast<int>(spec.per_coord.size()) != dimension) {
    throw std::invalid_argument("SampleSpec: per_coord size must match dimension");
  }
  std::mt19937_64 rng(spec.seed);
  PointSet ps;
  ps.points.reserve(static_cast<size_t>(spec.count));
  ps.times.reserve(static_cast<size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) {
    ps.points.push_back(draw_point(dimension, spec, rng));
    ps.times.push_back(spec.t_lo + (spec.t_hi - spec.t_lo) * unit_double(rng));
  }
  return ps;
}

void ZeroCheck::merge(const ZeroCheck& other) {
  discarded += other.discarded;
  if (other.max_abs > max_abs) {
    max_abs = other.max_abs;
    witness = other.witness;
    witness_time = other.witness_time;
  }
  zero = zero && other.zero;
}

ZeroTester::ZeroTester(int dimension, SampleSpec spec)
    : dim_(dimension), spec_(std::move(spec)), pts_(sample_points(dimension, spec_)) {}

ZeroCheck ZeroTester::check(const Expr& e) const { return check(e, spec_.tol); }

ZeroCheck ZeroTester::check(const Expr& e, double tol) const {
  ZeroCheck out;
  const int retries = 8;
  // Retry stream is independent of the primary sample so a redraw does not
  // disturb the other points.
  std::mt19937_64 retry_rng(spec_.seed ^ 0x9e3779b97f4a7c15ull);
  for (size_t i = 0; i < pts_.points.size(); ++i) {
    const std::vector<double>* z = &pts_.points[i];
    double time = pts_.times[i];
    std::vector<double> redraw;
    bool evaluated = false;
    double v = 0.0;
    for (int attempt = 0; attempt <= retries; ++attempt) {
      try {
        v = e.eval(*z, time);
        evaluated = true;
        break;
      } catch (const EvalDomainError&) {
        redraw = draw_point(dim_, spec_, retry_rng);
        time = spec_.t_lo + (spec_.t_hi - spec_.t_lo) * unit_double(retry_rng);
        z = &redraw;
      }
    }
    if (!evaluated) {
      ++out.discarded;
      continue;
    }
    double mag = std::fabs(v);
    if (mag > out.max_abs) {
      out.max_abs = mag;
      out.witness = *z;
      out.witness_time = time;
    }
    if (mag >= tol) out.zero = false;
  }
  return out;
}

ZeroCheck ZeroTester::check_all(const std::vector<Expr>& es) const {
  return check_all(es, spec_.tol);
}

ZeroCheck ZeroTester::check_all(const std::vector<Expr>& es, double tol) const {
  ZeroCheck out;
  for (const Expr& e : es) out.merge(check(e, tol));
  return out;
}

}  // namespace phasegeom
