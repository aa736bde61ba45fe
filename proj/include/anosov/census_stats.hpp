#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "anosov/surgery.hpp"
#include "anosov/torus.hpp"

namespace anosov {

/// Closed rational interval [lo, hi].
struct Interval {
  BigRational lo;
  BigRational hi;

  static Interval point(const BigRational& v) { return {v, v}; }
  bool contains(const BigRational& v) const { return lo <= v && v <= hi; }
  BigRational width() const { return hi - lo; }
  double midpoint() const;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
/// Divisor must not contain zero.
Interval operator/(const Interval& a, const Interval& b);

/// Enclosures of width at most about 2^-bits (times the magnitude for log).
Interval sqrt_interval(const BigRational& x, unsigned bits = 96);
Interval log_interval(const BigRational& x, unsigned bits = 96);

struct PropBParams {
  BigRational c0 = 1;
  std::size_t t0 = 1;
  BigRational kappa3 = 1;

  /// Throws InputError unless c0, t0, kappa3 are positive.
  void validate() const;
};

/// Enclosure of C1 * sqrt(t) * log(t) with C1 = C0 * sqrt(1 / kappa3); `hi` is the certified bound.
/// Throws InputError for t <= t0.
Interval fh_bound(const PropBParams& params, std::size_t t);

struct RatioPoint {
  std::size_t t;
  Interval ratio;  // enclosure of C1 sqrt(t) log(t) / |P_t|; ratio.hi is the reported bound
};

/// One point per t in (t0, max_period]. Throws InputError if max_period <= t0.
std::vector<RatioPoint> density_ratio(const OrbitCensus& census, const PropBParams& params);

/// |P^2_t| = |P_t|^2 (ordered pairs).
BigInt pair_count(const OrbitCensus& census, std::size_t t);

struct GrowthReport {
  std::size_t horizon;
  BigInt orbits;            // |P_t| at the horizon
  Interval estimate;        // log |P_t| / t
  Interval target;          // log lambda, lambda the expanding eigenvalue
  Interval relative_error;  // |estimate - target| / target

  /// Certified: every value in the enclosure is <= tolerance.
  bool within(const BigRational& tolerance) const { return relative_error.hi <= tolerance; }
};

/// Evaluated at t = census.max_period; throws InputError when max_period < 5.
GrowthReport growth_rate(const OrbitCensus& census);

/// True iff the transported pairing of a surviving orbit equals per_z(orbit).
/// Throws InputError for orbits in the surgery locus.
bool period_comparison_identity(const SurgeryPath& path, const PeriodicOrbit& orbit);

/// Decimal rendering with `digits` digits after the point, rounded toward -inf.
std::string to_fixed(const BigRational& q, int digits);

}  // namespace anosov
