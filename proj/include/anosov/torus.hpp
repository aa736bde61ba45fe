#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anosov/hyperbolic.hpp"
#include "anosov/int_mat.hpp"

namespace anosov {

/// The class of (p1/q, p2/q) in R^2 / Z^2 with 0 <= p_i < q and gcd(p1, p2, q) = 1.
class TorusPoint {
 public:
  TorusPoint() : p1_(0), p2_(0), q_(1) {}
  /// Reduces numerators mod q and divides out the common gcd; q must be positive.
  static TorusPoint make(const BigInt& p1, const BigInt& p2, const BigInt& q);
  static TorusPoint origin() { return TorusPoint(); }

  const BigInt& p1() const { return p1_; }
  const BigInt& p2() const { return p2_; }
  const BigInt& q() const { return q_; }
  BigRational x() const { return make_rational(p1_, q_); }
  BigRational y() const { return make_rational(p2_, q_); }
  bool is_origin() const { return p1_ == 0 && p2_ == 0; }

  /// Coordinates in lowest terms: "(1/5,2/5)", "(0,1/2)", "(0,0)".
  std::string to_string() const;

  /// Lexicographic order on (q, p1, p2); the canonical-representative order.
  friend bool operator<(const TorusPoint& lhs, const TorusPoint& rhs);
  friend bool operator==(const TorusPoint& lhs, const TorusPoint& rhs) {
    return lhs.q_ == rhs.q_ && lhs.p1_ == rhs.p1_ && lhs.p2_ == rhs.p2_;
  }

 private:
  BigInt p1_, p2_, q_;
};

TorusPoint apply(const IntMat& a, const TorusPoint& x);

/// An A-orbit [x, Ax, ..., A^{n-1}x] stored from its lexicographically least point.
struct PeriodicOrbit {
  std::vector<TorusPoint> points;

  std::size_t period() const { return points.size(); }
  const TorusPoint& representative() const { return points.front(); }

  friend bool operator==(const PeriodicOrbit& lhs, const PeriodicOrbit& rhs) {
    return lhs.points == rhs.points;
  }
  /// Sort key: (period, representative).
  friend bool operator<(const PeriodicOrbit& lhs, const PeriodicOrbit& rhs);
};

/// |det(A^n - I)|, the number of points fixed by A^n.
BigInt fixed_point_count(const Hyperbolic2& a, unsigned long n);

/// All solutions of (A^n - I) x = 0 mod Z^2, sorted, via the Smith form of A^n - I.
std::vector<TorusPoint> enumerate_fixed_points(const Hyperbolic2& a, unsigned long n);

/// Least n >= 1 with A^n x = x, searched up to `bound`; nullopt if none.
std::optional<std::size_t> least_period(const IntMat& a, const TorusPoint& x, std::size_t bound);

/// Orbit of x in canonical form (rotated to start at its least point).
PeriodicOrbit orbit_of(const IntMat& a, const TorusPoint& x);

/// Orbits of least period exactly n, sorted by representative.
std::vector<PeriodicOrbit> orbits_of_period(const Hyperbolic2& a, std::size_t n);

/// All orbits of least period <= max_period, sorted by (period, representative).
std::vector<PeriodicOrbit> enumerate_orbits(const Hyperbolic2& a, std::size_t max_period,
                                            unsigned threads = 1);

bool is_orbit_of(const IntMat& a, const PeriodicOrbit& orbit);

int mobius(std::size_t n);

/// Counts of periodic points and orbits; vectors are indexed by period - 1.
struct OrbitCensus {
  IntMat matrix;
  std::size_t max_period = 0;
  std::vector<BigInt> fixed_counts;
  std::vector<BigInt> least_counts;
  std::vector<BigInt> orbit_counts;
  std::vector<BigInt> cumulative;

  /// |P_t|: orbits of least period <= t, for 1 <= t <= max_period.
  const BigInt& orbits_up_to(std::size_t t) const;
  const BigInt& total() const { return cumulative.back(); }
};

/// Census from fixed-point counts and Moebius inversion (no point enumeration).
OrbitCensus census(const Hyperbolic2& a, std::size_t max_period);

/// Orbit ids "pK-iJ": the J-th canonical orbit of least period K.
std::string orbit_id(std::size_t period, std::size_t index);
struct OrbitId {
  std::size_t period;
  std::size_t index;
};
OrbitId parse_orbit_id(std::string_view text);
/// Position of `orbit` among the sorted enumeration, as an id.
std::string orbit_id_of(const std::vector<PeriodicOrbit>& sorted_orbits, const PeriodicOrbit& orbit);
/// Looks up an id in a sorted enumeration; throws InputError if absent.
const PeriodicOrbit& find_orbit(const std::vector<PeriodicOrbit>& sorted_orbits, std::string_view id);

}  // namespace anosov
