#pragma once

#include <string>
#include <vector>

#include "anosov/conjugacy.hpp"
#include "anosov/hyperbolic.hpp"
#include "anosov/smith.hpp"
#include "anosov/torus.hpp"

namespace anosov {

/// Suspension of a positive hyperbolic A: the mapping torus T^2 x R / (x, t) ~ (Ax, t - 1).
class SuspensionFlow {
 public:
  const Hyperbolic2& matrix() const { return a_; }
  /// H_1(M_A) = Z + coker(A - I).
  const AbelianGroup& h1() const { return h1_; }
  /// coker(A - I), the horizontal part of H_1.
  const CokernelMap& horizontal() const { return horizontal_; }

 private:
  friend SuspensionFlow build_suspension(const Hyperbolic2& a);
  SuspensionFlow(Hyperbolic2 a, CokernelMap horizontal, AbelianGroup h1);

  Hyperbolic2 a_;
  CokernelMap horizontal_;
  AbelianGroup h1_;
};

/// Throws InputError unless det A = 1 and trace A >= 3.
SuspensionFlow build_suspension(const Hyperbolic2& a);

/// Number of times the suspended orbit crosses a fiber: the least period.
std::size_t per_z(const PeriodicOrbit& orbit);

/// Class of a closed curve in H_1(M_A): degree against the fiber, plus a horizontal class
/// given by CokernelMap coordinates of coker(A - I).
struct OrbitClass {
  std::size_t fiber_degree = 0;
  std::vector<BigInt> horizontal;

  bool is_zero() const;
  /// "(1; 0)" style: fiber degree; horizontal coordinates.
  std::string to_string() const;

  friend bool operator==(const OrbitClass&, const OrbitClass&) = default;
};

/// (A^n - I) x for the canonical lift x in [0,1)^2 of the representative; an integer vector.
std::vector<BigInt> horizontal_vector(const IntMat& a, const PeriodicOrbit& orbit);

/// Throws InputError if `orbit` is not an orbit of the flow's matrix. The orbit of the origin
/// has horizontal class zero.
OrbitClass orbit_class(const SuspensionFlow& flow, const PeriodicOrbit& orbit);

/// horizontal(x) - horizontal(y) for orbits of equal period, computed from the lifted
/// difference: (A^n - I)(x - y).
std::vector<BigInt> horizontal_difference(const SuspensionFlow& flow, const PeriodicOrbit& x,
                                          const PeriodicOrbit& y);

/// The time-reversed flow: the suspension of A^-1, with its canonical word product and the
/// conjugator P satisfying P * A^-1 * P^-1 = normal_form.
struct ReversedFlow {
  SuspensionFlow flow;
  Hyperbolic2 normal_form;
  IntMat conjugator;
};

ReversedFlow reverse(const SuspensionFlow& flow);

/// The A-orbit of x, read as an A^-1-orbit (same points, canonical order for A^-1).
PeriodicOrbit reverse_orbit(const SuspensionFlow& flow, const PeriodicOrbit& orbit);

}  // namespace anosov
