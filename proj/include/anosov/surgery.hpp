#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anosov/geometry.hpp"
#include "anosov/smith.hpp"
#include "anosov/suspension.hpp"

namespace anosov {

/// Slopes are measured in this framing; every report carries the tag.
inline constexpr const char* kFramingConvention =
    "fiber framing: meridian = counterclockwise puncture loop in the fiber, longitude = pushoff along the flow "
    "closed by a short fiber segment; slope m means the relation meridian + m * longitude = 0";

struct SurgeryMove {
  PeriodicOrbit orbit;
  BigInt slope;
};

struct SurgeryPath {
  SuspensionFlow base;
  std::vector<SurgeryMove> moves;
};

/// Checks that every move orbit is an orbit of the base matrix and that the orbits are pairwise distinct.
SurgeryPath make_surgery_path(const SuspensionFlow& base, std::vector<SurgeryMove> moves);

/// Choices behind a presentation. Coordinates are in [0,1)^2 except the pushoff offsets.
struct ArcSystem {
  Point2 basepoint;
  Point2 hub;
  std::vector<Point2> punctures;           // orbit-major, each orbit in A-order
  std::vector<Point2> pushoffs;            // one per orbit
  std::uint64_t seed = 0;
  unsigned attempt = 0;
};

/// H_1 of M_A minus a union of orbits, presented on generators t, a, b, c[i,j]
/// (t: base circle, a/b: torus loops, c[i,j]: loop around the j-th point of orbit i).
struct ComplementPresentation {
  std::vector<PeriodicOrbit> orbits;
  std::vector<std::size_t> first_puncture;  // index of c[i,0] among the puncture loops
  std::vector<std::string> generators;
  /// Monodromy on H_1 of the punctured fiber, in the basis a, b, c[...] (before the boundary relation).
  IntMat monodromy;
  /// Columns are relations in Z^(3 + punctures).
  IntMat relations;
  std::vector<std::vector<BigInt>> meridians;
  std::vector<std::vector<BigInt>> longitudes;
  ArcSystem arcs;
  AbelianGroup group;

  std::size_t rank() const { return generators.size(); }
  std::size_t puncture_count() const { return generators.size() - 3; }
};

/// Generic choices are drawn from `seed`; degenerate draws are retried deterministically.
/// Throws InputError on an empty list, a non-orbit, or repeated orbits.
ComplementPresentation h1_complement(const SuspensionFlow& flow, const std::vector<PeriodicOrbit>& orbits,
                                     std::uint64_t seed = 0);

/// meridian_i + m * longitude_i.
std::vector<BigInt> surgery_relation(const ComplementPresentation& p, std::size_t orbit_index, const BigInt& m);

/// Quotient by the surgery relations, one slope per orbit of the presentation.
AbelianGroup h1_surgered(const ComplementPresentation& p, std::span<const BigInt> slopes);
AbelianGroup h1_surgered(const SurgeryPath& path, std::uint64_t seed = 0);

/// Quotient of the complement by all meridians (the refilled manifold).
AbelianGroup filled_group(const ComplementPresentation& p);

/// Image of a complement class in H_1(M_A) under the refilling map.
struct FilledClass {
  BigInt fiber_degree;
  std::vector<BigInt> horizontal;

  friend bool operator==(const FilledClass&, const FilledClass&) = default;
};
FilledClass fill_back(const SuspensionFlow& flow, const ComplementPresentation& p, std::span<const BigInt> v);

/// Necessary (not sufficient) condition for the surgered flow to be the suspension of A or A^-1:
/// equality with Z + coker(A - I).
bool suspension_fingerprint_check(const AbelianGroup& result, const SuspensionFlow& flow);

/// An orbit of the surgered flow: either an untouched orbit of the base or the core of a move.
struct OrbitToken {
  enum class Kind { Survivor, Core };
  Kind kind;
  PeriodicOrbit orbit;         // the base orbit (for a core: the surgered orbit it replaces)
  std::size_t move_index = 0;  // meaningful for cores only
  /// Pairing with the transported fiber section; absent for cores.
  std::optional<std::size_t> pairing;

  bool is_core() const { return kind == Kind::Core; }
};

OrbitToken orbit_transport(const SurgeryPath& path, const PeriodicOrbit& orbit);
OrbitToken core_token(const SurgeryPath& path, std::size_t move_index);

}  // namespace anosov
