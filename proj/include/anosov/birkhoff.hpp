#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anosov/surgery.hpp"
#include "anosov/suspension.hpp"

namespace anosov {

/// One boundary orbit of a Birkhoff section: p boundary components, all with multiplicity m.
struct BirkhoffEntry {
  PeriodicOrbit orbit;  // for a core entry: the base orbit the core replaces
  std::size_t components = 0;
  BigInt multiplicity;
  std::optional<std::size_t> core_of_move;

  friend bool operator==(const BirkhoffEntry&, const BirkhoffEntry&) = default;
};

struct BirkhoffData {
  std::vector<BirkhoffEntry> entries;
  std::size_t genus = 1;
  /// "certified" / "hypothetical" for generated two-orbit data; empty otherwise.
  std::string label;
  /// Zero-slope moves: recorded, but not genuine Birkhoff boundaries.
  std::vector<BirkhoffEntry> flagged;

  std::size_t boundary_components() const;
  /// 2 - 2 genus - (number of boundary circles).
  BigInt euler_characteristic() const;
};

/// [(gamma, per(alpha), -m), (alpha, per(gamma), m)], genus 1; labeled "certified" when |m| >= m0.
/// Throws InputError if gamma == alpha or m == 0.
BirkhoffData theorem_a_prime_data(const PeriodicOrbit& gamma, const PeriodicOrbit& alpha, const BigInt& m,
                                  const BigInt& m0 = 0);

struct ValidationReport {
  BigInt fiber_sum;                    // sum of p * per_z * m
  std::vector<BigInt> horizontal_sum;  // sum of p * m * horizontal, reduced in coker(A - I)
  bool fiber_relation = false;
  bool horizontal_relation = false;
  bool euler = false;
  bool multiplicities_nonzero = false;

  bool boundary_relation() const { return fiber_relation && horizontal_relation; }
  bool passed() const { return boundary_relation() && euler && multiplicities_nonzero; }
};

/// Entries must be orbits of the flow (core entries are rejected with InputError).
ValidationReport validate(const BirkhoffData& data, const SuspensionFlow& flow);

/// The fiber section transformed by the path: one entry (core, per_z(gamma_i), m_i) per nonzero-slope
/// move, zero-slope moves flagged. Throws InputError on an empty path.
BirkhoffData section_after_surgery(const SurgeryPath& path);

/// Replaces each core entry of move i by an ordinary entry on orbit_for_move[i].
BirkhoffData relabel_cores(const BirkhoffData& data, const std::vector<PeriodicOrbit>& orbit_for_move);

/// Same entries up to order, same genus.
bool same_section_data(const BirkhoffData& lhs, const BirkhoffData& rhs);

struct TripleReport {
  std::size_t gamma = 0;  // indices into the orbit list
  std::size_t alpha = 0;
  long m = 0;
  bool certified = false;
  ValidationReport report;
};

/// Validates theorem_a_prime_data for every ordered pair of distinct orbits and 0 < |m| <= max_slope,
/// ordered by (gamma, alpha, m).
std::vector<TripleReport> sweep_theorem_a_prime(const SuspensionFlow& flow, const std::vector<PeriodicOrbit>& orbits,
                                                long max_slope, const BigInt& m0, unsigned threads = 1);

}  // namespace anosov
