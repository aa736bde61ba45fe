#include "anosov/birkhoff.hpp"

#include <algorithm>

#include "anosov/errors.hpp"
#include "anosov/parallel.hpp"

namespace anosov {

std::size_t BirkhoffData::boundary_components() const {
  std::size_t total = 0;
  for (const auto& e : entries) total += e.components;
  return total;
}

BigInt BirkhoffData::euler_characteristic() const {
  return BigInt(2) - 2 * BigInt(static_cast<unsigned long>(genus)) -
         BigInt(static_cast<unsigned long>(boundary_components()));
}

BirkhoffData theorem_a_prime_data(const PeriodicOrbit& gamma, const PeriodicOrbit& alpha, const BigInt& m,
                                  const BigInt& m0) {
  if (gamma == alpha) throw InputError("theorem_a_prime_data: gamma and alpha must be distinct orbits");
  if (m == 0) throw InputError("theorem_a_prime_data: slope must be nonzero");
  BirkhoffData d;
  d.entries.push_back(BirkhoffEntry{gamma, per_z(alpha), -m, std::nullopt});
  d.entries.push_back(BirkhoffEntry{alpha, per_z(gamma), m, std::nullopt});
  d.genus = 1;
  d.label = abs(m) >= m0 ? "certified" : "hypothetical";
  return d;
}

namespace {

template <class HorizontalOf>
ValidationReport validate_with(const BirkhoffData& data, const SuspensionFlow& flow, HorizontalOf&& horizontal_of) {
  ValidationReport r;
  std::vector<BigInt> horizontal(2, 0);
  r.multiplicities_nonzero = true;
  for (std::size_t i = 0; i < data.entries.size(); ++i) {
    const BirkhoffEntry& e = data.entries[i];
    const BigInt weight = BigInt(static_cast<unsigned long>(e.components)) * e.multiplicity;
    r.fiber_sum += weight * static_cast<unsigned long>(per_z(e.orbit));
    const std::vector<BigInt>& h = horizontal_of(i);
    horizontal[0] += weight * h[0];
    horizontal[1] += weight * h[1];
    if (e.multiplicity == 0) r.multiplicities_nonzero = false;
  }
  r.horizontal_sum = flow.horizontal().reduce(horizontal);
  r.fiber_relation = r.fiber_sum == 0;
  r.horizontal_relation = std::all_of(r.horizontal_sum.begin(), r.horizontal_sum.end(), [](const BigInt& v) { return v == 0; });
  // Collapsing the boundary circles of a genus-1 section gives the torus fiber.
  r.euler = data.genus == 1 &&
            data.euler_characteristic() == -BigInt(static_cast<unsigned long>(data.boundary_components()));
  return r;
}

}  // namespace

ValidationReport validate(const BirkhoffData& data, const SuspensionFlow& flow) {
  const IntMat& a = flow.matrix().matrix();
  std::vector<std::vector<BigInt>> horizontals;
  for (const auto& e : data.entries) {
    if (e.core_of_move) throw InputError("validate: core orbits belong to the surgered flow, not the base");
    if (!is_orbit_of(a, e.orbit)) throw InputError("validate: entry is not an orbit of the flow");
    horizontals.push_back(horizontal_vector(a, e.orbit));
  }
  return validate_with(data, flow, [&](std::size_t i) -> const std::vector<BigInt>& { return horizontals[i]; });
}

BirkhoffData section_after_surgery(const SurgeryPath& path) {
  if (path.moves.empty()) throw InputError("section_after_surgery: path has no moves");
  BirkhoffData d;
  d.genus = 1;
  for (std::size_t i = 0; i < path.moves.size(); ++i) {
    const SurgeryMove& mv = path.moves[i];
    BirkhoffEntry e{mv.orbit, per_z(mv.orbit), mv.slope, i};
    (mv.slope == 0 ? d.flagged : d.entries).push_back(std::move(e));
  }
  return d;
}

BirkhoffData relabel_cores(const BirkhoffData& data, const std::vector<PeriodicOrbit>& orbit_for_move) {
  BirkhoffData out = data;
  for (auto& e : out.entries) {
    if (!e.core_of_move) continue;
    if (*e.core_of_move >= orbit_for_move.size()) throw InputError("relabel_cores: no orbit for move");
    e.orbit = orbit_for_move[*e.core_of_move];
    e.core_of_move.reset();
  }
  return out;
}

bool same_section_data(const BirkhoffData& lhs, const BirkhoffData& rhs) {
  if (lhs.genus != rhs.genus || lhs.entries.size() != rhs.entries.size()) return false;
  std::vector<bool> used(rhs.entries.size(), false);
  for (const auto& e : lhs.entries) {
    bool found = false;
    for (std::size_t j = 0; j < rhs.entries.size() && !found; ++j) {
      if (!used[j] && rhs.entries[j] == e) used[j] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

std::vector<TripleReport> sweep_theorem_a_prime(const SuspensionFlow& flow, const std::vector<PeriodicOrbit>& orbits,
                                                long max_slope, const BigInt& m0, unsigned threads) {
  if (max_slope < 0) throw InputError("sweep_theorem_a_prime: max slope must be >= 0");
  const IntMat& a = flow.matrix().matrix();
  std::vector<std::vector<BigInt>> horizontals(orbits.size());
  parallel_for(orbits.size(), threads, [&](std::size_t i) {
    if (!is_orbit_of(a, orbits[i])) throw InputError("sweep_theorem_a_prime: not an orbit of the flow");
    horizontals[i] = horizontal_vector(a, orbits[i]);
  });
  std::vector<TripleReport> out;
  for (std::size_t g = 0; g < orbits.size(); ++g)
    for (std::size_t al = 0; al < orbits.size(); ++al) {
      if (g == al) continue;
      for (long m = -max_slope; m <= max_slope; ++m) {
        if (m == 0) continue;
        TripleReport t;
        t.gamma = g;
        t.alpha = al;
        t.m = m;
        out.push_back(std::move(t));
      }
    }
  parallel_for(out.size(), threads, [&](std::size_t i) {
    TripleReport& t = out[i];
    const BirkhoffData data = theorem_a_prime_data(orbits[t.gamma], orbits[t.alpha], t.m, m0);
    t.certified = data.label == "certified";
    const std::size_t idx[2] = {t.gamma, t.alpha};
    t.report = validate_with(data, flow, [&](std::size_t e) -> const std::vector<BigInt>& { return horizontals[idx[e]]; });
  });
  return out;
}

}  // namespace anosov
