#include <doctest.h>

#include "anosov/birkhoff.hpp"
#include "anosov/errors.hpp"

using namespace anosov;

TEST_CASE("theorem data for a fixed orbit and a period-two orbit") {
  const Hyperbolic2 cat = Hyperbolic2::parse("2,1;1,1");
  const SuspensionFlow f = build_suspension(cat);
  const auto orbits = enumerate_orbits(cat, 2);
  const BirkhoffData d = theorem_a_prime_data(orbits[0], orbits[1], 5, 3);
  REQUIRE(d.entries.size() == 2);
  CHECK(d.entries[0].components == 2);
  CHECK(d.entries[0].multiplicity == -5);
  CHECK(d.entries[1].components == 1);
  CHECK(d.entries[1].multiplicity == 5);
  CHECK(d.genus == 1);
  CHECK(d.label == "certified");
  CHECK(d.euler_characteristic() == -3);
  const ValidationReport r = validate(d, f);
  CHECK(r.fiber_sum == 0);
  CHECK(r.passed());
  CHECK(theorem_a_prime_data(orbits[0], orbits[1], 1, 3).label == "hypothetical");
  CHECK_THROWS_AS(theorem_a_prime_data(orbits[0], orbits[0], 1), InputError);
  CHECK_THROWS_AS(theorem_a_prime_data(orbits[0], orbits[1], 0), InputError);
}

TEST_CASE("validation failures are reported") {
  const Hyperbolic2 cat = Hyperbolic2::parse("2,1;1,1");
  const SuspensionFlow f = build_suspension(cat);
  const auto orbits = enumerate_orbits(cat, 1);
  BirkhoffData single;
  single.entries.push_back({orbits[0], 1, 1, std::nullopt});
  const ValidationReport r = validate(single, f);
  CHECK(r.fiber_sum == 1);
  CHECK_FALSE(r.fiber_relation);
  CHECK_FALSE(r.passed());
  BirkhoffData zero = single;
  zero.entries[0].multiplicity = 0;
  CHECK_FALSE(validate(zero, f).multiplicities_nonzero);
  BirkhoffData genus2 = single;
  genus2.genus = 2;
  CHECK_FALSE(validate(genus2, f).euler);
}

TEST_CASE("torsion horizontal classes can obstruct the boundary relation") {
  const Hyperbolic2 a = Hyperbolic2::parse("3,2;1,1");
  const SuspensionFlow f = build_suspension(a);
  const auto fixed = orbits_of_period(a, 1);
  const ValidationReport odd = validate(theorem_a_prime_data(fixed[0], fixed[1], 1), f);
  CHECK(odd.fiber_relation);
  CHECK(odd.euler);
  CHECK_FALSE(odd.horizontal_relation);
  CHECK(validate(theorem_a_prime_data(fixed[0], fixed[1], 2), f).passed());
}

TEST_CASE("section after surgery") {
  const Hyperbolic2 cat = Hyperbolic2::parse("2,1;1,1");
  const SuspensionFlow f = build_suspension(cat);
  const auto orbits = enumerate_orbits(cat, 2);
  const BirkhoffData one = section_after_surgery(make_surgery_path(f, {{orbits[0], 4}}));
  REQUIRE(one.entries.size() == 1);
  CHECK(one.entries[0].components == 1);
  CHECK(one.entries[0].multiplicity == 4);
  CHECK(one.entries[0].core_of_move == 0u);
  const BirkhoffData closed = section_after_surgery(make_surgery_path(f, {{orbits[0], 0}, {orbits[1], 0}}));
  CHECK(closed.entries.empty());
  CHECK(closed.flagged.size() == 2);
  CHECK(closed.euler_characteristic() == 0);
  CHECK_THROWS_AS(section_after_surgery(make_surgery_path(f, {})), InputError);
  CHECK_THROWS_AS(validate(one, f), InputError);
}

TEST_CASE("double move section matches the theorem data after relabeling") {
  const Hyperbolic2 cat = Hyperbolic2::parse("2,1;1,1");
  const SuspensionFlow f = build_suspension(cat);
  const auto orbits = enumerate_orbits(cat, 3);
  for (std::size_t g = 0; g < orbits.size(); ++g)
    for (std::size_t al = 0; al < orbits.size(); ++al) {
      if (g == al) continue;
      for (long m : {-3, 1, 4}) {
        const SurgeryPath path = make_surgery_path(f, {{orbits[g], m}, {orbits[al], -m}});
        // The core of the first move carries the alpha data and vice versa.
        const BirkhoffData relabeled = relabel_cores(section_after_surgery(path), {orbits[al], orbits[g]});
        CHECK(same_section_data(relabeled, theorem_a_prime_data(orbits[g], orbits[al], m)));
      }
    }
}

TEST_CASE("sweep is ordered and thread independent") {
  const Hyperbolic2 a = Hyperbolic2::parse("3,2;1,1");
  const SuspensionFlow f = build_suspension(a);
  const auto orbits = enumerate_orbits(a, 3);
  const auto one = sweep_theorem_a_prime(f, orbits, 2, 2, 1);
  const auto four = sweep_theorem_a_prime(f, orbits, 2, 2, 4);
  REQUIRE(one.size() == orbits.size() * (orbits.size() - 1) * 4);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].gamma == four[i].gamma);
    CHECK(one[i].m == four[i].m);
    CHECK(one[i].report.passed() == four[i].report.passed());
    CHECK(one[i].certified == (std::abs(one[i].m) >= 2));
  }
}
