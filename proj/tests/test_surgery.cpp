#include <doctest.h>

#include "anosov/errors.hpp"
#include "anosov/geometry.hpp"
#include "anosov/surgery.hpp"

using namespace anosov;

namespace {

Point2 pt(long x, long y, long d = 1) { return {make_rational(x, d), make_rational(y, d)}; }

AbelianGroup surgered(const ComplementPresentation& p, std::vector<long> slopes) {
  std::vector<BigInt> s(slopes.begin(), slopes.end());
  return h1_surgered(p, s);
}

}  // namespace

TEST_CASE("segment crossings") {
  const Segment arc{pt(0, 0), pt(1, 0, 2)};
  CHECK(signed_crossing(Segment{pt(1, -1, 4), pt(1, 1, 4)}, arc) == -1);
  CHECK(signed_crossing(Segment{pt(1, 1, 4), pt(1, -1, 4)}, arc) == 1);
  CHECK(signed_crossing(Segment{pt(3, 1, 4), pt(3, -1, 4)}, arc) == 0);
  CHECK_THROWS_AS(signed_crossing(Segment{pt(1, 2, 4), pt(1, 0, 4)}, Segment{pt(0, 0), pt(1, 0)}), DegenerateGeometry);
  CHECK_THROWS_AS(signed_crossing(Segment{pt(-1, 0), pt(1, 0, 4)}, arc), DegenerateGeometry);
    const Segment spoke{pt(1, 3, 10), pt(7, 3, 10)};
  CHECK(periodic_crossings(Segment{pt(1, 5, 10), pt(11, 5, 10)}, spoke) == 0);
  CHECK(periodic_crossings(Segment{pt(1, 8, 4), pt(1, 20, 4)}, spoke) == -3);
  CHECK(fractional_part(pt(-1, 7, 3)) == pt(2, 1, 3));
}

TEST_CASE("small loops around a puncture count +1 against its spoke") {
  const Segment spoke{pt(1, 2, 10), pt(3, 7, 10)};
  const Point2 p = spoke.to;
  const BigRational r(1, 100);
  const Point2 corners[] = {p + Point2{r, r}, p + Point2{-r, r}, p + Point2{-r, -r}, p + Point2{r, -r}};
  long total = 0;
  for (int i = 0; i < 4; ++i) total += periodic_crossings(Segment{corners[i], corners[(i + 1) % 4]}, spoke);
  CHECK(total == 1);
}

TEST_CASE("complement of the fixed orbit of the cat map") {
  const Hyperbolic2 cat = Hyperbolic2::parse("2,1;1,1");
  const SuspensionFlow f = build_suspension(cat);
  const auto orbits = enumerate_orbits(cat, 2);
  const ComplementPresentation p = h1_complement(f, {orbits[0]});
  CHECK(p.group.to_string() == "Z");
  CHECK(p.generators == std::vector<std::string>{"t", "a", "b", "c[0,0]"});
  IntMat with_meridian = p.relations;
  with_meridian.append_column(p.meridians[0]);
  CHECK(cokernel(with_meridian) == p.group);  // the meridian is null-homologous
  CHECK(p.longitudes[0][0] == 1);
  CHECK(surgered(p, {0}).to_string() == "Z");
  for (long m : {1, -1, 2, 3, -5, 12}) {
    const AbelianGroup g = surgered(p, {m});
    CHECK(g.free_rank == 0);
    CHECK(g.torsion_order() == std::abs(m));
  }
  CHECK(h1_complement(f, {orbits[0]}, 99).group == p.group);
}

TEST_CASE("zero slopes refill the suspension") {
  for (const char* text : {"2,1;1,1", "3,2;1,1", "5,2;2,1"}) {
    const Hyperbolic2 a = Hyperbolic2::parse(text);
    const SuspensionFlow f = build_suspension(a);
    const auto orbits = enumerate_orbits(a, 3);
    for (std::size_t i = 0; i < std::min<std::size_t>(orbits.size(), 6); ++i) {
      for (std::size_t j = i + 1; j < std::min<std::size_t>(orbits.size(), 6); ++j) {
        if (orbits[i].period() + orbits[j].period() > 6) continue;
        const ComplementPresentation p = h1_complement(f, {orbits[i], orbits[j]}, i * 10 + j);
        CHECK(surgered(p, {0, 0}) == f.h1());
        CHECK(filled_group(p) == f.h1());
        for (std::size_t k = 0; k < 2; ++k) {
          const FilledClass c = fill_back(f, p, p.longitudes[k]);
          const OrbitClass expected = orbit_class(f, p.orbits[k]);
          CHECK(c.fiber_degree == static_cast<unsigned long>(expected.fiber_degree));
          CHECK(c.horizontal == expected.horizontal);
          CHECK(fill_back(f, p, p.meridians[k]).fiber_degree == 0);
        }
      }
    }
  }
}

TEST_CASE("presentation invariants") {
  const Hyperbolic2 a = Hyperbolic2::parse("3,2;1,1");
  const SuspensionFlow f = build_suspension(a);
  const auto orbits = enumerate_orbits(a, 2);
  const ComplementPresentation p = h1_complement(f, {orbits[0], orbits[2]}, 5);
  CHECK(p.puncture_count() == 1 + orbits[2].period());
  // The boundary relation: the sum of all puncture loops is a relation column.
  const IntMat& rel = p.relations;
  const std::vector<BigInt> last = rel.column(rel.cols() - 1);
  for (std::size_t r = 3; r < p.rank(); ++r) CHECK(last[r] == 1);
  // Slope m + 1 differs from slope m by one longitude.
  const auto r3 = surgery_relation(p, 1, 3);
  const auto r4 = surgery_relation(p, 1, 4);
  for (std::size_t i = 0; i < p.rank(); ++i) CHECK(r4[i] - r3[i] == p.longitudes[1][i]);
  // Monodromy permutes the puncture loops of each orbit cyclically.
  const std::size_t c1 = 2 + p.first_puncture[1];
  CHECK(p.monodromy(c1 + 1, c1) == 1);
  CHECK(p.monodromy(c1, c1 + 1) == 1);
}

TEST_CASE("orbit validation") {
  const Hyperbolic2 cat = Hyperbolic2::parse("2,1;1,1");
  const SuspensionFlow f = build_suspension(cat);
  const auto orbits = enumerate_orbits(cat, 2);
  CHECK_THROWS_AS(h1_complement(f, {}), InputError);
  CHECK_THROWS_AS(h1_complement(f, {orbits[1], orbits[1]}), InputError);
  PeriodicOrbit bogus{{TorusPoint::make(1, 2, 7)}};
  CHECK_THROWS_AS(h1_complement(f, {bogus}), InputError);
  CHECK_THROWS_AS(make_surgery_path(f, {{orbits[0], 1}, {orbits[0], 2}}), InputError);
}

TEST_CASE("fingerprint check") {
  const Hyperbolic2 cat = Hyperbolic2::parse("2,1;1,1");
  const SuspensionFlow f = build_suspension(cat);
  const auto orbits = enumerate_orbits(cat, 2);
  CHECK(suspension_fingerprint_check(h1_surgered(make_surgery_path(f, {{orbits[0], 0}})), f));
  CHECK_FALSE(suspension_fingerprint_check(h1_surgered(make_surgery_path(f, {{orbits[0], 1}})), f));
  CHECK_FALSE(suspension_fingerprint_check(build_suspension(Hyperbolic2::parse("3,2;1,1")).h1(), f));
  const AbelianGroup loop = h1_surgered(make_surgery_path(f, {{orbits[0], 2}, {orbits[1], -2}}));
  CHECK(loop.free_rank <= 1);
}

TEST_CASE("orbit transport") {
  const Hyperbolic2 cat = Hyperbolic2::parse("2,1;1,1");
  const SuspensionFlow f = build_suspension(cat);
  const auto orbits = enumerate_orbits(cat, 3);
  const SurgeryPath path = make_surgery_path(f, {{orbits[0], 2}});
  std::size_t total = 0;
  for (std::size_t i = 1; i < orbits.size(); ++i) {
    const OrbitToken t = orbit_transport(path, orbits[i]);
    CHECK_FALSE(t.is_core());
    REQUIRE(t.pairing.has_value());
    CHECK(*t.pairing == per_z(orbits[i]));
    total += *t.pairing;
  }
  // Pairing is additive: the sum of the survivors' pairings is the fiber degree of their total class.
  std::size_t degree = 0;
  for (std::size_t i = 1; i < orbits.size(); ++i) degree += orbit_class(f, orbits[i]).fiber_degree;
  CHECK(total == degree);
  const OrbitToken core = orbit_transport(path, orbits[0]);
  CHECK(core.is_core());
  CHECK_FALSE(core.pairing.has_value());
  CHECK(core.move_index == 0);
}
