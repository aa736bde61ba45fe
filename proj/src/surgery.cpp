#include "anosov/surgery.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "anosov/errors.hpp"

namespace anosov {

namespace {

constexpr long kDenominator = 1048573;
constexpr unsigned kMaxAttempts = 1000;

void validate_orbits(const IntMat& a, const std::vector<PeriodicOrbit>& orbits, const char* context) {
  if (orbits.empty()) throw InputError(std::string(context) + ": at least one orbit is required");
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    if (!is_orbit_of(a, orbits[i])) throw InputError(std::string(context) + ": not an orbit of the flow's matrix");
    for (std::size_t j = 0; j < i; ++j) {
      if (orbits[i] == orbits[j]) throw InputError(std::string(context) + ": overlapping orbits");
    }
  }
}

Point2 to_point(const TorusPoint& p) { return {p.x(), p.y()}; }

BigRational toroidal_distance(const Point2& p, const Point2& q) {
  auto circle = [](const BigRational& d) {
    BigRational f = d - BigRational(floor_of(d));
    return std::min<BigRational>(f, BigRational(1) - f);
  };
  return std::max(circle(p.x - q.x), circle(p.y - q.y));
}

BigRational max_norm(const Point2& p) { return std::max<BigRational>(abs(p.x), abs(p.y)); }

class ArcDecomposer {
 public:
  ArcDecomposer(const ArcSystem& arcs) : arcs_(arcs) {
    for (const auto& p : arcs.punctures) spokes_.push_back(Segment{arcs.hub, p});
    for (const auto& e : {Point2{1, 0}, Point2{0, 1}}) {
      const std::vector<long> x = crossings(Segment{arcs.basepoint, arcs.basepoint + e});
      loop_crossings_.push_back(x);
    }
  }

  /// Coordinates (a, b, c[...]) of a closed chain of segments; consecutive segments must
  /// agree modulo Z^2.
  std::vector<BigInt> decompose(const std::vector<Segment>& chain) const {
    BigRational wx = 0, wy = 0;
    std::vector<long> x(spokes_.size(), 0);
    for (const auto& seg : chain) {
      const Point2 d = seg.direction();
      wx += d.x;
      wy += d.y;
      const std::vector<long> c = crossings(seg);
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += c[j];
    }
    if (wx.get_den() != 1 || wy.get_den() != 1) throw std::logic_error("decompose: chain is not closed on the torus " + wx.get_str() + " " + wy.get_str());
    std::vector<BigInt> out{wx.get_num(), wy.get_num()};
    for (std::size_t j = 0; j < x.size(); ++j) {
      out.push_back(BigInt(x[j]) - out[0] * loop_crossings_[0][j] - out[1] * loop_crossings_[1][j]);
    }
    return out;
  }

 private:
  std::vector<long> crossings(const Segment& seg) const {
    require_avoids_lattice_translates(seg, arcs_.hub);
    std::vector<long> out;
    out.reserve(spokes_.size());
    for (const auto& spoke : spokes_) out.push_back(periodic_crossings(seg, spoke));
    return out;
  }

  const ArcSystem& arcs_;
  std::vector<Segment> spokes_;
  std::vector<std::vector<long>> loop_crossings_;
};

ComplementPresentation build_presentation(const SuspensionFlow& flow, const std::vector<PeriodicOrbit>& orbits,
                                          ArcSystem arcs, const std::vector<Point2>& directions) {
  const IntMat& a = flow.matrix().matrix();
  const std::size_t k = arcs.punctures.size();

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (cross(arcs.punctures[i] - arcs.hub, arcs.punctures[j] - arcs.hub) == 0) {
        throw DegenerateGeometry("two spokes are collinear");
      }
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (j != i) require_avoids_lattice_translates(Segment{arcs.hub, arcs.punctures[i]}, arcs.punctures[j]);
    }
  }

  ComplementPresentation p;
  p.orbits = orbits;
  p.generators = {"t", "a", "b"};
  for (std::size_t i = 0, offset = 0; i < orbits.size(); ++i) {
    p.first_puncture.push_back(offset);
    for (std::size_t j = 0; j < orbits[i].period(); ++j) {
      p.generators.push_back("c[" + std::to_string(i) + "," + std::to_string(j) + "]");
    }
    offset += orbits[i].period();
  }

  const ArcDecomposer dec(arcs);
  const Point2& x0 = arcs.basepoint;
  const Point2 ax0 = a * x0;

  IntMat phi(2 + k, 2 + k);
  for (std::size_t col = 0; col < 2; ++col) {
    const Point2 e = col == 0 ? Point2{1, 0} : Point2{0, 1};
    const std::vector<BigInt> image = dec.decompose({Segment{ax0, ax0 + a * e}});
    for (std::size_t r = 0; r < image.size(); ++r) phi(r, col) = image[r];
  }
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const std::size_t n = orbits[i].period();
    for (std::size_t j = 0; j < n; ++j) {
      phi(2 + p.first_puncture[i] + (j + 1) % n, 2 + p.first_puncture[i] + j) = 1;
    }
  }
  p.monodromy = phi;

  const std::size_t rank = 3 + k;
  IntMat rel(rank, 0);
  for (std::size_t col = 0; col < 2 + k; ++col) {
    std::vector<BigInt> v(rank, 0);
    for (std::size_t r = 0; r < 2 + k; ++r) v[1 + r] = phi(r, col);
    v[1 + col] -= 1;
    rel.append_column(v);
  }
  std::vector<BigInt> boundary(rank, 0);
  for (std::size_t j = 0; j < k; ++j) boundary[3 + j] = 1;
  rel.append_column(boundary);
  p.relations = std::move(rel);

  BigRational separation = 1;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j)
      separation = std::min(separation, toroidal_distance(arcs.punctures[i], arcs.punctures[j]));

  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const std::size_t n = orbits[i].period();
    std::vector<BigInt> mu(rank, 0);
    mu[3 + p.first_puncture[i]] = 1;
    p.meridians.push_back(std::move(mu));

    // Scale the pushoff so every iterate up to A^n stays within a quarter of the separation.
    BigRational reach = 0;
    Point2 iterate = directions[i];
    for (std::size_t j = 0; j <= n; ++j) {
      reach = std::max(reach, max_norm(iterate));
      iterate = a * iterate;
    }
    const Point2 eps = (separation / (4 * reach)) * directions[i];
    arcs.pushoffs.push_back(eps);

    const Point2 x = arcs.punctures[p.first_puncture[i]];
    std::vector<Segment> chain;
    Point2 y = x + eps;
    for (std::size_t j = 0; j < n; ++j) {
      const Point2 q = fractional_part(y);
      chain.push_back(Segment{q, x0});
      chain.push_back(Segment{x0, ax0});
      chain.push_back(Segment{ax0, a * q});
      y = a * y;
    }
    const Point2 an_eps = mat_pow(a, n) * eps;
    chain.push_back(Segment{y, y + eps - an_eps});

    std::vector<BigInt> lambda{BigInt(static_cast<unsigned long>(n))};
    for (auto& c : dec.decompose(chain)) lambda.push_back(std::move(c));

    const std::vector<BigInt> expected = flow.horizontal().reduce(horizontal_vector(a, orbits[i]));
    const std::vector<BigInt> got = flow.horizontal().reduce(std::vector<BigInt>{lambda[1], lambda[2]});
    if (expected != got) throw std::logic_error("h1_complement: longitude does not refill to the orbit class");
    p.longitudes.push_back(std::move(lambda));
  }

  p.group = cokernel(p.relations);
  p.arcs = std::move(arcs);
  return p;
}

}  // namespace

SurgeryPath make_surgery_path(const SuspensionFlow& base, std::vector<SurgeryMove> moves) {
  std::vector<PeriodicOrbit> orbits;
  for (const auto& m : moves) orbits.push_back(m.orbit);
  if (!orbits.empty()) validate_orbits(base.matrix().matrix(), orbits, "make_surgery_path");
  return SurgeryPath{base, std::move(moves)};
}

ComplementPresentation h1_complement(const SuspensionFlow& flow, const std::vector<PeriodicOrbit>& orbits,
                                     std::uint64_t seed) {
  validate_orbits(flow.matrix().matrix(), orbits, "h1_complement");
  std::vector<Point2> punctures;
  for (const auto& o : orbits)
    for (const auto& pt : o.points) punctures.push_back(to_point(pt));

  for (unsigned attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), attempt};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<long> coord(1, kDenominator - 1);
    std::uniform_int_distribution<long> dir(-1000, 1000);
    auto random_point = [&] { return Point2{make_rational(coord(rng), kDenominator), make_rational(coord(rng), kDenominator)}; };

    ArcSystem arcs;
    arcs.seed = seed;
    arcs.attempt = attempt;
    arcs.basepoint = random_point();
    arcs.hub = random_point();
    arcs.punctures = punctures;
    std::vector<Point2> directions;
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      Point2 u;
      do {
        u = Point2{BigRational(dir(rng)), BigRational(dir(rng))};
      } while (u.x == 0 || u.y == 0);
      directions.push_back(u);
    }
    try {
      return build_presentation(flow, orbits, std::move(arcs), directions);
    } catch (const DegenerateGeometry&) {
      continue;
    }
  }
  throw std::runtime_error("h1_complement: no generic arc system found");
}

std::vector<BigInt> surgery_relation(const ComplementPresentation& p, std::size_t orbit_index, const BigInt& m) {
  if (orbit_index >= p.orbits.size()) throw InputError("surgery_relation: orbit index out of range");
  std::vector<BigInt> r = p.meridians[orbit_index];
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += m * p.longitudes[orbit_index][i];
  return r;
}

AbelianGroup h1_surgered(const ComplementPresentation& p, std::span<const BigInt> slopes) {
  if (slopes.size() != p.orbits.size()) throw InputError("h1_surgered: one slope per orbit is required");
  IntMat rel = p.relations;
  for (std::size_t i = 0; i < slopes.size(); ++i) rel.append_column(surgery_relation(p, i, slopes[i]));
  return cokernel(rel);
}

AbelianGroup h1_surgered(const SurgeryPath& path, std::uint64_t seed) {
  if (path.moves.empty()) return path.base.h1();
  std::vector<PeriodicOrbit> orbits;
  std::vector<BigInt> slopes;
  for (const auto& m : path.moves) {
    orbits.push_back(m.orbit);
    slopes.push_back(m.slope);
  }
  return h1_surgered(h1_complement(path.base, orbits, seed), slopes);
}

AbelianGroup filled_group(const ComplementPresentation& p) {
  IntMat rel = p.relations;
  for (const auto& mu : p.meridians) rel.append_column(mu);
  return cokernel(rel);
}

FilledClass fill_back(const SuspensionFlow& flow, const ComplementPresentation& p, std::span<const BigInt> v) {
  if (v.size() != p.rank()) throw InputError("fill_back: vector has the wrong rank");
  return FilledClass{v[0], flow.horizontal().reduce(std::vector<BigInt>{v[1], v[2]})};
}

bool suspension_fingerprint_check(const AbelianGroup& result, const SuspensionFlow& flow) {
  return result == flow.h1();
}

OrbitToken orbit_transport(const SurgeryPath& path, const PeriodicOrbit& orbit) {
  if (!is_orbit_of(path.base.matrix().matrix(), orbit)) throw InputError("orbit_transport: not an orbit of the base flow");
  for (std::size_t i = 0; i < path.moves.size(); ++i) {
    if (path.moves[i].orbit == orbit) return core_token(path, i);
  }
  return OrbitToken{OrbitToken::Kind::Survivor, orbit, 0, per_z(orbit)};
}

OrbitToken core_token(const SurgeryPath& path, std::size_t move_index) {
  if (move_index >= path.moves.size()) throw InputError("core_token: move index out of range");
  return OrbitToken{OrbitToken::Kind::Core, path.moves[move_index].orbit, move_index, std::nullopt};
}

}  // namespace anosov
