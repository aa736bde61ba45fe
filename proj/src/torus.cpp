#include "anosov/torus.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "anosov/errors.hpp"
#include "anosov/parallel.hpp"
#include "anosov/smith.hpp"

namespace anosov {

namespace {

BigInt mod_floor(const BigInt& a, const BigInt& q) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t());
  return r;
}

std::vector<std::size_t> proper_divisors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t d = 1; d < n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

}  // namespace

TorusPoint TorusPoint::make(const BigInt& p1, const BigInt& p2, const BigInt& q) {
  if (q <= 0) throw std::invalid_argument("TorusPoint: denominator must be positive");
  TorusPoint t;
  t.p1_ = mod_floor(p1, q);
  t.p2_ = mod_floor(p2, q);
  t.q_ = q;
  BigInt g = gcd(gcd(t.p1_, t.p2_), t.q_);
  if (g > 1) {
    t.p1_ /= g;
    t.p2_ /= g;
    t.q_ /= g;
  }
  return t;
}

std::string TorusPoint::to_string() const { return "(" + x().get_str() + "," + y().get_str() + ")"; }

bool operator<(const TorusPoint& lhs, const TorusPoint& rhs) {
  if (lhs.q_ != rhs.q_) return lhs.q_ < rhs.q_;
  if (lhs.p1_ != rhs.p1_) return lhs.p1_ < rhs.p1_;
  return lhs.p2_ < rhs.p2_;
}

TorusPoint apply(const IntMat& a, const TorusPoint& x) {
  return TorusPoint::make(a(0, 0) * x.p1() + a(0, 1) * x.p2(), a(1, 0) * x.p1() + a(1, 1) * x.p2(), x.q());
}

bool operator<(const PeriodicOrbit& lhs, const PeriodicOrbit& rhs) {
  if (lhs.period() != rhs.period()) return lhs.period() < rhs.period();
  return lhs.representative() < rhs.representative();
}

BigInt fixed_point_count(const Hyperbolic2& a, unsigned long n) {
  if (n == 0) throw InputError("fixed_point_count: period must be positive");
  const IntMat an = mat_pow(a.matrix(), n);
  BigInt count = abs(determinant(an - IntMat::identity(2)));
  if (a.is_positive()) {
    BigInt via_trace = trace(an) - 2;
    if (via_trace != count) throw std::logic_error("fixed_point_count: trace identity violated");
  }
  return count;
}

std::vector<TorusPoint> enumerate_fixed_points(const Hyperbolic2& a, unsigned long n) {
  if (n == 0) throw InputError("enumerate_fixed_points: period must be positive");
  const IntMat m = mat_pow(a.matrix(), n) - IntMat::identity(2);
  const SNFResult s = snf(m);
  const BigInt d1 = s.D(0, 0);
  const BigInt d2 = s.D(1, 1);
  if (d1 == 0 || d2 == 0) throw std::logic_error("enumerate_fixed_points: A^n - I is singular");
  // x = V (j1/d1, j2/d2) over the common denominator d2.
  const BigInt scale = d2 / d1;
  std::vector<TorusPoint> points;
  for (BigInt j1 = 0; j1 < d1; ++j1) {
    const BigInt y1 = j1 * scale;
    for (BigInt j2 = 0; j2 < d2; ++j2) {
      points.push_back(TorusPoint::make(s.V(0, 0) * y1 + s.V(0, 1) * j2, s.V(1, 0) * y1 + s.V(1, 1) * j2, d2));
    }
  }
  std::sort(points.begin(), points.end());
  return points;
}

std::optional<std::size_t> least_period(const IntMat& a, const TorusPoint& x, std::size_t bound) {
  TorusPoint y = x;
  for (std::size_t n = 1; n <= bound; ++n) {
    y = apply(a, y);
    if (y == x) return n;
  }
  return std::nullopt;
}

PeriodicOrbit orbit_of(const IntMat& a, const TorusPoint& x) {
  std::vector<TorusPoint> pts{x};
  for (TorusPoint y = apply(a, x); !(y == x); y = apply(a, y)) pts.push_back(y);
  auto least = std::min_element(pts.begin(), pts.end());
  std::rotate(pts.begin(), least, pts.end());
  return PeriodicOrbit{std::move(pts)};
}

std::vector<PeriodicOrbit> orbits_of_period(const Hyperbolic2& a, std::size_t n) {
  const std::vector<TorusPoint> candidates = enumerate_fixed_points(a, n);
  std::vector<IntMat> divisor_powers;
  for (std::size_t d : proper_divisors(n)) divisor_powers.push_back(mat_pow(a.matrix(), d));

  std::vector<bool> visited(candidates.size(), false);
  std::vector<PeriodicOrbit> orbits;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (visited[i]) continue;
    const TorusPoint& x = candidates[i];
    const bool shorter = std::any_of(divisor_powers.begin(), divisor_powers.end(),
                                     [&](const IntMat& p) { return apply(p, x) == x; });
    if (shorter) {
      visited[i] = true;
      continue;
    }
    // Iterating in sorted order, the first unvisited point of an orbit is its least point.
    PeriodicOrbit orbit;
    TorusPoint y = x;
    for (std::size_t k = 0; k < n; ++k) {
      auto it = std::lower_bound(candidates.begin(), candidates.end(), y);
      if (it == candidates.end() || !(*it == y)) throw std::logic_error("orbits_of_period: orbit escaped");
      visited[static_cast<std::size_t>(it - candidates.begin())] = true;
      orbit.points.push_back(y);
      y = apply(a.matrix(), y);
    }
    if (!(y == x)) throw std::logic_error("orbits_of_period: orbit did not close");
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

std::vector<PeriodicOrbit> enumerate_orbits(const Hyperbolic2& a, std::size_t max_period, unsigned threads) {
  if (max_period == 0) throw InputError("enumerate_orbits: max period must be >= 1");
  std::vector<std::vector<PeriodicOrbit>> per_period(max_period);
  parallel_for(max_period, threads, [&](std::size_t i) { per_period[i] = orbits_of_period(a, i + 1); });
  std::vector<PeriodicOrbit> all;
  for (auto& group : per_period) {
    for (auto& o : group) all.push_back(std::move(o));
  }
  std::sort(all.begin(), all.end());
  return all;
}

bool is_orbit_of(const IntMat& a, const PeriodicOrbit& orbit) {
  const std::size_t n = orbit.period();
  if (n == 0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(apply(a, orbit.points[i]) == orbit.points[(i + 1) % n])) return false;
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (orbit.points[i] == orbit.points[0]) return false;
  }
  return true;
}

int mobius(std::size_t n) {
  if (n == 0) throw std::invalid_argument("mobius: n must be positive");
  int result = 1;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

const BigInt& OrbitCensus::orbits_up_to(std::size_t t) const {
  if (t == 0 || t > max_period) throw InputError("OrbitCensus: period outside the census range");
  return cumulative[t - 1];
}

OrbitCensus census(const Hyperbolic2& a, std::size_t max_period) {
  if (max_period == 0) throw InputError("census: max period must be >= 1");
  OrbitCensus c;
  c.matrix = a.matrix();
  c.max_period = max_period;
  for (std::size_t n = 1; n <= max_period; ++n) c.fixed_counts.push_back(fixed_point_count(a, n));
  BigInt running = 0;
  for (std::size_t n = 1; n <= max_period; ++n) {
    BigInt least = 0;
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      const int mu = mobius(n / d);
      if (mu != 0) least += mu * c.fixed_counts[d - 1];
    }
    if (!mpz_divisible_ui_p(least.get_mpz_t(), n)) throw std::logic_error("census: n does not divide L(n)");
    BigInt orbits = least / static_cast<unsigned long>(n);
    running += orbits;
    c.least_counts.push_back(least);
    c.orbit_counts.push_back(orbits);
    c.cumulative.push_back(running);
  }
  return c;
}

std::string orbit_id(std::size_t period, std::size_t index) {
  return "p" + std::to_string(period) + "-i" + std::to_string(index);
}

OrbitId parse_orbit_id(std::string_view text) {
  auto fail = [&] { return InputError("malformed orbit id '" + std::string(text) + "' (expected pK-iJ)"); };
  if (text.size() < 5 || text.front() != 'p') throw fail();
  const auto dash = text.find("-i");
  if (dash == std::string_view::npos) throw fail();
  auto parse = [&](std::string_view digits) {
    std::size_t v = 0;
    if (digits.empty()) throw fail();
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) throw fail();
    return v;
  };
  OrbitId id{parse(text.substr(1, dash - 1)), parse(text.substr(dash + 2))};
  if (id.period == 0) throw fail();
  return id;
}

std::string orbit_id_of(const std::vector<PeriodicOrbit>& sorted_orbits, const PeriodicOrbit& orbit) {
  std::size_t index = 0;
  for (const auto& o : sorted_orbits) {
    if (o.period() != orbit.period()) continue;
    if (o == orbit) return orbit_id(orbit.period(), index);
    ++index;
  }
  throw InputError("orbit not found in enumeration");
}

const PeriodicOrbit& find_orbit(const std::vector<PeriodicOrbit>& sorted_orbits, std::string_view id) {
  const OrbitId parsed = parse_orbit_id(id);
  std::size_t index = 0;
  for (const auto& o : sorted_orbits) {
    if (o.period() != parsed.period) continue;
    if (index == parsed.index) return o;
    ++index;
  }
  throw InputError("unknown orbit id '" + std::string(id) + "'");
}

}  // namespace anosov
