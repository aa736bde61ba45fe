#include "anosov/census_stats.hpp"

#include <algorithm>

#include "anosov/errors.hpp"
#include "anosov/geometry.hpp"

namespace anosov {

namespace {

BigRational pow2(long e) {
  BigRational out = 1;
  if (e >= 0) {
    mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return out;
}

// Rounds outward to multiples of 2^-bits to keep the operands small.
Interval widen(const Interval& a, unsigned bits) {
  const BigRational scale = pow2(static_cast<long>(bits));
  const BigInt lo = floor_of(a.lo * scale);
  const BigInt hi = -floor_of(-a.hi * scale);
  return {BigRational(lo) / scale, BigRational(hi) / scale};
}

// 2 atanh(u) for 0 <= u < 1/2, by the odd power series with a geometric tail bound.
Interval two_atanh(const BigRational& u, unsigned bits) {
  if (u == 0) return Interval::point(0);
  const BigRational u2 = u * u;
  const BigRational eps = pow2(-static_cast<long>(bits) - 4);
  BigRational term = u;  // u^(2k+1)
  BigRational sum = 0;
  for (unsigned long k = 0;; ++k) {
    sum += term / (2 * k + 1);
    term *= u2;
    // Remaining terms are below term / ((2k + 3)(1 - u^2)).
    const BigRational tail = term / (BigRational(2 * k + 3) * (1 - u2));
    if (tail < eps) return widen(Interval{2 * sum, 2 * (sum + tail)}, bits + 8);
  }
}

long floor_log2(const BigRational& x) {
  long e = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) - static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
  while (pow2(e) > x) --e;
  while (pow2(e + 1) <= x) ++e;
  return e;
}

}  // namespace

double Interval::midpoint() const { return BigRational((lo + hi) / 2).get_d(); }

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  const BigRational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains(0)) throw std::domain_error("interval division by an interval containing zero");
  return a * Interval{1 / b.hi, 1 / b.lo};
}

Interval sqrt_interval(const BigRational& x, unsigned bits) {
  if (x < 0) throw std::domain_error("sqrt_interval: negative argument");
  // sqrt(n/d) = sqrt(n d 4^bits) / (d 2^bits)
  BigInt scaled = x.get_num() * x.get_den();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * bits);
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  const BigRational denom = BigRational(x.get_den()) * pow2(static_cast<long>(bits));
  const bool exact = root * root == scaled;
  return {BigRational(root) / denom, BigRational(exact ? root : BigInt(root + 1)) / denom};
}

Interval log_interval(const BigRational& x, unsigned bits) {
  if (x <= 0) throw std::domain_error("log_interval: argument must be positive");
  // x = 2^e r with r in [1, 2): log x = e log 2 + 2 atanh((r - 1) / (r + 1)).
  const long e = floor_log2(x);
  const BigRational r = x / pow2(e);
  const Interval log_r = two_atanh((r - 1) / (r + 1), bits);
  if (e == 0) return log_r;
  const Interval log2 = two_atanh(BigRational(1, 3), bits + 64);
  return widen(Interval::point(BigRational(e)) * log2 + log_r, bits);
}

void PropBParams::validate() const {
  if (c0 <= 0) throw InputError("PropBParams: C0 must be positive");
  if (t0 == 0) throw InputError("PropBParams: t0 must be positive");
  if (kappa3 <= 0) throw InputError("PropBParams: kappa3 must be positive");
}

Interval fh_bound(const PropBParams& params, std::size_t t) {
  params.validate();
  if (t <= params.t0) throw InputError("fh_bound: t must exceed t0");
  const BigRational tq(static_cast<unsigned long>(t));
  const Interval c1 = Interval::point(params.c0) * sqrt_interval(1 / params.kappa3);
  return c1 * sqrt_interval(tq) * log_interval(tq);
}

std::vector<RatioPoint> density_ratio(const OrbitCensus& census, const PropBParams& params) {
  params.validate();
  if (census.max_period <= params.t0) throw InputError("density_ratio: census must extend past t0");
  std::vector<RatioPoint> out;
  for (std::size_t t = params.t0 + 1; t <= census.max_period; ++t) {
    const Interval orbits = Interval::point(BigRational(census.orbits_up_to(t)));
    out.push_back(RatioPoint{t, fh_bound(params, t) / orbits});
  }
  return out;
}

BigInt pair_count(const OrbitCensus& census, std::size_t t) {
  const BigInt& n = census.orbits_up_to(t);
  return n * n;
}

GrowthReport growth_rate(const OrbitCensus& census) {
  if (census.max_period < 5) throw InputError("growth_rate: census must reach period 5");
  const std::size_t t = census.max_period;
  GrowthReport g;
  g.horizon = t;
  g.orbits = census.orbits_up_to(t);
  g.estimate = log_interval(BigRational(g.orbits)) / Interval::point(BigRational(static_cast<unsigned long>(t)));
  const BigInt tr = trace(census.matrix);
  const Interval lambda = (Interval::point(BigRational(tr)) + sqrt_interval(BigRational(tr * tr - 4))) / Interval::point(2);
  // log is increasing, so the endpoints of lambda bound log(lambda).
  g.target = Interval{log_interval(lambda.lo).lo, log_interval(lambda.hi).hi};
  const Interval diff = g.estimate - g.target;
  Interval abs_diff = diff;
  if (diff.hi <= 0) {
    abs_diff = {-diff.hi, -diff.lo};
  } else if (diff.lo < 0) {
    abs_diff = {0, std::max<BigRational>(-diff.lo, diff.hi)};
  }
  g.relative_error = abs_diff / g.target;
  return g;
}

bool period_comparison_identity(const SurgeryPath& path, const PeriodicOrbit& orbit) {
  const OrbitToken token = orbit_transport(path, orbit);
  if (token.is_core()) throw InputError("period_comparison_identity: orbit lies in the surgery locus");
  return token.pairing && *token.pairing == per_z(orbit);
}

std::string to_fixed(const BigRational& q, int digits) {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const BigInt v = floor_of(q * BigRational(scale));
  const bool negative = v < 0;
  BigInt mag = abs(v);
  std::string s = mag.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) - s.size() + 1, '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  return negative ? "-" + s : s;
}

}  // namespace anosov
