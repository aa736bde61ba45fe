#pragma once

// Independent reference computations used by the tests. None of these call the library's
// Smith form, word reduction or arc machinery.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "anosov/int_mat.hpp"
#include "anosov/torus.hpp"

namespace oracle {

using anosov::BigInt;
using anosov::IntMat;
using anosov::TorusPoint;

inline BigInt gcd_all(const IntMat& m) {
  BigInt g = 0;
  for (const auto& e : m.entries()) g = gcd(g, e);
  return g;
}

/// Invariant factors of a nonsingular 2x2 matrix: d1 = gcd of entries, d1 d2 = |det|.
inline std::vector<BigInt> invariant_factors_2x2(const IntMat& m) {
  const BigInt det = abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
  const BigInt d1 = gcd_all(m);
  std::vector<BigInt> out;
  if (d1 > 1) out.push_back(d1);
  if (det / d1 > 1) out.push_back(det / d1);
  return out;
}

/// Every x in (1/N) Z^2 / Z^2 with A^n x = x, where N = |det(A^n - I)|.
inline std::vector<TorusPoint> fixed_points_by_denominator(const IntMat& a, unsigned long n) {
  const IntMat an = anosov::mat_pow(a, n);
  const BigInt big_n = abs(anosov::determinant(an - IntMat::identity(2)));
  const long q = big_n.get_si();
  std::vector<TorusPoint> out;
  for (long i = 0; i < q; ++i)
    for (long j = 0; j < q; ++j) {
      const BigInt x = an(0, 0) * i + an(0, 1) * j - i;
      const BigInt y = an(1, 0) * i + an(1, 1) * j - j;
      if (x % q == 0 && y % q == 0) out.push_back(TorusPoint::make(i, j, q));
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Random SL(2,Z) matrices with entries in [-bound, bound] and trace >= min_trace.
inline std::vector<IntMat> random_positive_matrices(std::size_t count, long bound, long min_trace, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> u(-bound, bound);
  std::vector<IntMat> out;
  while (out.size() < count) {
    IntMat m{{u(rng), u(rng)}, {u(rng), u(rng)}};
    if (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) != 1) continue;
    if (m(0, 0) + m(1, 1) < min_trace) continue;
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace oracle
