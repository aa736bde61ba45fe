#include "anosov/conjugacy.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "anosov/errors.hpp"

namespace anosov {

namespace {

IntMat block_matrix(Letter letter, const BigInt& exponent) {
  IntMat m = IntMat::identity(2);
  if (letter == Letter::R) {
    m(0, 1) = exponent;
  } else {
    m(1, 0) = exponent;
  }
  return m;
}

IntMat block_inverse(const RLBlock& b) { return block_matrix(b.letter, -b.exponent); }

int compare_blocks(const RLBlock& lhs, const RLBlock& rhs) {
  if (lhs.letter != rhs.letter) return lhs.letter == Letter::R ? -1 : 1;
  if (lhs.exponent != rhs.exponent) return lhs.exponent < rhs.exponent ? -1 : 1;
  return 0;
}

// Merges equal neighbours (including the wrap-around) and rotates to the least rotation.
// When `conj` is given, keeps conj * A * conj^-1 equal to the product of the blocks.
std::vector<RLBlock> normalize_cyclic(std::vector<RLBlock> blocks, IntMat* conj) {
  std::vector<RLBlock> merged;
  for (auto& b : blocks) {
    if (b.exponent == 0) continue;
    if (!merged.empty() && merged.back().letter == b.letter) {
      merged.back().exponent += b.exponent;
    } else {
      merged.push_back(std::move(b));
    }
  }
  if (merged.size() > 1 && merged.front().letter == merged.back().letter) {
    RLBlock last = merged.back();
    merged.pop_back();
    // N = X * Y^e  ->  Y^e * N * Y^-e = Y^e * X
    if (conj) *conj = block_matrix(last.letter, last.exponent) * *conj;
    merged.front().exponent += last.exponent;
  }
  const std::size_t k = merged.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < k; ++r) {
    for (std::size_t i = 0; i < k; ++i) {
      const int c = compare_blocks(merged[(r + i) % k], merged[(best + i) % k]);
      if (c < 0) {
        best = r;
        break;
      }
      if (c > 0) break;
    }
  }
  if (conj) {
    // Moving the prefix Q = B_0 ... B_{best-1} to the end conjugates by Q^-1.
    for (std::size_t i = 0; i < best; ++i) *conj = block_inverse(merged[i]) * *conj;
  }
  std::rotate(merged.begin(), merged.begin() + static_cast<std::ptrdiff_t>(best), merged.end());
  return merged;
}

// floor((p + s*sqrt(disc)) / q) for non-square disc > 0, where root = isqrt(disc).
BigInt floor_quadratic(BigInt p, int s, BigInt q, const BigInt& root) {
  if (q < 0) {
    p = -p;
    s = -s;
    q = -q;
  }
  BigInt num = s > 0 ? BigInt(p + root) : BigInt(p - root - 1);
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), q.get_mpz_t());
  return out;
}

bool all_nonnegative(const IntMat& m) {
  for (const auto& e : m.entries())
    if (e < 0) return false;
  return true;
}

struct Reduction {
  IntMat positive;
  IntMat conjugator;  // conjugator * A * conjugator^-1 = positive
};

// Conjugates A until its attracting fixed point is positive and its repelling one negative,
// which for trace > 2 is exactly the condition for all entries to be nonnegative.
Reduction reduce_to_positive(const IntMat& a) {
  const IntMat s{{0, -1}, {1, 0}};
  const IntMat s_inv{{0, 1}, {-1, 0}};
  IntMat n = a;
  IntMat p = IntMat::identity(2);
  const BigInt tr = trace(a);
  const BigInt disc = tr * tr - 4;
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());

  auto translate = [&](const BigInt& k) {
    IntMat m = IntMat::identity(2);
    IntMat m_inv = IntMat::identity(2);
    m(0, 1) = -k;
    m_inv(0, 1) = k;
    n = m * n * m_inv;
    p = m * p;
  };
  auto invert = [&] {
    n = s * n * s_inv;
    p = s * p;
  };

  while (!all_nonnegative(n)) {
    const BigInt diff = n(0, 0) - n(1, 1);
    const BigInt denom = 2 * n(1, 0);
    const BigInt attracting = floor_quadratic(diff, +1, denom, root);
    const BigInt repelling = floor_quadratic(diff, -1, denom, root);
    if (attracting == repelling) {
      // Both fixed points in (k, k+1): shift into (0,1), then z -> -1/z spreads them apart.
      translate(attracting);
      invert();
      continue;
    }
    const bool attracting_above = attracting > repelling;
    translate(attracting_above ? attracting : repelling);
    if (!attracting_above) invert();
    if (!all_nonnegative(n)) throw std::logic_error("reduce_to_positive: reduction did not land in the positive cone");
  }
  return {std::move(n), std::move(p)};
}

// Factors a nonnegative SL(2,Z) matrix into R/L blocks, left to right.
std::vector<RLBlock> factor_positive(IntMat n) {
  std::vector<RLBlock> reversed;
  const IntMat id = IntMat::identity(2);
  while (!(n == id)) {
    const BigInt &a = n(0, 0), &b = n(0, 1), &c = n(1, 0), &d = n(1, 1);
    if (a >= b && c >= d) {
      // column 1 dominates: n = n' * L^k
      BigInt k = -1;
      for (int row = 0; row < 2; ++row) {
        const BigInt& top = n(static_cast<std::size_t>(row), 0);
        const BigInt& bot = n(static_cast<std::size_t>(row), 1);
        if (bot > 0) {
          BigInt q = top / bot;
          if (k < 0 || q < k) k = q;
        }
      }
      if (k <= 0) throw std::logic_error("factor_positive: no progress on L step");
      n(0, 0) -= k * n(0, 1);
      n(1, 0) -= k * n(1, 1);
      reversed.push_back({Letter::L, k});
    } else if (b >= a && d >= c) {
      BigInt k = -1;
      for (int row = 0; row < 2; ++row) {
        const BigInt& top = n(static_cast<std::size_t>(row), 1);
        const BigInt& bot = n(static_cast<std::size_t>(row), 0);
        if (bot > 0) {
          BigInt q = top / bot;
          if (k < 0 || q < k) k = q;
        }
      }
      if (k <= 0) throw std::logic_error("factor_positive: no progress on R step");
      n(0, 1) -= k * n(0, 0);
      n(1, 1) -= k * n(1, 0);
      reversed.push_back({Letter::R, k});
    } else {
      throw std::logic_error("factor_positive: no dominating column");
    }
  }
  std::reverse(reversed.begin(), reversed.end());
  return reversed;
}

std::optional<ConjugacyWitness> checked(const IntMat& a, const IntMat& b, ConjugacyWitness w) {
  if (!verify_witness(a, b, w)) throw std::logic_error("conjugacy witness failed exact verification");
  return w;
}

}  // namespace

IntMat letter_matrix(Letter letter) { return block_matrix(letter, BigInt(1)); }

RLWord RLWord::canonical(std::vector<RLBlock> blocks) {
  RLWord w;
  w.blocks_ = normalize_cyclic(std::move(blocks), nullptr);
  return w;
}

IntMat RLWord::product() const {
  IntMat m = IntMat::identity(2);
  for (const auto& b : blocks_) m = m * block_matrix(b.letter, b.exponent);
  return m;
}

BigInt RLWord::exponent_sum() const {
  BigInt s = 0;
  for (const auto& b : blocks_) s += b.exponent;
  return s;
}

std::string RLWord::to_string() const {
  std::string out;
  for (const auto& b : blocks_) {
    if (!out.empty()) out += " ";
    out += b.letter == Letter::R ? "R^" : "L^";
    out += b.exponent.get_str();
  }
  return out;
}

RLDecomposition rl_decompose_with_conjugator(const Hyperbolic2& a) {
  if (!a.is_positive()) {
    throw InputError("rl_decompose: not in positive hyperbolic SL(2,Z) class (need det = 1, trace >= 3)");
  }
  Reduction red = reduce_to_positive(a.matrix());
  IntMat conj = std::move(red.conjugator);
  std::vector<RLBlock> blocks = normalize_cyclic(factor_positive(red.positive), &conj);
  RLDecomposition out;
  out.word = RLWord::canonical(blocks);
  out.conjugator = std::move(conj);
  if (!(out.conjugator * a.matrix() == out.word.product() * out.conjugator)) {
    throw std::logic_error("rl_decompose: conjugator does not relate A to its word");
  }
  return out;
}

RLWord rl_decompose(const Hyperbolic2& a) { return rl_decompose_with_conjugator(a).word; }

RLWord inverse_class_word(const RLWord& w) {
  std::vector<RLBlock> blocks(w.blocks().rbegin(), w.blocks().rend());
  for (auto& b : blocks) b.letter = b.letter == Letter::R ? Letter::L : Letter::R;
  return RLWord::canonical(std::move(blocks));
}

RLWord reflected_class_word(const RLWord& w) {
  std::vector<RLBlock> blocks = w.blocks();
  for (auto& b : blocks) b.letter = b.letter == Letter::R ? Letter::L : Letter::R;
  return RLWord::canonical(std::move(blocks));
}

const char* group_name(Group g) { return g == Group::SL ? "SL" : "GL"; }

bool verify_witness(const IntMat& a, const IntMat& b, const ConjugacyWitness& w) {
  if (w.P.rows() != 2 || w.P.cols() != 2) return false;
  const BigInt det = determinant(w.P);
  const bool det_ok = w.group == Group::SL ? det == 1 : (det == 1 || det == -1);
  if (!det_ok) return false;
  if (!(w.P * a == b * w.P)) return false;
  // Conjugacy invariants, asserted on every accepted witness.
  return trace(a) == trace(b) && determinant(a) == determinant(b);
}

std::optional<ConjugacyWitness> sl2_conjugate(const Hyperbolic2& a, const Hyperbolic2& b) {
  a.require_positive("sl2_conjugate");
  b.require_positive("sl2_conjugate");
  if (a.trace() != b.trace()) return std::nullopt;
  const RLDecomposition da = rl_decompose_with_conjugator(a);
  const RLDecomposition db = rl_decompose_with_conjugator(b);
  if (!(da.word == db.word)) return std::nullopt;
  // Pa A Pa^-1 = W = Pb B Pb^-1, so P = Pb^-1 Pa satisfies P A = B P.
  IntMat p = inverse_unimodular_2x2(db.conjugator) * da.conjugator;
  return checked(a.matrix(), b.matrix(), ConjugacyWitness{std::move(p), Group::SL});
}

std::optional<ConjugacyWitness> gl2_conjugate(const Hyperbolic2& a, const Hyperbolic2& b) {
  if (auto w = sl2_conjugate(a, b)) {
    return checked(a.matrix(), b.matrix(), ConjugacyWitness{std::move(w->P), Group::GL});
  }
  const IntMat j{{1, 0}, {0, -1}};
  const Hyperbolic2 reflected = Hyperbolic2::from_matrix(j * b.matrix() * j);
  if (auto w = sl2_conjugate(a, reflected)) {
    // P' A = (J B J) P'  ->  (J P') A = B (J P')
    return checked(a.matrix(), b.matrix(), ConjugacyWitness{j * w->P, Group::GL});
  }
  return std::nullopt;
}

std::optional<ConjugacyWitness> is_reversible(const Hyperbolic2& a) {
  a.require_positive("is_reversible");
  return gl2_conjugate(a, a.inverse());
}

std::optional<ConjugacyWitness> brute_force_conjugator(const IntMat& a, const IntMat& b, long height, Group group) {
  if (height < 1) throw InputError("brute_force_conjugator: height must be >= 1");
  if (a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2) {
    throw InputError("brute_force_conjugator: expected 2x2 matrices");
  }
  constexpr long kFastLimit = 1L << 24;
  bool fast = height <= kFastLimit;
  for (const IntMat* m : {&a, &b})
    for (const auto& e : m->entries())
      if (abs(e) > kFastLimit) fast = false;

  if (fast) {
    std::int64_t A[2][2], B[2][2];
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < 2; ++k) {
        A[i][k] = a(i, k).get_si();
        B[i][k] = b(i, k).get_si();
      }
    for (std::int64_t p11 = -height; p11 <= height; ++p11)
      for (std::int64_t p12 = -height; p12 <= height; ++p12)
        for (std::int64_t p21 = -height; p21 <= height; ++p21)
          for (std::int64_t p22 = -height; p22 <= height; ++p22) {
            const std::int64_t det = p11 * p22 - p12 * p21;
            if (group == Group::SL ? det != 1 : (det != 1 && det != -1)) continue;
            const std::int64_t P[2][2] = {{p11, p12}, {p21, p22}};
            bool ok = true;
            for (int i = 0; i < 2 && ok; ++i)
              for (int j = 0; j < 2 && ok; ++j) {
                const std::int64_t lhs = P[i][0] * A[0][j] + P[i][1] * A[1][j];
                const std::int64_t rhs = B[i][0] * P[0][j] + B[i][1] * P[1][j];
                ok = lhs == rhs;
              }
            if (ok) {
              return checked(a, b, ConjugacyWitness{IntMat{{static_cast<long>(p11), static_cast<long>(p12)},
                                                           {static_cast<long>(p21), static_cast<long>(p22)}},
                                                    group});
            }
          }
    return std::nullopt;
  }

  for (long p11 = -height; p11 <= height; ++p11)
    for (long p12 = -height; p12 <= height; ++p12)
      for (long p21 = -height; p21 <= height; ++p21)
        for (long p22 = -height; p22 <= height; ++p22) {
          ConjugacyWitness w{IntMat{{p11, p12}, {p21, p22}}, group};
          if (verify_witness(a, b, w)) return w;
        }
  return std::nullopt;
}

}  // namespace anosov
