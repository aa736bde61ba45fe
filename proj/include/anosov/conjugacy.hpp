#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anosov/hyperbolic.hpp"
#include "anosov/int_mat.hpp"

namespace anosov {

enum class Letter { R, L };

/// R = [[1,1],[0,1]], L = [[1,0],[1,1]].
IntMat letter_matrix(Letter letter);

struct RLBlock {
  Letter letter;
  BigInt exponent;

  friend bool operator==(const RLBlock&, const RLBlock&) = default;
};

/// Cyclic word in R and L with alternating blocks, kept in its canonical rotation
/// (lexicographically least block sequence, R before L, smaller exponent first).
class RLWord {
 public:
  /// Merges adjacent equal letters cyclically and rotates to canonical form.
  static RLWord canonical(std::vector<RLBlock> blocks);

  const std::vector<RLBlock>& blocks() const { return blocks_; }
  IntMat product() const;
  BigInt exponent_sum() const;
  /// "R^2 L^1"
  std::string to_string() const;

  friend bool operator==(const RLWord&, const RLWord&) = default;

 private:
  std::vector<RLBlock> blocks_;
};

/// Canonical word plus the conjugator relating it to the input: P * A * P^-1 = word.product().
struct RLDecomposition {
  RLWord word;
  IntMat conjugator;
};

/// Requires det A = 1 and trace A >= 3; throws InputError otherwise.
RLDecomposition rl_decompose_with_conjugator(const Hyperbolic2& a);
RLWord rl_decompose(const Hyperbolic2& a);

/// Word of the SL(2,Z) class of A^-1, derived from the word of A: transpose reverses the
/// blocks and swaps letters, and A^-1 is SL-conjugate to A^T.
RLWord inverse_class_word(const RLWord& w);
/// Word of the class of K A K with K = [[0,1],[1,0]]: letters swap.
RLWord reflected_class_word(const RLWord& w);

enum class Group { SL, GL };
const char* group_name(Group g);

/// P with P * A = B * P; det P = 1 for SL, +-1 for GL.
struct ConjugacyWitness {
  IntMat P;
  Group group;
};

/// True iff P * A == B * P and det P is admissible for the group tag.
bool verify_witness(const IntMat& a, const IntMat& b, const ConjugacyWitness& w);

std::optional<ConjugacyWitness> sl2_conjugate(const Hyperbolic2& a, const Hyperbolic2& b);
/// SL test against B and against J B J with J = [[1,0],[0,-1]].
std::optional<ConjugacyWitness> gl2_conjugate(const Hyperbolic2& a, const Hyperbolic2& b);
/// gl2_conjugate(A, A^-1).
std::optional<ConjugacyWitness> is_reversible(const Hyperbolic2& a);

/// Exhaustive search over |entries| <= height in lexicographic order; the first hit is returned.
std::optional<ConjugacyWitness> brute_force_conjugator(const IntMat& a, const IntMat& b, long height, Group group);

}  // namespace anosov
