#pragma once

#include <span>
#include <string>
#include <vector>

#include "anosov/int_mat.hpp"

namespace anosov {

/// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ... and zeros last.
struct SNFResult {
  IntMat U;
  IntMat D;
  IntMat V;

  /// Diagonal of D (length min(rows, cols)).
  std::vector<BigInt> diagonal() const;
  std::size_t rank() const;
};

SNFResult snf(const IntMat& m);

/// Finitely generated abelian group Z^free_rank + sum Z/d_i, with d_i >= 2 and d_i | d_{i+1}.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<BigInt> invariant_factors;

  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  bool is_finite() const { return free_rank == 0; }
  /// Product of invariant factors (1 for the trivial torsion part).
  BigInt torsion_order() const;
  /// "0", "Z", "Z^2 + Z/2 + Z/6", ...
  std::string to_string() const;

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// Z^rows / column span of m.
AbelianGroup cokernel(const IntMat& m);

/// Direct sum of two groups, re-normalized to invariant-factor form.
AbelianGroup direct_sum(const AbelianGroup& lhs, const AbelianGroup& rhs);

/// Reduces vectors of Z^rows to canonical coordinates in Z^rows / span(relations).
///
/// Coordinates are the nontrivial torsion residues (in [0, d_i)) followed by the free
/// coordinates, all taken in the Smith basis of the relation matrix.
class CokernelMap {
 public:
  explicit CokernelMap(const IntMat& relations);

  const AbelianGroup& group() const { return group_; }
  std::size_t ambient_rank() const { return U_.rows(); }
  std::vector<BigInt> reduce(std::span<const BigInt> v) const;
  bool is_zero(std::span<const BigInt> v) const;

 private:
  IntMat U_;
  std::vector<BigInt> diag_;  // one entry per ambient coordinate; 0 marks a free direction
  AbelianGroup group_;
};

}  // namespace anosov
