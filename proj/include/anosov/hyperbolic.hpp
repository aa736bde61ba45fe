#pragma once

#include <string>
#include <string_view>

#include "anosov/int_mat.hpp"

namespace anosov {

/// A 2x2 integer matrix with det = +-1 and |trace| > 2.
///
/// Flow-level code additionally needs det = +1 and trace >= 3; see require_positive().
class Hyperbolic2 {
 public:
  /// Throws InputError naming the violated invariant (shape, det, or trace).
  static Hyperbolic2 from_matrix(IntMat m);
  /// Parses "a,b;c,d" (spaces allowed, integers only).
  static Hyperbolic2 parse(std::string_view text);

  const IntMat& matrix() const { return m_; }
  const BigInt& det() const { return det_; }
  const BigInt& trace() const { return trace_; }

  bool is_positive() const { return det_ == 1 && trace_ >= 3; }
  /// Throws InputError unless det = 1 and trace >= 3.
  void require_positive(std::string_view context) const;

  Hyperbolic2 inverse() const;

  /// "a,b;c,d", the CLI syntax.
  std::string to_string() const;

  friend bool operator==(const Hyperbolic2& lhs, const Hyperbolic2& rhs) { return lhs.m_ == rhs.m_; }

 private:
  Hyperbolic2(IntMat m, BigInt det, BigInt trace);

  IntMat m_;
  BigInt det_;
  BigInt trace_;
};

/// Parses "a,b;c,d" into a 2x2 matrix without checking hyperbolicity.
IntMat parse_matrix_2x2(std::string_view text);

}  // namespace anosov
