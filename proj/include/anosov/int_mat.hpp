#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace anosov {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
class IntMat {
 public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols);
  IntMat(std::size_t rows, std::size_t cols, std::vector<BigInt> entries);
  IntMat(std::initializer_list<std::initializer_list<long>> rows);

  static IntMat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  std::span<const BigInt> entries() const { return entries_; }

  IntMat transposed() const;
  std::vector<BigInt> apply(std::span<const BigInt> v) const;
  std::vector<BigInt> column(std::size_t c) const;

  // Elementary operations; the normal-form routines mirror these onto U and V.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& factor);
  void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  /// Appends a column; `values` must have rows() entries. Works on an empty 0-column matrix.
  void append_column(std::span<const BigInt> values);

  bool is_diagonal() const;
  bool is_zero() const;

  /// `[[a,b],[c,d]]` notation.
  std::string to_string() const;

  friend IntMat operator*(const IntMat& lhs, const IntMat& rhs);
  friend IntMat operator+(const IntMat& lhs, const IntMat& rhs);
  friend IntMat operator-(const IntMat& lhs, const IntMat& rhs);
  friend IntMat operator-(const IntMat& m);
  friend bool operator==(const IntMat& lhs, const IntMat& rhs);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> entries_;
};

/// Exact determinant (fraction-free Bareiss elimination).
BigInt determinant(const IntMat& m);

BigInt trace(const IntMat& m);

/// Exact n-th power by repeated squaring; n = 0 gives the identity.
IntMat mat_pow(const IntMat& a, unsigned long n);

/// Inverse of a 2x2 matrix with determinant +1 or -1.
IntMat inverse_unimodular_2x2(const IntMat& m);

/// Decimal rendering of a big integer.
std::string to_decimal(const BigInt& v);

/// num/den in lowest terms (the two-argument mpq constructor does not reduce).
inline BigRational make_rational(const BigInt& num, const BigInt& den) {
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace anosov
