#include "anosov/int_mat.hpp"

#include <stdexcept>
#include <utility>

namespace anosov {

IntMat::IntMat(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, BigInt(0)) {}

IntMat::IntMat(std::size_t rows, std::size_t cols, std::vector<BigInt> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("IntMat: entry count does not match shape");
  }
}

IntMat::IntMat(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("IntMat: ragged initializer");
    for (long v : row) entries_.emplace_back(v);
  }
}

IntMat IntMat::identity(std::size_t n) {
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMat IntMat::transposed() const {
  IntMat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

std::vector<BigInt> IntMat::apply(std::span<const BigInt> v) const {
  if (v.size() != cols_) throw std::invalid_argument("IntMat::apply: dimension mismatch");
  std::vector<BigInt> out(rows_, BigInt(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

std::vector<BigInt> IntMat::column(std::size_t c) const {
  std::vector<BigInt> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
  return out;
}

void IntMat::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMat::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMat::add_row_multiple(std::size_t dst, std::size_t src, const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void IntMat::add_col_multiple(std::size_t dst, std::size_t src, const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void IntMat::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMat::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

void IntMat::append_column(std::span<const BigInt> values) {
  if (values.size() != rows_) throw std::invalid_argument("IntMat::append_column: wrong length");
  std::vector<BigInt> next;
  next.reserve(rows_ * (cols_ + 1));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) next.push_back((*this)(r, c));
    next.push_back(values[r]);
  }
  ++cols_;
  entries_ = std::move(next);
}

bool IntMat::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && (*this)(r, c) != 0) return false;
  return true;
}

bool IntMat::is_zero() const {
  for (const auto& e : entries_)
    if (e != 0) return false;
  return true;
}

std::string IntMat::to_string() const {
  std::string out = "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) out += ",";
    out += "[";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out += ",";
      out += (*this)(r, c).get_str();
    }
    out += "]";
  }
  out += "]";
  return out;
}

IntMat operator*(const IntMat& lhs, const IntMat& rhs) {
  if (lhs.cols_ != rhs.rows_) throw std::invalid_argument("IntMat: product shape mismatch");
  IntMat out(lhs.rows_, rhs.cols_);
  for (std::size_t i = 0; i < lhs.rows_; ++i)
    for (std::size_t k = 0; k < lhs.cols_; ++k) {
      const BigInt& a = lhs(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

IntMat operator+(const IntMat& lhs, const IntMat& rhs) {
  if (lhs.rows_ != rhs.rows_ || lhs.cols_ != rhs.cols_)
    throw std::invalid_argument("IntMat: sum shape mismatch");
  IntMat out = lhs;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] += rhs.entries_[i];
  return out;
}

IntMat operator-(const IntMat& lhs, const IntMat& rhs) {
  if (lhs.rows_ != rhs.rows_ || lhs.cols_ != rhs.cols_)
    throw std::invalid_argument("IntMat: difference shape mismatch");
  IntMat out = lhs;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] -= rhs.entries_[i];
  return out;
}

IntMat operator-(const IntMat& m) {
  IntMat out = m;
  for (auto& e : out.entries_) e = -e;
  return out;
}

bool operator==(const IntMat& lhs, const IntMat& rhs) {
  return lhs.rows_ == rhs.rows_ && lhs.cols_ == rhs.cols_ && lhs.entries_ == rhs.entries_;
}

BigInt determinant(const IntMat& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMat a = m;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && a(swap_with, k) == 0) ++swap_with;
      if (swap_with == n) return 0;
      a.swap_rows(k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = num;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

BigInt trace(const IntMat& m) {
  if (!m.is_square()) throw std::invalid_argument("trace: matrix is not square");
  BigInt t = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

IntMat mat_pow(const IntMat& a, unsigned long n) {
  if (!a.is_square()) throw std::invalid_argument("mat_pow: matrix is not square");
  IntMat result = IntMat::identity(a.rows());
  IntMat base = a;
  while (n > 0) {
    if (n & 1UL) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

IntMat inverse_unimodular_2x2(const IntMat& m) {
  if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("inverse: expected 2x2");
  const BigInt det = determinant(m);
  if (det != 1 && det != -1) throw std::invalid_argument("inverse: matrix is not unimodular");
  IntMat inv(2, 2);
  inv(0, 0) = m(1, 1) * det;
  inv(0, 1) = -m(0, 1) * det;
  inv(1, 0) = -m(1, 0) * det;
  inv(1, 1) = m(0, 0) * det;
  return inv;
}

std::string to_decimal(const BigInt& v) { return v.get_str(); }

}  // namespace anosov
