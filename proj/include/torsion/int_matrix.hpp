// Dense integer matrices over Int.
//
// Row-major storage.  Zero-dimensional matrices (0 x n, n x 0) are legal and
// arise naturally as lattice bases of rank 0; every routine must tolerate
// them.

#ifndef TORSION_INT_MATRIX_HPP
#define TORSION_INT_MATRIX_HPP

#include "torsion/bigint.hpp"
#include "torsion/error.hpp"

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace torsion {

class IntMatrix {
public:
  IntMatrix() : rows_(0), cols_(0) {}

  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows)
      : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ValidationError("ragged matrix literal");
      for (const auto& x : r) a_.push_back(x);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<Vec>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    return from_rows(rows, c);
  }

  // Explicit column count keeps the shape meaningful for empty row lists.
  static IntMatrix from_rows(const std::vector<Vec>& rows, std::size_t c) {
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw ValidationError("ragged row list");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw ValidationError("matrix product shape mismatch");
    IntMatrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Int& x = (*this)(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += x * o(k, j);
      }
    return p;
  }

  IntMatrix operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw ValidationError("matrix sum shape mismatch");
    IntMatrix s(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] = a_[i] + o.a_[i];
    return s;
  }

  IntMatrix operator-() const {
    IntMatrix s(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] = -a_[i];
    return s;
  }

  Vec apply(const Vec& v) const {
    if (v.size() != cols_) throw ValidationError("matrix-vector shape mismatch");
    Vec r(rows_, Int(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  Vec row(std::size_t i) const {
    Vec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }

  Vec col(std::size_t j) const {
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k)
      std::swap((*this)(i, k), (*this)(j, k));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k)
      std::swap((*this)(k, i), (*this)(k, j));
  }

  // row i -= q * row j
  void row_axpy(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) -= q * (*this)(j, k);
  }

  // col i -= q * col j
  void col_axpy(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) -= q * (*this)(k, j);
  }

  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
  }

  void negate_col(std::size_t j) {
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, j) = -(*this)(k, j);
  }

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) os << "; ";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) os << ' ';
        os << (*this)(i, j);
      }
    }
    os << ']';
    return os.str();
  }

private:
  std::size_t rows_, cols_;
  std::vector<Int> a_;
};

// Fraction-free determinant.  Exact over Int; used to certify that transform
// matrices are unimodular.
inline Int bareiss_det(IntMatrix m) {
  if (m.rows() != m.cols()) throw ValidationError("determinant of non-square");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = num / prev;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  Int d = bareiss_det(m);
  return d == 1 || d == -1;
}

} // namespace torsion

#endif
