#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <utility>
#include <vector>

#include "torus1p/errors.hpp"

namespace torus1p {

/// Exact scalar type. All invariants in this library are integers; Smith
/// reduction intermediates overflow 64 bits even for small inputs, so the
/// whole integer layer runs on arbitrary precision.
using Int = boost::multiprecision::cpp_int;
using IntVec = std::vector<Int>;

/// Dense row-major matrix over Int. Empty shapes (0 rows or 0 columns) are
/// legal and behave as the obvious degenerate cases.
class IntMatrix {
public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_)
        fail(errc::dimension_mismatch, "ragged initializer for IntMatrix");
      for (long long v : r) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  IntVec column(std::size_t j) const {
    IntVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  IntVec row(std::size_t i) const {
    IntVec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }

  // row a += f * row b
  void add_row(std::size_t a, std::size_t b, const Int& f) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) += f * (*this)(b, j);
  }

  // col a += f * col b
  void add_col(std::size_t a, std::size_t b, const Int& f) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) += f * (*this)(i, b);
  }

  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }

  bool is_zero() const {
    for (const Int& v : data_)
      if (v != 0) return false;
    return true;
  }

private:
  std::size_t rows_, cols_;
  std::vector<Int> data_;
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows())
    fail(errc::dimension_mismatch, "matrix product shape mismatch");
  IntMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Int& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

inline IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(errc::dimension_mismatch, "matrix sum shape mismatch");
  IntMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

inline IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(errc::dimension_mismatch, "matrix difference shape mismatch");
  IntMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

inline IntVec operator*(const IntMatrix& m, const IntVec& v) {
  if (m.cols() != v.size())
    fail(errc::dimension_mismatch, "matrix-vector shape mismatch");
  IntVec r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

inline IntVec operator+(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size())
    fail(errc::dimension_mismatch, "vector sum length mismatch");
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IntVec operator-(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size())
    fail(errc::dimension_mismatch, "vector difference length mismatch");
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline bool is_zero(const IntVec& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

inline Int gcd_of(const IntVec& v) {
  Int g = 0;
  for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
  return g;
}

/// [m | extra] as one matrix; extra must have m.rows() entries.
inline IntMatrix hcat(const IntMatrix& m, const IntVec& extra) {
  if (extra.size() != m.rows())
    fail(errc::dimension_mismatch, "hcat column length mismatch");
  IntMatrix r(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    r(i, m.cols()) = extra[i];
  }
  return r;
}

inline IntMatrix delete_column(const IntMatrix& m, std::size_t col) {
  IntMatrix r(m.rows(), m.cols() - 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t out = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j == col) continue;
      r(i, out++) = m(i, j);
    }
  }
  return r;
}

/// Exact determinant by fraction-free (Bareiss) elimination. The 0x0 matrix
/// has determinant 1.
inline Int exact_determinant(const IntMatrix& m) {
  if (!m.square()) fail(errc::non_square, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      a.swap_rows(k, piv);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        a(i, j) = num / prev; // exact by Bareiss identity
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
  }
  return os << "]";
}

} // namespace torus1p
