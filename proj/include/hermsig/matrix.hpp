// Small dense matrices over an exact (possibly noncommutative) coefficient ring.
//
// Entry types must provide +, -, *, unary -, ==, is_zero(), and inverse() for the
// routines that need division. All row/column eliminations multiply on one fixed
// side so the code stays valid over division rings.
#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hermsig/errors.hpp"

namespace hermsig {

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.front().size();
    m.data_.reserve(m.rows_ * m.cols_);
    for (const auto& row : rows) {
      if (row.size() != m.cols_) fail(errc::dimension_mismatch, "ragged matrix rows");
      for (const auto& v : row) m.data_.push_back(v);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail(errc::dimension_mismatch, "matrix add");
  Matrix<T> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail(errc::dimension_mismatch, "matrix sub");
  Matrix<T> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& a) {
  Matrix<T> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = -a(i, j);
  return out;
}

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) fail(errc::dimension_mismatch, "matrix mul");
  if (a.rows() == 0 || b.cols() == 0 || a.cols() == 0) return Matrix<T>();
  Matrix<T> out(a.rows(), b.cols(), a(0, 0) - a(0, 0));  // zero of the entry ring
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = out(i, j) + a(i, k) * b(k, j);
  return out;
}

template <typename T>
Matrix<T> scale_left(const T& c, const Matrix<T>& m) {
  Matrix<T> out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = c * m(i, j);
  return out;
}

template <typename T>
Matrix<T> scale_right(const Matrix<T>& m, const T& c) {
  Matrix<T> out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) * c;
  return out;
}

template <typename T, typename F>
auto map_entries(const Matrix<T>& m, F&& f) {
  using U = decltype(f(m(0, 0)));
  if (m.rows() == 0) return Matrix<U>();
  Matrix<U> out(m.rows(), m.cols(), f(m(0, 0)));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = f(m(i, j));
  return out;
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& m) {
  if (m.rows() == 0) return m;
  Matrix<T> out(m.cols(), m.rows(), m(0, 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

template <typename T>
Matrix<T> identity_matrix(std::size_t n, const T& one, const T& zero) {
  Matrix<T> out(n, n, zero);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = one;
  return out;
}

// I_k tensor B (block diagonal with k copies of B).
template <typename T>
Matrix<T> kron_identity(std::size_t k, const Matrix<T>& b, const T& zero) {
  Matrix<T> out(k * b.rows(), k * b.cols(), zero);
  for (std::size_t t = 0; t < k; ++t)
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(t * b.rows() + i, t * b.cols() + j) = b(i, j);
  return out;
}

template <typename T>
Matrix<T> block_diag(const Matrix<T>& a, const Matrix<T>& b, const T& zero) {
  Matrix<T> out(a.rows() + b.rows(), a.cols() + b.cols(), zero);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

template <typename T>
bool is_zero_matrix(const Matrix<T>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

// Gauss-Jordan with row operations only (left multiplications), so the result is a
// genuine two-sided inverse over any division ring.
template <typename T>
std::optional<Matrix<T>> try_inverse(const Matrix<T>& m, const T& zero, const T& one) {
  if (!m.square()) fail(errc::dimension_mismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix<T> a = m;
  Matrix<T> inv = identity_matrix(n, one, zero);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    a.swap_rows(col, pivot);
    inv.swap_rows(col, pivot);
    const T pinv = a(col, col).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) = pinv * a(col, j);
      inv(col, j) = pinv * inv(col, j);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col).is_zero()) continue;
      const T factor = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = a(i, j) - factor * a(col, j);
        inv(i, j) = inv(i, j) - factor * inv(col, j);
      }
    }
  }
  return inv;
}

template <typename T>
Matrix<T> inverse(const Matrix<T>& m, const T& zero, const T& one) {
  auto inv = try_inverse(m, zero, one);
  if (!inv) fail(errc::not_invertible, "singular matrix");
  return *inv;
}

}  // namespace hermsig
