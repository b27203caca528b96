#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tensorlab/scalar.hpp"

namespace tensorlab {

/// Dense row-major matrix over one scalar ring.
template <Scalar T>
class Matrix {
 public:
  using value_type = T;
  using ring_type = ring_t<T>;

  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, ring_type ring = {})
      : rows_(rows), cols_(cols), ring_(ring), entries_(rows * cols, ring.zero()) {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries, ring_type ring = {})
      : rows_(rows), cols_(cols), ring_(ring), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) {
      throw std::invalid_argument("Matrix: expected " + std::to_string(rows * cols) +
                                  " entries, got " + std::to_string(entries_.size()));
    }
  }

  static Matrix identity(std::size_t n, ring_type ring = {}) {
    Matrix m(n, n, ring);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const ring_type& ring() const { return ring_; }

  T& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const T> entries() const { return entries_; }
  std::span<T> entries() { return entries_; }
  std::span<const T> row(std::size_t i) const {
    return std::span<const T>(entries_).subspan(i * cols_, cols_);
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_, ring_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix product: inner dimension mismatch");
    Matrix c(a.rows_, b.cols_, a.ring_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += T(aik * b(k, j));
      }
    return c;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    a.check_same_shape(b);
    for (std::size_t i = 0; i < a.entries_.size(); ++i) a.entries_[i] += b.entries_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    a.check_same_shape(b);
    for (std::size_t i = 0; i < a.entries_.size(); ++i) a.entries_[i] -= b.entries_[i];
    return a;
  }

  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& x : a.entries_) x *= s;
    return a;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  void check_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) {
      throw std::invalid_argument("Matrix: shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  ring_type ring_{};
  std::vector<T> entries_;
};

/// Entrywise image of a rational matrix in another ring.
template <Scalar T>
Matrix<T> convert_matrix(const Matrix<Rational>& m, const ring_t<T>& ring = {}) {
  std::vector<T> e;
  e.reserve(m.rows() * m.cols());
  for (const auto& x : m.entries()) e.push_back(convert_scalar<T>(x, ring));
  return Matrix<T>(m.rows(), m.cols(), std::move(e), ring);
}

}  // namespace tensorlab
