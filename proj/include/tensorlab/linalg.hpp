#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tensorlab/matrix.hpp"

namespace tensorlab {

inline constexpr double kDefaultRelTol = 1e-8;

/// Exact rank. Rationals are cleared to integers row by row and reduced with
/// Bareiss fraction-free elimination; prime fields use plain elimination.
/// Both pivot on the first nonzero entry of the active block in row-major order.
std::size_t rank_exact(const Matrix<Rational>& m);
std::size_t rank_exact(const Matrix<Fp>& m);
/// Always throws std::invalid_argument: floats have no exact rank.
std::size_t rank_exact(const Matrix<double>& m);

/// Number of singular values above rel_tol * sigma_max. Zero matrix -> 0.
std::size_t rank_numeric(const Matrix<double>& m, double rel_tol = kDefaultRelTol);

/// Basis of the right kernel; every vector v satisfies m * v == 0 exactly.
/// Vectors come from the reduced row echelon form, one per free column, with
/// a 1 in that free column.
template <ExactScalar T>
std::vector<std::vector<T>> nullspace_exact(const Matrix<T>& m);

/// Some solution of m * x = b, or nullopt if the system is inconsistent.
template <ExactScalar T>
std::optional<std::vector<T>> solve_exact(const Matrix<T>& m, std::span<const T> b);

Rational determinant(const Matrix<Rational>& m);
Fp determinant(const Matrix<Fp>& m);

/// Kronecker product; row blocks are indexed by rows of a.
template <Scalar T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  if (!(a.ring() == b.ring())) throw std::invalid_argument("kron: ring mismatch");
  Matrix<T> k(a.rows() * b.rows(), a.cols() * b.cols(), a.ring());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T& aij = a(i, j);
      if (is_zero(aij)) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = T(aij * b(p, q));
    }
  return k;
}

/// Singular values in descending order, min(rows, cols) of them.
std::vector<double> singular_values(const Matrix<double>& m);

/// Matrix whose rows are the given vectors (all the same length).
template <Scalar T>
Matrix<T> stack_rows(const std::vector<std::vector<T>>& rows, std::size_t cols,
                     const ring_t<T>& ring = {}) {
  std::vector<T> e;
  e.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("stack_rows: ragged input");
    e.insert(e.end(), r.begin(), r.end());
  }
  return Matrix<T>(rows.size(), cols, std::move(e), ring);
}

}  // namespace tensorlab
