#include "tensorlab/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tensorlab {

namespace {

struct Elimination {
  std::size_t rank = 0;
  int sign = 1;
};

// Locates the first nonzero entry of the block rows >= k, cols >= k in
// row-major order and moves it to (k, k). Returns false if the block is zero.
template <class T, class IsZero>
bool full_pivot(std::vector<T>& a, std::size_t rows, std::size_t cols, std::size_t k, int& sign,
                IsZero zero) {
  for (std::size_t i = k; i < rows; ++i) {
    for (std::size_t j = k; j < cols; ++j) {
      if (zero(a[i * cols + j])) continue;
      if (i != k) {
        for (std::size_t c = 0; c < cols; ++c) std::swap(a[i * cols + c], a[k * cols + c]);
        sign = -sign;
      }
      if (j != k) {
        for (std::size_t r = 0; r < rows; ++r) std::swap(a[r * cols + j], a[r * cols + k]);
        sign = -sign;
      }
      return true;
    }
  }
  return false;
}

// Bareiss fraction-free elimination in place. After step k the pivot a[k][k]
// is the leading (k+1)-minor of the permuted matrix, so for a full-rank square
// input the final pivot is the determinant up to the permutation sign.
Elimination bareiss(std::vector<Integer>& a, std::size_t rows, std::size_t cols) {
  Elimination out;
  Integer prev = 1;
  Integer t;
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t k = 0; k < steps; ++k) {
    if (!full_pivot(a, rows, cols, k, out.sign, [](const Integer& x) { return x == 0; })) break;
    const Integer& pivot = a[k * cols + k];
    for (std::size_t i = k + 1; i < rows; ++i) {
      const Integer& aik = a[i * cols + k];
      for (std::size_t j = k + 1; j < cols; ++j) {
        Integer& aij = a[i * cols + j];
        aij *= pivot;
        t = aik * a[k * cols + j];
        aij -= t;
        mpz_divexact(aij.get_mpz_t(), aij.get_mpz_t(), prev.get_mpz_t());
      }
    }
    for (std::size_t i = k + 1; i < rows; ++i) a[i * cols + k] = 0;
    prev = pivot;
    ++out.rank;
  }
  return out;
}

// Each row scaled by the lcm of its denominators. Returns the product of the
// scale factors so determinants can be recovered.
Integer integerize(const Matrix<Rational>& m, std::vector<Integer>& out) {
  out.assign(m.rows() * m.cols(), Integer(0));
  Integer total = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (const auto& x : m.row(i)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& x = m(i, j);
      out[i * m.cols() + j] = x.get_num() * (l / x.get_den());
    }
    total *= l;
  }
  return total;
}

Elimination field_eliminate(std::vector<Fp>& a, std::size_t rows, std::size_t cols) {
  Elimination out;
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t k = 0; k < steps; ++k) {
    if (!full_pivot(a, rows, cols, k, out.sign, [](const Fp& x) { return x.is_zero(); })) break;
    const Fp inv = a[k * cols + k].inverse();
    for (std::size_t i = k + 1; i < rows; ++i) {
      if (a[i * cols + k].is_zero()) continue;
      const Fp f = a[i * cols + k] * inv;
      for (std::size_t j = k; j < cols; ++j) a[i * cols + j] -= f * a[k * cols + j];
    }
    ++out.rank;
  }
  return out;
}

Rational invert(const Rational& x) { return 1 / x; }
Fp invert(const Fp& x) { return x.inverse(); }

// Reduced row echelon form with partial pivoting by column order. Returns the
// pivot column of each nonzero row.
template <ExactScalar T>
std::vector<std::size_t> rref(std::vector<T>& a, std::size_t rows, std::size_t cols,
                              std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(a[p * cols + c])) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
    const T inv = invert(a[r * cols + c]);
    for (std::size_t j = c; j < cols; ++j) a[r * cols + j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(a[i * cols + c])) continue;
      const T f = a[i * cols + c];
      for (std::size_t j = c; j < cols; ++j) a[i * cols + j] -= T(f * a[r * cols + j]);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank_exact(const Matrix<Rational>& m) {
  std::vector<Integer> a;
  integerize(m, a);
  return bareiss(a, m.rows(), m.cols()).rank;
}

std::size_t rank_exact(const Matrix<Fp>& m) {
  std::vector<Fp> a(m.entries().begin(), m.entries().end());
  return field_eliminate(a, m.rows(), m.cols()).rank;
}

std::size_t rank_exact(const Matrix<double>&) {
  throw std::invalid_argument("rank_exact: float ring has no exact rank; use rank_numeric");
}

std::size_t rank_numeric(const Matrix<double>& m, double rel_tol) {
  if (!(rel_tol > 0)) throw std::invalid_argument("rank_numeric: rel_tol must be positive");
  const auto sv = singular_values(m);
  if (sv.empty() || sv.front() == 0.0) return 0;
  const double cut = rel_tol * sv.front();
  return static_cast<std::size_t>(
      std::count_if(sv.begin(), sv.end(), [cut](double s) { return s > cut; }));
}

std::vector<double> singular_values(const Matrix<double>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double x = m(i, j);
      if (!std::isfinite(x)) throw std::invalid_argument("singular_values: non-finite entry");
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x;
    }
  if (e.size() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
  const auto& s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

template <ExactScalar T>
std::vector<std::vector<T>> nullspace_exact(const Matrix<T>& m) {
  std::vector<T> a(m.entries().begin(), m.entries().end());
  const std::size_t cols = m.cols();
  const auto pivots = rref(a, m.rows(), cols, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(cols, m.ring().zero());
    v[free] = m.ring().one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r * cols + free];
    basis.push_back(std::move(v));
  }
  return basis;
}

template <ExactScalar T>
std::optional<std::vector<T>> solve_exact(const Matrix<T>& m, std::span<const T> b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_exact: rhs length mismatch");
  const std::size_t cols = m.cols() + 1;
  std::vector<T> a;
  a.reserve(m.rows() * cols);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (const auto& x : m.row(i)) a.push_back(x);
    a.push_back(b[i]);
  }
  const auto pivots = rref(a, m.rows(), cols, m.cols());
  for (std::size_t r = pivots.size(); r < m.rows(); ++r) {
    if (!is_zero(a[r * cols + m.cols()])) return std::nullopt;
  }
  std::vector<T> x(m.cols(), m.ring().zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r * cols + m.cols()];
  return x;
}

Rational determinant(const Matrix<Rational>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);
  std::vector<Integer> a;
  const Integer scale = integerize(m, a);
  const auto e = bareiss(a, n, n);
  if (e.rank < n) return Rational(0);
  Rational d(Integer(a[n * n - 1] * e.sign), scale);
  d.canonicalize();
  return d;
}

Fp determinant(const Matrix<Fp>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  std::vector<Fp> a(m.entries().begin(), m.entries().end());
  const auto e = field_eliminate(a, n, n);
  if (e.rank < n) return m.ring().zero();
  Fp d = m.ring().from_int(e.sign);
  for (std::size_t i = 0; i < n; ++i) d *= a[i * n + i];
  return d;
}

template std::vector<std::vector<Rational>> nullspace_exact(const Matrix<Rational>&);
template std::vector<std::vector<Fp>> nullspace_exact(const Matrix<Fp>&);
template std::optional<std::vector<Rational>> solve_exact(const Matrix<Rational>&,
                                                          std::span<const Rational>);
template std::optional<std::vector<Fp>> solve_exact(const Matrix<Fp>&, std::span<const Fp>);

}  // namespace tensorlab
