#include "tensorlab/minrank.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "tensorlab/errors.hpp"
#include "tensorlab/linalg.hpp"
#include "tensorlab/tensor.hpp"

namespace tensorlab {

template <ExactScalar T>
void MatrixSubspace<T>::validate() const {
  if (basis.empty()) throw std::invalid_argument("subspace: empty basis");
  std::vector<std::vector<T>> rows_;
  for (const auto& m : basis) {
    if (m.rows() != rows || m.cols() != cols)
      throw std::invalid_argument("subspace: basis matrix shape differs from the ambient " +
                                  std::to_string(rows) + "x" + std::to_string(cols));
    if (!(m.ring() == ring)) throw std::invalid_argument("subspace: basis rings differ");
    rows_.emplace_back(m.entries().begin(), m.entries().end());
  }
  if (rank_exact(stack_rows(rows_, rows * cols, ring)) != basis.size())
    throw std::invalid_argument("subspace: basis is linearly dependent");
}

template <ExactScalar T>
MatrixSubspace<T> make_subspace(std::vector<Matrix<T>> basis) {
  if (basis.empty()) throw std::invalid_argument("subspace: empty basis");
  MatrixSubspace<T> s{basis[0].rows(), basis[0].cols(), std::move(basis), {}};
  s.ring = s.basis[0].ring();
  s.validate();
  return s;
}

namespace {

template <ExactScalar T>
Matrix<T> combination(const MatrixSubspace<T>& s, const std::vector<T>& coeffs) {
  Matrix<T> m(s.rows, s.cols, s.ring);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (!is_zero(coeffs[k])) m = m + coeffs[k] * s.basis[k];
  return m;
}

}  // namespace

std::size_t min_rank_exact_fp(const MatrixSubspace<Fp>& s) {
  s.validate();
  const std::uint32_t p = s.ring.modulus();
  const std::size_t k = s.dimension();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total *= p;
    if (total > kMaxMinRankEnumeration)
      throw CapExceeded("min_rank_exact_fp: p^dim too large", total, kMaxMinRankEnumeration);
  }
  std::size_t best = std::min(s.rows, s.cols);
  // Coefficient vectors with leading 1 at position lead and free entries after.
  for (std::size_t lead = 0; lead < k; ++lead) {
    const std::size_t free = k - lead - 1;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < free; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<Fp> c(k, s.ring.zero());
      c[lead] = s.ring.one();
      std::uint64_t x = code;
      for (std::size_t i = lead + 1; i < k; ++i, x /= p) c[i] = s.ring.from_int(static_cast<std::int64_t>(x % p));
      best = std::min(best, rank_exact(combination(s, c)));
      if (best == 1) return best;
    }
  }
  return best;
}

MinRankSample min_rank_sample(const MatrixSubspace<Rational>& s, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("min_rank_sample: trials must be at least 1");
  s.validate();
  MinRankSample out;
  out.upper_bound = std::numeric_limits<std::size_t>::max();
  auto consider = [&](Matrix<Rational> m) {
    ++out.elements_tried;
    const std::size_t r = rank_exact(m);
    if (r == 0) throw std::logic_error("min_rank_sample: zero combination of an independent basis");
    if (r < out.upper_bound) {
      out.upper_bound = r;
      out.witness = std::move(m);
    }
  };
  const std::size_t k = s.dimension();
  for (const auto& b : s.basis) consider(b);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      consider(s.basis[i] + s.basis[j]);
      consider(s.basis[i] - s.basis[j]);
    }
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> dist(-10, 10);
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<Rational> c(k);
    bool nonzero = false;
    for (auto& x : c) {
      x = dist(gen);
      nonzero = nonzero || sgn(x) != 0;
    }
    if (!nonzero) continue;
    consider(combination(s, c));
  }
  return out;
}

template <Scalar T>
Matrix<T> braided_product(const Matrix<T>& a, const Matrix<T>& b) {
  if (!(a.ring() == b.ring())) throw std::invalid_argument("braided_product: ring mismatch");
  // a (x) b lives in (A1 (x) B1) (x) (A2 (x) B2); swap the middle factors.
  const DenseTensor<T> ta(Shape({a.rows(), a.cols()}), {a.entries().begin(), a.entries().end()}, a.ring());
  const DenseTensor<T> tb(Shape({b.rows(), b.cols()}), {b.entries().begin(), b.entries().end()}, b.ring());
  const std::vector<std::size_t> perm{0, 2, 1, 3};
  const auto t = braid(outer(ta, tb), perm);
  const auto back = braid(t, perm);
  if (!(back == outer(ta, tb))) throw std::logic_error("braided_product: braid is not an involution");
  return Matrix<T>(a.rows() * b.rows(), a.cols() * b.cols(), {t.data().begin(), t.data().end()}, a.ring());
}

template <ExactScalar T>
MatrixSubspace<T> tensor_subspace(const MatrixSubspace<T>& s1, const MatrixSubspace<T>& s2) {
  if (!(s1.ring == s2.ring)) throw std::invalid_argument("tensor_subspace: ring mismatch");
  s1.validate();
  s2.validate();
  std::vector<Matrix<T>> basis;
  for (const auto& a : s1.basis)
    for (const auto& b : s2.basis) basis.push_back(braided_product(a, b));
  return make_subspace(std::move(basis));
}

Matrix<Rational> gurvits_m() { return Matrix<Rational>(2, 2, {0, 1, -1, 0}); }

MatrixSubspace<Rational> gurvits_x() { return make_subspace<Rational>({gurvits_m(), Matrix<Rational>::identity(2)}); }

MatrixSubspace<Rational> gurvits_s(std::size_t n) {
  if (n < 1) throw std::invalid_argument("gurvits: n must be at least 1");
  return make_subspace<Rational>({kron(gurvits_m(), Matrix<Rational>::identity(n)), Matrix<Rational>::identity(2 * n)});
}

Matrix<Rational> gurvits_witness(std::size_t n) {
  const auto mn = kron(gurvits_m(), Matrix<Rational>::identity(n));
  return braided_product(mn, mn) - Matrix<Rational>::identity(4 * n * n);
}

GurvitsRecord gurvits_construction(std::size_t n) {
  if (n < 1) throw std::invalid_argument("gurvits: n must be at least 1");
  if (n > kMaxGurvitsN) throw CapExceeded("gurvits: n too large", n, kMaxGurvitsN);
  GurvitsRecord rec;
  rec.n = n;
  const auto s = gurvits_s(n);
  std::vector<std::pair<Rational, Rational>> points{{1, 0}};
  for (int t : {0, 1, -1, 2, -2, 3, -3}) points.emplace_back(t, 1);
  rec.minrank_x = 2 * n;
  for (const auto& [a, b] : points) {
    const std::size_t r = rank_exact(a * s.basis[0] + b * s.basis[1]);
    rec.samples.push_back({a, b, r});
    rec.minrank_x = std::min(rec.minrank_x, r);
  }
  const auto m = gurvits_m();
  const Rational tr = m(0, 0) + m(1, 1);
  rec.no_real_eigenvalues = tr * tr - 4 * determinant(m) < 0;
  if (!rec.no_real_eigenvalues) throw std::logic_error("gurvits: M has a real eigenvalue");

  const auto mn = kron(m, Matrix<Rational>::identity(n));
  const auto mm = braided_product(mn, mn);
  const auto id = Matrix<Rational>::identity(4 * n * n);
  rec.witness_rank_minus = rank_exact(mm - id);
  rec.witness_rank_plus = rank_exact(mm + id);
  rec.decrement = rec.minrank_x * rec.minrank_x - rec.witness_rank_minus;
  return rec;
}

Matrix<double> BipartiteVector::matrix() const {
  if (data.size() != dim_a * dim_b)
    throw std::invalid_argument("bipartite vector: expected " + std::to_string(dim_a * dim_b) + " entries");
  return Matrix<double>(dim_a, dim_b, data);
}

BipartiteVector as_bipartite(const Matrix<double>& m) {
  return {m.rows(), m.cols(), {m.entries().begin(), m.entries().end()}};
}

double entanglement_entropy(const BipartiteVector& v, LogBase base) {
  const auto sv = singular_values(v.matrix());
  double norm2 = 0.0;
  for (double s : sv) norm2 += s * s;
  if (norm2 == 0.0) throw std::invalid_argument("entanglement_entropy: zero vector");
  double h = 0.0;
  for (double s : sv) {
    const double p = s * s / norm2;
    if (p > 1e-20) h -= p * std::log(p);
  }
  if (base == LogBase::Two) h /= std::numbers::ln2;
  return std::max(h, 0.0);
}

FriedlandRecord friedland_check(std::size_t n, std::size_t samples, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("friedland_check: n must be at least 1");
  if (n > kMaxGurvitsN) throw CapExceeded("friedland_check: n too large", n, kMaxGurvitsN);
  FriedlandRecord rec;
  rec.n = n;
  const auto s = gurvits_s(n);
  const auto m0 = convert_matrix<double>(s.basis[0]);
  const auto m1 = convert_matrix<double>(s.basis[1]);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist;
  rec.sampled_min = std::numeric_limits<double>::infinity();
  auto consider = [&](double a, double b) {
    ++rec.samples;
    rec.sampled_min = std::min(rec.sampled_min, entanglement_entropy(as_bipartite(a * m0 + b * m1)));
  };
  consider(1.0, 0.0);
  consider(0.0, 1.0);
  for (std::size_t t = 0; t < samples; ++t) {
    const double a = dist(gen), b = dist(gen);
    if (a == 0.0 && b == 0.0) continue;
    consider(a, b);
  }
  rec.sum_of_mins = 2.0 * std::log(2.0 * static_cast<double>(n));
  rec.joint_min_upper = entanglement_entropy(as_bipartite(convert_matrix<double>(gurvits_witness(n))));
  rec.margin = rec.sum_of_mins - rec.joint_min_upper;
  rec.violated = rec.joint_min_upper < rec.sum_of_mins;
  return rec;
}

template struct MatrixSubspace<Rational>;
template struct MatrixSubspace<Fp>;
template MatrixSubspace<Rational> make_subspace(std::vector<Matrix<Rational>>);
template MatrixSubspace<Fp> make_subspace(std::vector<Matrix<Fp>>);
template MatrixSubspace<Rational> tensor_subspace(const MatrixSubspace<Rational>&, const MatrixSubspace<Rational>&);
template MatrixSubspace<Fp> tensor_subspace(const MatrixSubspace<Fp>&, const MatrixSubspace<Fp>&);
template Matrix<Rational> braided_product(const Matrix<Rational>&, const Matrix<Rational>&);
template Matrix<Fp> braided_product(const Matrix<Fp>&, const Matrix<Fp>&);
template Matrix<double> braided_product(const Matrix<double>&, const Matrix<double>&);

}  // namespace tensorlab
