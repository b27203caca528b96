#include <doctest.h>

#include <cmath>

#include <Eigen/QR>

#include "oracles.hpp"
#include "tensorlab/errors.hpp"
#include "tensorlab/linalg.hpp"
#include "tensorlab/minrank.hpp"

using namespace tensorlab;

namespace {

Matrix<Fp> to_fp_matrix(const Matrix<Rational>& m, const PrimeRing& r) { return convert_matrix<Fp>(m, r); }

MatrixSubspace<Fp> gurvits_x_mod(std::uint32_t p) {
  const PrimeRing r(p);
  return make_subspace<Fp>({to_fp_matrix(gurvits_m(), r), to_fp_matrix(Matrix<Rational>::identity(2), r)});
}

// a M + b I = [[b, a], [-a, b]] is singular iff a^2 + b^2 = 0 mod p.
std::size_t gurvits_x_oracle(std::uint32_t p) {
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b = 0; b < p; ++b)
      if ((a || b) && (a * a + b * b) % p == 0) return 1;
  return 2;
}

Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> dist;
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = dist(gen);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ();
}

Matrix<double> from_eigen(const Eigen::MatrixXd& e) {
  Matrix<double> m(e.rows(), e.cols());
  for (int i = 0; i < e.rows(); ++i)
    for (int j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

}  // namespace

TEST_CASE("exact minimum rank over F_p") {
  const PrimeRing f3(3);
  CHECK(min_rank_exact_fp(make_subspace<Fp>({Matrix<Fp>::identity(2, f3)})) == 2);
  Matrix<Fp> e11(2, 2, f3);
  e11(0, 0) = f3.one();
  CHECK(min_rank_exact_fp(make_subspace<Fp>({e11})) == 1);

  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) CHECK(min_rank_exact_fp(gurvits_x_mod(p)) == gurvits_x_oracle(p));
  CHECK(min_rank_exact_fp(gurvits_x_mod(3)) == 2);
  CHECK(min_rank_exact_fp(gurvits_x_mod(7)) == 2);
  // -1 is a square mod 5, so 2M + I is singular there.
  CHECK(min_rank_exact_fp(gurvits_x_mod(5)) == 1);

  std::mt19937_64 gen(8);
  const PrimeRing f5(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Matrix<Fp>> basis;
    for (int k = 0; k < 3; ++k) basis.push_back(to_fp_matrix(oracle::random_matrix(3, 3, gen), f5));
    MatrixSubspace<Fp> s{3, 3, basis, f5};
    try {
      s.validate();
    } catch (const std::invalid_argument&) {
      continue;
    }
    const std::size_t m = min_rank_exact_fp(s);
    CHECK(m >= 1);
    for (const auto& b : basis) CHECK(m <= rank_exact(b));
  }
  CHECK_THROWS_AS(min_rank_exact_fp(make_subspace<Fp>(std::vector<Matrix<Fp>>(
                      9, Matrix<Fp>::identity(2, PrimeRing(5))))),
                  std::invalid_argument);
}

TEST_CASE("exact minimum rank refuses large enumerations") {
  const PrimeRing f11(11);
  std::vector<Matrix<Fp>> basis;
  for (std::size_t k = 0; k < 6; ++k) {
    Matrix<Fp> m(3, 3, f11);
    m(k / 3, k % 3) = f11.one();
    basis.push_back(m);
  }
  CHECK_THROWS_AS(min_rank_exact_fp(make_subspace<Fp>(basis)), CapExceeded);
}

TEST_CASE("sampled minimum rank") {
  CHECK(min_rank_sample(make_subspace<Rational>({Matrix<Rational>::identity(2)}), 10, 0).upper_bound == 2);

  const auto y = tensor_subspace(gurvits_x(), gurvits_x());
  const auto s = min_rank_sample(y, 100, 1);
  CHECK(s.upper_bound == 2);
  CHECK(rank_exact(s.witness) == 2);
  const auto mm = kron(gurvits_m(), gurvits_m());
  CHECK(rank_exact(mm - Matrix<Rational>::identity(4)) == 2);
  CHECK(rank_exact(mm + Matrix<Rational>::identity(4)) == 2);

  // Sampled upper bounds never undercut the exact value over F_p for integer bases.
  std::mt19937_64 gen(9);
  const PrimeRing f7(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = oracle::random_matrix(3, 3, gen, -3, 3), b = oracle::random_matrix(3, 3, gen, -3, 3);
    MatrixSubspace<Rational> q{3, 3, {a, b}, {}};
    MatrixSubspace<Fp> f{3, 3, {to_fp_matrix(a, f7), to_fp_matrix(b, f7)}, f7};
    try {
      q.validate();
      f.validate();
    } catch (const std::invalid_argument&) {
      continue;
    }
    const auto up = min_rank_sample(q, 50, trial);
    CHECK(up.upper_bound >= min_rank_exact_fp(f));
    CHECK(rank_exact(up.witness) == up.upper_bound);
    CHECK(up.elements_tried >= 2 + 50);
  }
}

TEST_CASE("tensor products of subspaces") {
  const auto i4 = tensor_subspace(make_subspace<Rational>({Matrix<Rational>::identity(2)}),
                                  make_subspace<Rational>({Matrix<Rational>::identity(2)}));
  REQUIRE(i4.dimension() == 1);
  CHECK(i4.basis[0] == Matrix<Rational>::identity(4));

  const auto m = gurvits_m();
  const auto id = Matrix<Rational>::identity(2);
  const auto y = tensor_subspace(gurvits_x(), gurvits_x());
  REQUIRE(y.dimension() == 4);
  CHECK(y.basis[0] == kron(m, m));
  CHECK(y.basis[1] == kron(m, id));
  CHECK(y.basis[2] == kron(id, m));
  CHECK(y.basis[3] == kron(id, id));

  std::mt19937_64 gen(10);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = oracle::random_matrix(2, 3, gen), b = oracle::random_matrix(3, 2, gen);
    const auto ab = braided_product(a, b);
    // Entry ((i1, i2), (j1, j2)) = a(i1, j1) b(i2, j2).
    for (std::size_t i1 = 0; i1 < 2; ++i1)
      for (std::size_t i2 = 0; i2 < 3; ++i2)
        for (std::size_t j1 = 0; j1 < 3; ++j1)
          for (std::size_t j2 = 0; j2 < 2; ++j2) CHECK(ab(i1 * 3 + i2, j1 * 2 + j2) == a(i1, j1) * b(i2, j2));
  }

  for (int trial = 0; trial < 5; ++trial) {
    const auto s1 = make_subspace<Rational>({oracle::low_rank_matrix(3, 3, 1, gen), oracle::random_matrix(3, 3, gen)});
    const auto s2 = make_subspace<Rational>({oracle::low_rank_matrix(2, 2, 1, gen), Matrix<Rational>::identity(2)});
    const auto r1 = min_rank_sample(s1, 20, trial), r2 = min_rank_sample(s2, 20, trial);
    const auto prod = braided_product(r1.witness, r2.witness);
    CHECK(rank_exact(prod) == r1.upper_bound * r2.upper_bound);
    CHECK(min_rank_sample(tensor_subspace(s1, s2), 20, trial).upper_bound <= r1.upper_bound * r2.upper_bound);
  }
}

TEST_CASE("Gurvits construction") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto rec = gurvits_construction(n);
    CHECK(rec.minrank_x == 2 * n);
    CHECK(rec.no_real_eigenvalues);
    CHECK(rec.witness_rank_minus == 2 * n * n);
    CHECK(rec.witness_rank_plus == 2 * n * n);
    CHECK(rec.decrement == 2 * n * n);
    for (const auto& s : rec.samples) CHECK(s.rank == 2 * n);
    CHECK(rank_exact(gurvits_witness(n)) == oracle::rank(gurvits_witness(n)));
  }
  CHECK(gurvits_construction(1).decrement == 2);
  CHECK(gurvits_construction(2).witness_rank_minus == 8);
  CHECK(gurvits_construction(3).witness_rank_minus == 18);
  CHECK_THROWS_AS(gurvits_construction(9), CapExceeded);
  CHECK_THROWS_AS(gurvits_construction(0), std::invalid_argument);
}

TEST_CASE("entanglement entropy") {
  CHECK(entanglement_entropy(as_bipartite(from_eigen(Eigen::Vector3d(1, 2, 3) * Eigen::RowVector2d(4, -1)))) ==
        doctest::Approx(0.0).epsilon(1e-12));
  Matrix<double> bell(2, 2, {1, 0, 0, 1});
  CHECK(std::abs(entanglement_entropy(as_bipartite(bell)) - std::log(2.0)) <= 1e-12);
  CHECK(std::abs(entanglement_entropy(as_bipartite(bell), LogBase::Two) - 1.0) <= 1e-12);
  CHECK_THROWS_AS(entanglement_entropy(as_bipartite(Matrix<double>(2, 2))), std::invalid_argument);

  for (std::size_t n = 1; n <= 4; ++n) {
    const auto w = convert_matrix<double>(gurvits_witness(n));
    CHECK(std::abs(entanglement_entropy(as_bipartite(w)) - std::log(2.0 * n * n)) <= 1e-9);
    const auto sv = singular_values(w);
    for (std::size_t i = 0; i < sv.size(); ++i) CHECK(std::abs(sv[i] - (i < 2 * n * n ? 2.0 : 0.0)) <= 1e-9);
  }

  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int da = 2 + trial % 3, db = 2 + (trial / 3) % 3;
    const auto m = convert_matrix<double>(oracle::random_matrix(da, db, gen));
    const double h = entanglement_entropy(as_bipartite(m));
    CHECK(h >= 0.0);
    CHECK(h <= std::log(double(std::min(da, db))) + 1e-12);
    const Eigen::MatrixXd rotated = random_orthogonal(da, gen) * to_eigen(m) * random_orthogonal(db, gen);
    CHECK(std::abs(entanglement_entropy(as_bipartite(from_eigen(rotated))) - h) <= 1e-8);
  }
}

TEST_CASE("Friedland check") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto rec = friedland_check(n, 200, 0);
    CHECK(std::abs(rec.sum_of_mins - 2 * std::log(2.0 * n)) <= 1e-12);
    CHECK(std::abs(rec.joint_min_upper - std::log(2.0 * n * n)) <= 1e-9);
    CHECK(std::abs(rec.margin - std::log(2.0)) <= 1e-9);
    CHECK(rec.violated);
    // Every element of S_2n is a multiple of an orthogonal matrix.
    CHECK(std::abs(rec.sampled_min - std::log(2.0 * n)) <= 1e-9);
    CHECK(rec.samples >= 200);
  }
  const auto two = friedland_check(2);
  CHECK(two.sum_of_mins == doctest::Approx(2.7725887).epsilon(1e-7));
  CHECK(two.joint_min_upper == doctest::Approx(2.0794415).epsilon(1e-7));
}
