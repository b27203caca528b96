#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "tensorlab/errors.hpp"
#include "tensorlab/linalg.hpp"
#include "tensorlab/rank.hpp"
#include "tensorlab/terracini.hpp"

using namespace tensorlab;

namespace {

// Applies a to factor k: T'[.., i, ..] = sum_j a(i, j) T[.., j, ..].
DenseTensor<Rational> mode_apply(const DenseTensor<Rational>& t, std::size_t k, const Matrix<Rational>& a) {
  auto dims = t.shape().dims();
  dims[k] = a.rows();
  DenseTensor<Rational> out{Shape(dims)};
  for (std::size_t f = 0; f < out.shape().total(); ++f) {
    auto idx = unflatten_index(out.shape(), f);
    const std::size_t i = idx[k];
    Rational s = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      idx[k] = j;
      s += a(i, j) * t.at(idx);
    }
    out[f] = s;
  }
  return out;
}

Matrix<Rational> invertible(std::size_t n, std::mt19937_64& gen) {
  for (;;) {
    auto m = oracle::random_matrix(n, n, gen, -3, 3);
    if (oracle::rank(m) == n) return m;
  }
}

// Every 2x2x2 tensor over F_2 as an 8-bit mask; rank-one masks enumerated
// from the three nonzero vectors of F_2^2.
std::uint8_t mask_of(const DenseTensor<Fp>& t) {
  std::uint8_t m = 0;
  for (std::size_t f = 0; f < 8; ++f)
    if (t[f].value()) m |= std::uint8_t(1u << f);
  return m;
}

std::vector<std::uint8_t> f2_rank_ones() {
  const int vecs[3][2] = {{1, 0}, {0, 1}, {1, 1}};
  std::vector<std::uint8_t> out;
  for (const auto& a : vecs)
    for (const auto& b : vecs)
      for (const auto& c : vecs) {
        std::uint8_t m = 0;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
              if (a[i] & b[j] & c[k]) m |= std::uint8_t(1u << (i * 4 + j * 2 + k));
        out.push_back(m);
      }
  return out;
}

std::size_t f2_rank_oracle(std::uint8_t target) {
  const auto ones = f2_rank_ones();
  std::set<std::uint8_t> reach{0};
  for (std::size_t r = 0; r <= 8; ++r) {
    if (reach.count(target)) return r;
    std::set<std::uint8_t> next = reach;
    for (auto m : reach)
      for (auto o : ones) next.insert(m ^ o);
    reach = next;
  }
  return 99;
}

}  // namespace

TEST_CASE("f_rank and multilinear rank") {
  const auto w = w_state<Rational>(3);
  const auto fl = flatten(w, Bipartition({0}, 3));
  CHECK(fl.rows() == 2);
  CHECK(fl.cols() == 4);
  CHECK(f_rank(w, Bipartition({0}, 3)) == oracle::rank(fl));
  CHECK(f_rank(w, Bipartition({0}, 3)) == 2);
  CHECK(multilinear_rank(w).ranks == std::vector<std::size_t>{2, 2, 2});
  CHECK(multilinear_rank(rank_one<Rational>({{1, 2}, {3, 4, 5}, {1, 0}})).ranks == std::vector<std::size_t>{1, 1, 1});

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto t = random_tensor<Rational>(Shape({2, 2, 2}), {}, seed);
    const auto ml = multilinear_rank(t);
    for (std::size_t k = 0; k < 3; ++k) CHECK(ml.ranks[k] == oracle::rank(flatten(t, Bipartition({k}, 3))));
    CHECK(ml.ranks == std::vector<std::size_t>{2, 2, 2});
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Shape s({2, 3, 5});
    const auto ml = multilinear_rank(random_tensor<Rational>(s, {}, seed)).ranks;
    CHECK(ml == std::vector<std::size_t>{2, 3, 5});
    for (std::size_t k = 0; k < 3; ++k) CHECK(ml[k] <= std::min(s[k], s.total() / s[k]));
    // r_i <= r_j r_k.
    CHECK(ml[2] <= ml[0] * ml[1]);
  }
  const auto thin = random_tensor<Rational>(Shape({4, 2, 1}), {}, 3);
  CHECK(multilinear_rank(thin).ranks == std::vector<std::size_t>{2, 2, 1});
}

TEST_CASE("f_rank over floats is numeric") {
  const auto w = w_state<double>(3);
  CHECK(f_rank(w, Bipartition({0}, 3)) == 2);
  CHECK(border_rank_lower_bound(w) == 2);
}

TEST_CASE("border rank lower bound") {
  CHECK(border_rank_lower_bound(rank_one<Rational>({{1, 1}, {2, 1}, {0, 1}})) == 1);
  DenseTensor<Rational> diag(Shape({3, 3, 3}));
  for (std::size_t i = 0; i < 3; ++i) diag.at(std::vector<std::size_t>{i, i, i}) = 1;
  for (const auto& b : all_bipartitions(3)) CHECK(oracle::rank(flatten(diag, b)) == 3);
  CHECK(border_rank_lower_bound(diag) == 3);
  for (std::size_t n = 2; n <= 6; ++n) CHECK(border_rank_lower_bound(w_state<Rational>(n)) == 2);
}

TEST_CASE("border rank lower bound is invariant under braids and factor substitutions") {
  std::mt19937_64 gen(31);
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto a = random_tensor<Rational>(Shape({2, 3, 2, 2}), {}, seed);
    const auto t = seed % 2 ? a : add(rank_one<Rational>({{1, 2}, {0, 1, 1}, {1, 1}, {2, 1}}),
                                      rank_one<Rational>({{1, 0}, {1, 1, 1}, {0, 1}, {1, 3}}));
    const std::size_t b = border_rank_lower_bound(t);
    std::vector<std::size_t> perm{0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), gen);
    CHECK(border_rank_lower_bound(braid(t, perm)) == b);
    const std::size_t k = seed % 4;
    CHECK(border_rank_lower_bound(mode_apply(t, k, invertible(t.shape()[k], gen))) == b);
  }
}

TEST_CASE("w_state") {
  const auto w2 = w_state<Rational>(2);
  CHECK(std::vector<Rational>(w2.data().begin(), w2.data().end()) == std::vector<Rational>{0, 1, 1, 0});
  CHECK(rank_exact(flatten(w2, Bipartition({0}, 2))) == 2);
  const auto w3 = w_state<Rational>(3);
  for (std::size_t f = 0; f < 8; ++f) CHECK(w3[f] == ((f == 1 || f == 2 || f == 4) ? 1 : 0));
  const auto w4 = w_state<Rational>(4);
  CHECK(is_symmetric(w4));
  CHECK(multilinear_rank(w4).ranks == std::vector<std::size_t>{2, 2, 2, 2});
  for (std::size_t n = 2; n <= 6; ++n) CHECK(w_state_decomposition<Rational>(n).reconstruct() == w_state<Rational>(n));
  CHECK_THROWS_AS(w_state<Rational>(1), std::invalid_argument);
}

TEST_CASE("exhaustive rank over small prime fields") {
  const PrimeRing f2(2), f3(3);
  CHECK(exact_rank_bruteforce(DenseTensor<Fp>(Shape({2, 2, 2}), f2), 2).rank == std::size_t{0});
  const auto one = convert_tensor<Fp>(rank_one<Rational>({{1, 1}, {0, 1}, {1, 0}}), f3);
  CHECK(exact_rank_bruteforce(one, 2).rank == std::size_t{1});

  for (const auto& ring : {f2, f3}) {
    const auto w = w_state<Fp>(3, ring);
    const auto res = exact_rank_bruteforce(w, 2);
    CHECK_FALSE(res.rank.has_value());
    CHECK_FALSE(res.witness.has_value());
    const auto res3 = exact_rank_bruteforce(w, 3);
    REQUIRE(res3.rank == std::size_t{3});
    CHECK(res3.witness->reconstruct() == w);
  }
  CHECK(w_state_decomposition<Rational>(3).reconstruct() == w_state<Rational>(3));

  // Every 2x2x2 tensor over F_2 against a reachability oracle.
  for (unsigned m = 0; m < 256; m += 7) {
    DenseTensor<Fp> t(Shape({2, 2, 2}), f2);
    for (std::size_t f = 0; f < 8; ++f) t[f] = f2.from_int((m >> f) & 1);
    REQUIRE(mask_of(t) == m);
    const auto res = exact_rank_bruteforce(t, 4);
    REQUIRE(res.rank.has_value());
    CHECK(*res.rank == f2_rank_oracle(static_cast<std::uint8_t>(m)));
    CHECK(res.witness->reconstruct() == t);
    // Flattening ranks bound the rank from below over the same field.
    CHECK(border_rank_lower_bound(t) <= *res.rank);
  }

  CHECK_THROWS_AS(exact_rank_bruteforce(DenseTensor<Fp>(Shape({2, 2}), PrimeRing(7)), 2), std::invalid_argument);
  CHECK_THROWS_AS(exact_rank_bruteforce(DenseTensor<Fp>(Shape({2, 2, 2}), f2), 5), CapExceeded);
  CHECK_THROWS_AS(exact_rank_bruteforce(DenseTensor<Fp>(Shape({4, 4, 5}), PrimeRing(5)), 4), CapExceeded);
}

TEST_CASE("catalecticant shape and entries") {
  // 2x^3 + 3x^2y: a = (2, 1, 0, 0).
  const auto c = catalecticant(BinaryForm{{2, 3, 0, 0}}, 1);
  CHECK(c.rows() == 3);
  CHECK(c.cols() == 2);
  CHECK(c(0, 0) == 2);
  CHECK(c(0, 1) == 1);
  CHECK(c(1, 0) == 1);
  CHECK(c(2, 1) == 0);
}

TEST_CASE("square-free test") {
  CHECK(is_square_free_binary({0, 1, 0}));   // st
  CHECK_FALSE(is_square_free_binary({1, 0, 0}));  // s^2
  CHECK(is_square_free_binary({1, 0, -1}));  // s^2 - t^2
  CHECK_FALSE(is_square_free_binary({1, -2, 1}));  // (s - t)^2
  CHECK(is_square_free_binary({0, 1}));
}

TEST_CASE("binary Waring rank") {
  CHECK(sylvester_symmetric_rank_binary(BinaryForm{{1, 0, 0, 0, 0}}) == 1);
  CHECK(sylvester_symmetric_rank_binary(BinaryForm{{1, 0, 0, 1}}) == 2);
  const auto k = sylvester_kernel(BinaryForm{{1, 0, 0, 1}});
  CHECK(k.kernel_form == std::vector<Rational>{0, 1, 0});
  // x^3 + y^3 is not a cube: its 2 x 3 catalecticant has rank 2.
  CHECK(oracle::rank(catalecticant(BinaryForm{{1, 0, 0, 1}}, 1)) == 2);
  // x^2 y has rank 3 = d.
  CHECK(sylvester_symmetric_rank_binary(BinaryForm{{0, 1, 0, 0}}) == 3);
  CHECK_THROWS_AS(sylvester_symmetric_rank_binary(BinaryForm{{0, 0, 0}}), std::invalid_argument);

  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 10; ++trial) {
    BinaryForm f{oracle::random_vector(6, gen, -10, 10)};
    CHECK(sylvester_symmetric_rank_binary(f) == 3);
    // The 4 x 3 catalecticant is injective, the 3 x 4 one has a line kernel.
    CHECK(oracle::rank(catalecticant(f, 2)) == 3);
    CHECK(oracle::rank(catalecticant(f, 3)) == 3);
  }
  CHECK(terracini::generic_rank(terracini::Veronese{2, 5}).generic_rank == 3);
}
