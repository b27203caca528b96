#include <doctest.h>

#include "oracles.hpp"
#include "tensorlab/errors.hpp"
#include "tensorlab/linalg.hpp"
#include "tensorlab/matchgate.hpp"

using namespace tensorlab;

namespace {

using Skew = SkewMatrix<Rational>;
using Graph = WeightedGraph<Rational>;
using Sig = SignatureVector<Rational>;

Skew random_skew(std::size_t n, std::mt19937_64& gen, int lo = -5, int hi = 5) {
  std::uniform_int_distribution<int> dist(lo, hi);
  Skew a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a.set(i, j, dist(gen));
  return a;
}

Graph unit_graph(std::size_t nodes, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Graph g;
  g.nodes = nodes;
  for (auto [i, j] : edges) g.edges.push_back({i, j, Rational(1)});
  return g;
}

Graph complete(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return unit_graph(n, e);
}

Graph k33() {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 3; j < 6; ++j) e.emplace_back(i, j);
  return unit_graph(6, e);
}

oracle::Grid minor_without(const Skew& a, const std::vector<std::size_t>& keep) {
  oracle::Grid g(keep.size(), std::vector<Rational>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) g[i][j] = a(keep[i], keep[j]);
  return g;
}

Sig sig(std::vector<Rational> e) {
  Sig s;
  s.entries = std::move(e);
  while ((std::size_t{1} << s.wires) < s.entries.size()) ++s.wires;
  return s;
}

bool all_zero(const std::vector<Rational>& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("pfaffian: conventions and small cases") {
  Skew a2(2);
  a2.set(0, 1, 7);
  CHECK(pfaffian(a2) == 7);
  CHECK(a2(1, 0) == -7);
  CHECK(pfaffian(Skew(0)) == 1);
  CHECK(pfaffian(Skew(3)) == 0);

  std::mt19937_64 gen(1);
  const auto a = random_skew(4, gen);
  CHECK(pfaffian(a) == a(0, 1) * a(2, 3) - a(0, 2) * a(1, 3) + a(0, 3) * a(1, 2));
  CHECK(pfaffian(a) == oracle::pfaffian(oracle::grid_of(a.to_matrix())));
  CHECK(Skew::from_matrix(a.to_matrix()).to_matrix() == a.to_matrix());
  CHECK_THROWS_AS(Skew::from_matrix(Matrix<Rational>(2, 2, {1, 0, 0, 0})), std::invalid_argument);
  CHECK_THROWS_AS(Skew::from_matrix(Matrix<Rational>(2, 3)), std::invalid_argument);
}

TEST_CASE("pfaffian squared is the determinant") {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto a = random_skew(n, gen);
    const Rational pf = pfaffian(a);
    const auto g = oracle::grid_of(a.to_matrix());
    CHECK(pf * pf == (n <= 6 ? oracle::det(g) : determinant(a.to_matrix())));
    if (n <= 6) CHECK(pf == oracle::pfaffian(g));
  }
  // The library determinant is itself checked against Laplace expansion up to 8.
  const auto a8 = random_skew(8, gen);
  const Rational pf8 = pfaffian(a8);
  CHECK(pf8 * pf8 == oracle::det(oracle::grid_of(a8.to_matrix())));
}

TEST_CASE("pfaffian changes sign under a simultaneous swap") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 * (1 + trial % 4);
    const auto a = random_skew(n, gen);
    const std::size_t i = trial % n, j = (trial * 5 + 1) % n;
    if (i == j) continue;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::swap(p[i], p[j]);
    Skew b(n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) b.set(x, y, a(p[x], p[y]));
    CHECK(pfaffian(b) == -pfaffian(a));
  }
}

TEST_CASE("sub-pfaffian vectors") {
  Skew c(2);
  c.set(0, 1, 5);
  const auto v = sub_pfaffian_vector(c, {0, 1});
  CHECK(v.wires == 2);
  CHECK(v.entries == std::vector<Rational>{5, 0, 0, 1});

  const auto z = sub_pfaffian_vector(Skew(4), {0, 1, 2, 3});
  for (std::size_t j = 0; j < 16; ++j) CHECK(z.entries[j] == (j == 15 ? 1 : 0));

  std::mt19937_64 gen(4);
  for (std::size_t n : {4, 5, 6}) {
    const auto a = random_skew(n, gen);
    std::vector<std::size_t> universe(n);
    std::iota(universe.begin(), universe.end(), 0);
    if (n == 6) universe = {1, 2, 4, 5};
    const auto s = sub_pfaffian_vector(a, universe);
    REQUIRE(s.entries.size() == std::size_t{1} << universe.size());
    for (std::size_t mask = 0; mask < s.entries.size(); ++mask) {
      std::vector<std::size_t> keep;
      for (std::size_t x = 0; x < n; ++x) {
        bool dropped = false;
        for (std::size_t i = 0; i < universe.size(); ++i) dropped = dropped || ((mask >> i & 1) && universe[i] == x);
        if (!dropped) keep.push_back(x);
      }
      CHECK(s.entries[mask] == oracle::pfaffian(minor_without(a, keep)));
      if (keep.size() % 2) CHECK(s.entries[mask] == 0);
    }
  }
  CHECK_THROWS_AS(sub_pfaffian_vector(c, {0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(sub_pfaffian_vector(c, {1, 1}), std::invalid_argument);
}

TEST_CASE("perfect matchings") {
  CHECK(count_matchings(complete(4)) == 3);
  CHECK(count_matchings(complete(6)) == 15);
  CHECK(count_matchings(k33()) == 6);
  CHECK(count_matchings(unit_graph(2, {{0, 1}})) == 1);
  CHECK(count_matchings(complete(5)) == 0);
  CHECK(count_matchings(unit_graph(0, {})) == 1);
  Graph w = unit_graph(4, {{0, 1}, {2, 3}, {0, 2}, {1, 3}});
  w.edges[0].weight = 2;
  w.edges[1].weight = 3;
  w.edges[2].weight = 5;
  CHECK(count_matchings(w) == 2 * 3 + 5 * 1);
  CHECK_THROWS_AS(unit_graph(3, {{0, 0}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(unit_graph(3, {{0, 1}, {0, 1}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(unit_graph(3, {{0, 3}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(count_matchings(unit_graph(17, {})), CapExceeded);
}

TEST_CASE("pfaffian orientations") {
  for (const auto& g : {complete(4), unit_graph(2, {{0, 1}}), unit_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {0, 3}})}) {
    const auto res = pfaffian_orientation_search(g);
    REQUIRE(res.signs.has_value());
    CHECK(res.signs->size() == g.edges.size());
    const Rational pf = pfaffian(g.skew_matrix(*res.signs));
    CHECK(abs(pf) == count_matchings(g));
    CHECK(res.matchings == count_matchings(g));
  }
  CHECK(pfaffian_orientation_search(unit_graph(2, {{0, 1}})).candidates_tried == 1);
  const auto k4 = pfaffian_orientation_search(complete(4));
  CHECK(k4.matchings == 3);

  const auto bad = pfaffian_orientation_search(k33());
  CHECK_FALSE(bad.signs.has_value());
  CHECK(bad.candidates_tried == 512);
  CHECK(bad.matchings == 6);
  CHECK_THROWS_AS(pfaffian_orientation_search(complete(7)), CapExceeded);
}

TEST_CASE("matchgate identities vanish on sub-pfaffian vectors") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto a = random_skew(n, gen, -3, 3);
    std::vector<std::size_t> universe(n);
    std::iota(universe.begin(), universe.end(), 0);
    const auto r = mgi_residuals(sub_pfaffian_vector(a, universe));
    CHECK(all_zero(r));
  }
  // Random vectors almost never satisfy the relations.
  std::size_t violated = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 2 + trial % 4;
    if (!all_zero(mgi_residuals(sig(oracle::random_vector(std::size_t{1} << k, gen))))) ++violated;
  }
  CHECK(violated >= 45);
}

TEST_CASE("matchgate identities on the NAE and equality signatures") {
  const auto nae = mgi_residuals(sig({0, 1, 1, 1, 1, 1, 1, 0}));
  CHECK_FALSE(all_zero(nae));
  std::size_t nonzero = 0;
  for (const auto& x : nae) nonzero += x != 0;
  CHECK(nonzero == 8);

  const auto eq = mgi_residuals(sig({0, 1, 1, 0}));
  CHECK(eq.size() == 6);
  CHECK(all_zero(eq));
  CHECK_THROWS_AS(mgi_residuals(sig(std::vector<Rational>(std::size_t{1} << 11))), CapExceeded);
}

TEST_CASE("wire basis change") {
  const Matrix<Rational> h(2, 2, {1, 1, 1, -1});
  const auto eq = sig({1, 0, 0, 1});
  const auto out = transform_signature(eq, h, TransformSide::Generator);
  // Explicit (h (x) h)^T on the little-endian coefficient vector.
  const auto hh = kron(h, h);
  std::vector<Rational> expect(4);
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t s = 0; s < 4; ++s) {
      // Little-endian: wire 0 is the low bit, hence the swapped kron index.
      const std::size_t sj = (s & 1) * 2 + (s >> 1), jj = (j & 1) * 2 + (j >> 1);
      expect[j] += eq.entries[s] * hh(sj, jj);
    }
  CHECK(out.entries == expect);
  CHECK(out.entries == std::vector<Rational>{2, 0, 0, 2});

  CHECK(transform_signature(eq, Matrix<Rational>::identity(2), TransformSide::Generator) == eq);
  const Matrix<Rational> b(2, 3, {1, 2, 3, 4, 5, 6});
  const auto one = transform_signature(sig({1, 0}), b, TransformSide::Generator);
  CHECK(one.arity == 3);
  CHECK(one.entries == std::vector<Rational>{1, 2, 3});

  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix<Rational> m = oracle::random_matrix(2, 2, gen, -4, 4);
    const Rational det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (det == 0) continue;
    const Matrix<Rational> inv(2, 2, {m(1, 1) / det, -m(0, 1) / det, -m(1, 0) / det, m(0, 0) / det});
    const auto s = sig(oracle::random_vector(8, gen));
    CHECK(transform_signature(transform_signature(s, m, TransformSide::Generator), inv, TransformSide::Generator) == s);
    CHECK(transform_signature(transform_signature(s, m, TransformSide::Recognizer), inv, TransformSide::Recognizer) == s);
  }
  CHECK_THROWS_AS(transform_signature(eq, Matrix<Rational>(3, 2), TransformSide::Generator), std::invalid_argument);
}
