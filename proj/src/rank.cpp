#include "tensorlab/rank.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "poly.hpp"
#include "tensorlab/errors.hpp"
#include "tensorlab/linalg.hpp"

namespace tensorlab {

template <Scalar T>
std::size_t f_rank(const DenseTensor<T>& t, const Bipartition& b) {
  const auto m = flatten(t, b);
  if constexpr (std::is_same_v<T, double>) {
    return rank_numeric(m);
  } else {
    return rank_exact(m);
  }
}

template <Scalar T>
MultilinearRank multilinear_rank(const DenseTensor<T>& t) {
  MultilinearRank out;
  if (t.order() == 1) {
    out.ranks.push_back(t.is_zero() ? 0 : 1);
    return out;
  }
  for (std::size_t k = 0; k < t.order(); ++k) out.ranks.push_back(f_rank(t, Bipartition({k}, t.order())));
  return out;
}

template <Scalar T>
std::size_t border_rank_lower_bound(const DenseTensor<T>& t) {
  if (t.order() == 1) return t.is_zero() ? 0 : 1;
  std::size_t best = 0;
  for (const auto& b : all_bipartitions(t.order())) best = std::max(best, f_rank(t, b));
  return best;
}

template <Scalar T>
DenseTensor<T> w_state(std::size_t n, const ring_t<T>& ring) {
  return w_state_decomposition<T>(n, ring).reconstruct();
}

template <Scalar T>
Decomposition<T> w_state_decomposition(std::size_t n, const ring_t<T>& ring) {
  if (n < 2) throw std::invalid_argument("w_state: need at least 2 factors");
  const std::vector<T> x{ring.one(), ring.zero()};
  const std::vector<T> y{ring.zero(), ring.one()};
  Decomposition<T> d{Shape(std::vector<std::size_t>(n, 2)), {}, ring};
  for (std::size_t k = 0; k < n; ++k) {
    typename Decomposition<T>::Summand s(n, x);
    s[k] = y;
    d.summands.push_back(std::move(s));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Exhaustive rank over F_p.

namespace {

// Tensor over F_p with p <= 5 packed at 3 bits per entry, up to 64 entries.
using PackedKey = std::array<std::uint64_t, 3>;

PackedKey pack(const std::vector<std::uint8_t>& digits) {
  PackedKey k{0, 0, 0};
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const std::size_t bit = 3 * i;
    k[bit / 64] |= static_cast<std::uint64_t>(digits[i]) << (bit % 64);
    if (bit % 64 > 61) k[bit / 64 + 1] |= static_cast<std::uint64_t>(digits[i]) >> (64 - bit % 64);
  }
  return k;
}

struct RankOneTable {
  std::vector<std::vector<std::uint8_t>> tensors;
  std::vector<std::vector<std::vector<std::uint8_t>>> factors;
};

// Nonzero vectors of length n over F_p, optionally normalized so the first
// nonzero coordinate is 1.
std::vector<std::vector<std::uint8_t>> vectors_fp(std::size_t n, std::uint32_t p, bool normalized) {
  std::vector<std::vector<std::uint8_t>> out;
  std::vector<std::uint8_t> v(n, 0);
  while (true) {
    std::size_t k = n;
    while (k-- > 0) {
      if (++v[k] < p) break;
      v[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
    auto first = std::find_if(v.begin(), v.end(), [](auto x) { return x != 0; });
    if (first == v.end()) continue;
    if (normalized && *first != 1) continue;
    out.push_back(v);
  }
  return out;
}

RankOneTable enumerate_rank_one(const Shape& shape, std::uint32_t p) {
  const std::size_t n = shape.order();
  std::vector<std::vector<std::vector<std::uint8_t>>> choices;
  for (std::size_t k = 0; k < n; ++k) choices.push_back(vectors_fp(shape[k], p, k + 1 < n));
  RankOneTable table;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<std::uint8_t> data{1};
    std::vector<std::vector<std::uint8_t>> f;
    for (std::size_t k = 0; k < n; ++k) {
      const auto& v = choices[k][idx[k]];
      f.push_back(v);
      std::vector<std::uint8_t> next;
      next.reserve(data.size() * v.size());
      for (auto a : data)
        for (auto b : v) next.push_back(static_cast<std::uint8_t>((a * b) % p));
      data = std::move(next);
    }
    table.tensors.push_back(std::move(data));
    table.factors.push_back(std::move(f));
    std::size_t k = n;
    while (k-- > 0) {
      if (++idx[k] < choices[k].size()) break;
      idx[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return table;
}

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  long double acc = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    acc = acc * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
    if (acc > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::uint64_t>(acc + 0.5L);
}

// Visits every strictly increasing index tuple of length `len` over [0, n),
// with the running sum of the corresponding tensors. The visitor returns true
// to stop.
template <class Visit>
bool for_each_sum(const RankOneTable& table, std::size_t len, std::uint32_t p, Visit&& visit) {
  const std::size_t n = table.tensors.size();
  const std::size_t width = table.tensors.front().size();
  std::vector<std::size_t> combo;
  std::vector<std::vector<std::uint8_t>> partial(len + 1, std::vector<std::uint8_t>(width, 0));
  auto rec = [&](auto&& self, std::size_t depth, std::size_t start) -> bool {
    if (depth == len) return visit(partial[len], combo);
    for (std::size_t i = start; i + (len - depth) <= n; ++i) {
      const auto& t = table.tensors[i];
      for (std::size_t e = 0; e < width; ++e)
        partial[depth + 1][e] = static_cast<std::uint8_t>((partial[depth][e] + t[e]) % p);
      combo.push_back(i);
      if (self(self, depth + 1, i + 1)) return true;
      combo.pop_back();
    }
    return false;
  };
  return rec(rec, 0, 0);
}

}  // namespace

BruteForceRank exact_rank_bruteforce(const DenseTensor<Fp>& t, std::size_t r_max) {
  const std::uint32_t p = t.ring().modulus();
  if (p != 2 && p != 3 && p != 5)
    throw std::invalid_argument("exact_rank_bruteforce: field must be F_2, F_3 or F_5");
  if (t.data().size() > kBruteForceMaxEntries)
    throw CapExceeded("exact_rank_bruteforce: too many tensor entries", t.data().size(),
                      kBruteForceMaxEntries);
  if (r_max > kBruteForceMaxR)
    throw CapExceeded("exact_rank_bruteforce: r_max too large", r_max, kBruteForceMaxR);

  BruteForceRank out;
  out.r_max = r_max;
  out.modulus = p;
  std::vector<std::uint8_t> target;
  for (const auto& x : t.data()) target.push_back(static_cast<std::uint8_t>(x.value()));
  if (t.is_zero()) {
    out.rank = 0;
    out.witness = Decomposition<Fp>{t.shape(), {}, t.ring()};
    return out;
  }
  if (r_max == 0) return out;

  const RankOneTable table = enumerate_rank_one(t.shape(), p);
  const std::uint64_t n = table.tensors.size();
  out.rank_one_count = n;

  // Refuse up front if the largest pass needed for r_max is out of reach.
  {
    const std::size_t h = r_max / 2, l = r_max - h;
    const auto stored = binomial_capped(n, h, kBruteForceTableCap);
    const auto scanned = binomial_capped(n, l, kBruteForceSearchCap);
    if (stored > kBruteForceTableCap)
      throw CapExceeded("exact_rank_bruteforce: partial-sum table too large", stored,
                        kBruteForceTableCap);
    if (scanned > kBruteForceSearchCap)
      throw CapExceeded("exact_rank_bruteforce: search space too large", scanned,
                        kBruteForceSearchCap);
  }

  auto to_decomposition = [&](const std::vector<std::size_t>& ids) {
    Decomposition<Fp> d{t.shape(), {}, t.ring()};
    for (auto i : ids) {
      Decomposition<Fp>::Summand s;
      for (const auto& v : table.factors[i]) {
        std::vector<Fp> fv;
        for (auto x : v) fv.push_back(Fp(x, p));
        s.push_back(std::move(fv));
      }
      d.summands.push_back(std::move(s));
    }
    return d;
  };

  // table_h: sorted packed sums of exactly h distinct rank-one tensors.
  std::size_t table_h = 0;
  std::vector<PackedKey> stored;
  for (std::size_t r = 1; r <= r_max; ++r) {
    const std::size_t h = r / 2, l = r - h;
    if (h != table_h) {
      stored.clear();
      for_each_sum(table, h, p, [&](const auto& sum, const auto&) {
        stored.push_back(pack(sum));
        return false;
      });
      std::sort(stored.begin(), stored.end());
      stored.erase(std::unique(stored.begin(), stored.end()), stored.end());
      table_h = h;
    }
    std::vector<std::uint8_t> rest(target.size());
    std::vector<std::size_t> found;
    const bool hit = for_each_sum(table, l, p, [&](const auto& sum, const auto& combo) {
      for (std::size_t e = 0; e < target.size(); ++e)
        rest[e] = static_cast<std::uint8_t>((target[e] + p - sum[e]) % p);
      if (h == 0) {
        if (std::any_of(rest.begin(), rest.end(), [](auto x) { return x != 0; })) return false;
      } else if (!std::binary_search(stored.begin(), stored.end(), pack(rest))) {
        return false;
      }
      found = combo;
      return true;
    });
    if (!hit) continue;
    if (h > 0) {
      // Recover which h-combination produced the remainder.
      const PackedKey want = pack(rest);
      for_each_sum(table, h, p, [&](const auto& sum, const auto& combo) {
        if (pack(sum) != want) return false;
        found.insert(found.end(), combo.begin(), combo.end());
        return true;
      });
    }
    out.rank = r;
    out.witness = to_decomposition(found);
    return out;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Binary forms.

bool BinaryForm::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return sgn(c) == 0; });
}

namespace {

Rational binomial(std::size_t n, std::size_t k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

}  // namespace

Matrix<Rational> catalecticant(const BinaryForm& f, std::size_t r) {
  const std::size_t d = f.degree();
  if (r > d) throw std::invalid_argument("catalecticant: level exceeds degree");
  std::vector<Rational> a(d + 1);
  for (std::size_t i = 0; i <= d; ++i) a[i] = f.coeffs[i] / binomial(d, i);
  Matrix<Rational> c(d - r + 1, r + 1);
  for (std::size_t i = 0; i <= d - r; ++i)
    for (std::size_t j = 0; j <= r; ++j) c(i, j) = a[i + j];
  return c;
}

bool is_square_free_binary(const std::vector<Rational>& g) {
  if (g.empty()) return false;
  const long r = static_cast<long>(g.size()) - 1;
  poly::Poly p(g.begin(), g.end());
  const long deg = poly::degree(p);
  if (deg < 0) return false;
  // r - deg is the multiplicity of the root at s = 0.
  if (r - deg > 1) return false;
  if (deg <= 1) return true;
  return poly::degree(poly::gcd(p, poly::derivative(p))) == 0;
}

SylvesterKernel sylvester_kernel(const BinaryForm& f) {
  if (f.coeffs.empty() || f.is_zero())
    throw std::invalid_argument("sylvester: zero binary form");
  const std::size_t d = f.degree();
  if (d == 0) throw std::invalid_argument("sylvester: constant form has no Waring rank");
  std::mt19937_64 gen(0);
  std::uniform_int_distribution<int> coef(-10, 10);
  for (std::size_t r = 1; r <= d; ++r) {
    const auto kernel = nullspace_exact(catalecticant(f, r));
    if (kernel.empty()) continue;
    for (const auto& g : kernel)
      if (is_square_free_binary(g)) return {r, g};
    if (kernel.size() == 1) continue;
    // A generic kernel element is square-free if any is; probe a few.
    for (int trial = 0; trial < 32; ++trial) {
      std::vector<Rational> g(r + 1, Rational(0));
      for (const auto& v : kernel) {
        const Rational c = coef(gen);
        for (std::size_t j = 0; j <= r; ++j) g[j] += c * v[j];
      }
      if (is_square_free_binary(g)) return {r, g};
    }
  }
  throw std::logic_error("sylvester: no square-free kernel form up to the degree");
}

std::size_t sylvester_symmetric_rank_binary(const BinaryForm& f) { return sylvester_kernel(f).rank; }

#define TENSORLAB_INSTANTIATE(T)                                                 \
  template std::size_t f_rank(const DenseTensor<T>&, const Bipartition&);       \
  template MultilinearRank multilinear_rank(const DenseTensor<T>&);             \
  template std::size_t border_rank_lower_bound(const DenseTensor<T>&);          \
  template DenseTensor<T> w_state(std::size_t, const ring_t<T>&);               \
  template Decomposition<T> w_state_decomposition(std::size_t, const ring_t<T>&);

TENSORLAB_INSTANTIATE(Rational)
TENSORLAB_INSTANTIATE(Fp)
TENSORLAB_INSTANTIATE(double)

#undef TENSORLAB_INSTANTIATE

}  // namespace tensorlab
