#include "tensorlab/kronecker.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "tensorlab/errors.hpp"

namespace tensorlab {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw std::invalid_argument("Partition: parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw std::invalid_argument("Partition: parts must be weakly decreasing");
  }
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Partition Partition::conjugate() const {
  std::vector<int> c;
  if (parts_.empty()) return Partition();
  for (int j = 0; j < parts_[0]; ++j) {
    int count = 0;
    for (int p : parts_)
      if (p > j) ++count;
    c.push_back(count);
  }
  return Partition(std::move(c));
}

Partition Partition::stretched(int k) const {
  if (k <= 0) throw std::invalid_argument("Partition: stretch factor must be positive");
  auto p = parts_;
  for (auto& x : p) x *= k;
  return Partition(std::move(p));
}

std::string to_string(const Partition& p) {
  std::string s;
  for (std::size_t i = 0; i < p.parts().size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p.parts()[i]);
  }
  return s;
}

Partition parse_partition(std::string_view text) {
  if (!text.empty() && text.front() == '(' && text.back() == ')') text = text.substr(1, text.size() - 2);
  std::vector<int> parts;
  while (!text.empty()) {
    const auto comma = text.find(',');
    auto item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw std::invalid_argument("partition: malformed part '" + std::string(item) + "'");
    parts.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return Partition(std::move(parts));
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

// Beta-set (first-column hook lengths) with a fixed bead count; removing a
// rim hook of length m moves one bead down by m.
std::vector<int> beta_set(const Partition& lambda) {
  const auto len = static_cast<int>(lambda.length());
  std::vector<int> beads;
  for (int i = 0; i < len; ++i) beads.push_back(lambda.parts()[i] + (len - 1 - i));
  std::sort(beads.begin(), beads.end());
  return beads;
}

using CharMemo = std::map<std::pair<std::vector<int>, std::vector<int>>, Integer>;

Integer mn_recursion(const std::vector<int>& beads, const std::vector<int>& tail, CharMemo& memo) {
  if (tail.empty()) return 1;
  auto key = std::make_pair(beads, tail);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const int m = tail.front();
  const std::vector<int> rest(tail.begin() + 1, tail.end());
  Integer total = 0;
  for (std::size_t i = 0; i < beads.size(); ++i) {
    const int target = beads[i] - m;
    if (target < 0 || std::binary_search(beads.begin(), beads.end(), target)) continue;
    // Beads strictly between target and beads[i] give the leg length.
    const auto between = std::upper_bound(beads.begin(), beads.end(), target) - beads.begin();
    const long leg = static_cast<long>(i) - static_cast<long>(between);
    auto next = beads;
    next[i] = target;
    std::sort(next.begin(), next.end());
    const Integer v = mn_recursion(next, rest, memo);
    if (leg % 2) total -= v;
    else total += v;
  }
  memo.emplace(std::move(key), total);
  return total;
}

Integer character_with(const Partition& lambda, const Partition& mu, CharMemo& memo) {
  if (lambda.size() != mu.size())
    throw std::invalid_argument("character: |lambda| = " + std::to_string(lambda.size()) +
                                " but |mu| = " + std::to_string(mu.size()));
  return mn_recursion(beta_set(lambda), mu.parts(), memo);
}

Integer factorial(int n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

}  // namespace

std::vector<Partition> partitions_of(int n) {
  if (n < 0 || n > kMaxPartitionN)
    throw std::invalid_argument("partitions_of: n must lie in [0, " + std::to_string(kMaxPartitionN) + "]");
  std::vector<Partition> out;
  std::vector<int> cur;
  partitions_rec(n, n, cur, out);
  return out;
}

Integer character(const Partition& lambda, const Partition& mu) {
  if (lambda.size() > kMaxCharacterN)
    throw CapExceeded("character: partition too large", static_cast<std::uint64_t>(lambda.size()),
                      kMaxCharacterN);
  CharMemo memo;
  return character_with(lambda, mu, memo);
}

Integer class_size(const Partition& mu) {
  Integer z = 1;
  std::map<int, int> mult;
  for (int p : mu.parts()) ++mult[p];
  for (auto [part, m] : mult) {
    Integer pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(part), static_cast<unsigned long>(m));
    z *= pw * factorial(m);
  }
  return factorial(mu.size()) / z;
}

std::size_t CharacterTable::index(const Partition& p) const {
  const auto it = std::lower_bound(partitions.begin(), partitions.end(), p, std::greater<>());
  if (it == partitions.end() || !(*it == p))
    throw std::invalid_argument("character table: partition (" + to_string(p) + ") not of size " +
                                std::to_string(n));
  return static_cast<std::size_t>(it - partitions.begin());
}

const CharacterTable& character_table(int n) {
  if (n < 0 || n > kMaxCharacterN)
    throw CapExceeded("character_table: n too large", static_cast<std::uint64_t>(std::max(n, 0)),
                      kMaxCharacterN);
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<CharacterTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    auto t = std::make_unique<CharacterTable>();
    t->n = n;
    t->partitions = partitions_of(n);
    CharMemo memo;
    for (const auto& mu : t->partitions) t->classes.push_back({mu, class_size(mu)});
    for (const auto& lambda : t->partitions) {
      std::vector<Integer> row;
      for (const auto& c : t->classes) row.push_back(character_with(lambda, c.cycle_type, memo));
      t->values.push_back(std::move(row));
    }
    slot = std::move(t);
  }
  return *slot;
}

Integer kronecker_coefficient(const Partition& lambda, const Partition& mu, const Partition& nu) {
  const int n = lambda.size();
  if (mu.size() != n || nu.size() != n)
    throw std::invalid_argument("kronecker_coefficient: partitions of different sizes (" +
                                std::to_string(n) + ", " + std::to_string(mu.size()) + ", " +
                                std::to_string(nu.size()) + ")");
  if (n > kMaxKroneckerN)
    throw CapExceeded("kronecker_coefficient: n too large", static_cast<std::uint64_t>(n), kMaxKroneckerN);
  const auto& table = character_table(n);
  const auto& a = table.values[table.index(lambda)];
  const auto& b = table.values[table.index(mu)];
  const auto& c = table.values[table.index(nu)];
  Integer sum = 0;
  for (std::size_t j = 0; j < table.classes.size(); ++j) sum += table.classes[j].size * a[j] * b[j] * c[j];
  const Integer nf = factorial(n);
  if (sum % nf != 0) throw std::logic_error("kronecker_coefficient: character sum not divisible by n!");
  const Integer k = sum / nf;
  if (k < 0) throw std::logic_error("kronecker_coefficient: negative coefficient");
  return k;
}

Partition rectangle(int d, int n) {
  if (d < 0 || n < 0) throw std::invalid_argument("rectangle: negative side");
  if (d == 0 || n == 0) return Partition();
  return Partition(std::vector<int>(static_cast<std::size_t>(n), d));
}

RectangularKronecker rectangular_kronecker(const Partition& lambda, int d, int n) {
  if (d < 1 || n < 1) throw std::invalid_argument("rectangular_kronecker: d and n must be positive");
  if (lambda.size() != d * n)
    throw std::invalid_argument("rectangular_kronecker: |lambda| = " + std::to_string(lambda.size()) +
                                " but d * n = " + std::to_string(d * n));
  RectangularKronecker out;
  const auto rect = rectangle(d, n);
  const auto conj = rectangle(n, d);
  out.coefficient = kronecker_coefficient(lambda, rect, rect);
  out.conjugate_coefficient = kronecker_coefficient(lambda, conj, conj);
  out.exceeds_length = lambda.length() > static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  return out;
}

ConeSample cone_sample(int p, int q, int r, int n_max) {
  for (int x : {p, q, r}) {
    if (x < 1) throw std::invalid_argument("cone_sample: dimensions must be positive");
    if (x > kMaxConeDim) throw CapExceeded("cone_sample: dimension", static_cast<std::uint64_t>(x), kMaxConeDim);
  }
  if (n_max < 1) throw std::invalid_argument("cone_sample: n_max must be positive");
  if (n_max > kMaxConeN) throw CapExceeded("cone_sample: n_max", static_cast<std::uint64_t>(n_max), kMaxConeN);
  ConeSample out;
  auto bounded = [](int n, int len) {
    std::vector<Partition> v;
    for (auto& part : partitions_of(n))
      if (part.length() <= static_cast<std::size_t>(len)) v.push_back(std::move(part));
    return v;
  };
  for (int n = 1; n <= n_max; ++n) {
    const auto ls = bounded(n, p), ms = bounded(n, q), ns = bounded(n, r);
    for (const auto& l : ls)
      for (const auto& m : ms)
        for (const auto& v : ns) {
          Integer k = kronecker_coefficient(l, m, v);
          if (k == 0) continue;
          KroneckerTriple t{l, m, v, k};
          if (2 * n <= kMaxKroneckerN) {
            Integer k2 = kronecker_coefficient(l.stretched(2), m.stretched(2), v.stretched(2));
            const bool holds = k2 > 0;
            out.stretch.push_back({t, std::move(k2), holds});
          }
          out.positive.push_back(std::move(t));
        }
  }
  return out;
}

namespace {

void monomials(int n, int a, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == a - 1) {
    cur.push_back(n);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = n; e >= 0; --e) {
    cur.push_back(e);
    monomials(n - e, a, cur, out);
    cur.pop_back();
  }
}

// Weight multiplicities of S^d(S^n A): multisets of d monomials.
void multisets(const std::vector<std::vector<int>>& monos, std::size_t start, int left,
               std::vector<int>& weight, std::map<std::vector<int>, Integer>& count) {
  if (left == 0) {
    ++count[weight];
    return;
  }
  for (std::size_t i = start; i < monos.size(); ++i) {
    for (std::size_t k = 0; k < weight.size(); ++k) weight[k] += monos[i][k];
    multisets(monos, i, left - 1, weight, count);
    for (std::size_t k = 0; k < weight.size(); ++k) weight[k] -= monos[i][k];
  }
}

}  // namespace

Integer plethysm_multiplicity(const Partition& lambda, int d, int n, int a) {
  if (d < 1 || n < 1 || a < 1) throw std::invalid_argument("plethysm_multiplicity: d, n, a must be positive");
  if (lambda.size() != d * n) return 0;
  if (lambda.length() > static_cast<std::size_t>(a)) return 0;
  std::vector<std::vector<int>> monos;
  std::vector<int> cur;
  monomials(n, a, cur, monos);
  std::map<std::vector<int>, Integer> count;
  std::vector<int> weight(static_cast<std::size_t>(a), 0);
  multisets(monos, 0, d, weight, count);

  // mult = sum_w sgn(w) m(lambda + rho - w rho).
  std::vector<int> lam(static_cast<std::size_t>(a), 0);
  std::copy(lambda.parts().begin(), lambda.parts().end(), lam.begin());
  std::vector<int> perm(static_cast<std::size_t>(a));
  std::iota(perm.begin(), perm.end(), 0);
  Integer mult = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < a; ++i)
      for (int j = i + 1; j < a; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
    std::vector<int> w(static_cast<std::size_t>(a));
    for (int i = 0; i < a; ++i) {
      const int rho_i = a - 1 - i;
      const int wrho_i = a - 1 - perm[static_cast<std::size_t>(i)];
      w[static_cast<std::size_t>(i)] = lam[static_cast<std::size_t>(i)] + rho_i - wrho_i;
    }
    if (auto it = count.find(w); it != count.end()) {
      if (inversions % 2) mult -= it->second;
      else mult += it->second;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return mult;
}

bool weyl_zero_weight_invariant_exists(const Partition& lambda, int a) {
  const int size = lambda.size();
  if (a < 1) throw std::invalid_argument("weyl_zero_weight_invariant_exists: dim must be positive");
  if (size < 1) throw std::invalid_argument("weyl_zero_weight_invariant_exists: lambda must be nonempty");
  if (a > kMaxWeylDim)
    throw CapExceeded("weyl_zero_weight_invariant_exists: dim", static_cast<std::uint64_t>(a), kMaxWeylDim);
  if (size > kMaxWeylSize)
    throw CapExceeded("weyl_zero_weight_invariant_exists: |lambda|", static_cast<std::uint64_t>(size), kMaxWeylSize);
  if (size % a != 0)
    throw std::invalid_argument("weyl_zero_weight_invariant_exists: |lambda| = " + std::to_string(size) +
                                " is not divisible by dim " + std::to_string(a));
  for (int n = 1; n <= size; ++n) {
    if (size % n != 0) continue;
    if (plethysm_multiplicity(lambda, size / n, n, a) > 0) return true;
  }
  return false;
}

}  // namespace tensorlab
