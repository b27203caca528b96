#include "tensorlab/matchgate.hpp"

#include <bit>
#include <cmath>
#include <set>
#include <unordered_map>

#include "tensorlab/errors.hpp"

namespace tensorlab {

template <Scalar T>
SkewMatrix<T> SkewMatrix<T>::from_matrix(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("SkewMatrix: matrix is not square");
  SkewMatrix s(m.rows(), m.ring());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!is_zero(m(i, i))) throw std::invalid_argument("SkewMatrix: nonzero diagonal entry");
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      if (!(m(i, j) == T(-m(j, i)))) throw std::invalid_argument("SkewMatrix: matrix is not skew-symmetric");
      s.set(i, j, m(i, j));
    }
  }
  return s;
}

template <Scalar T>
std::size_t SkewMatrix<T>::slot(std::size_t i, std::size_t j) const {
  // Row i of the strict upper triangle starts after sum_{q<i} (size-1-q).
  return i * (2 * size_ - i - 1) / 2 + (j - i - 1);
}

template <Scalar T>
T SkewMatrix<T>::operator()(std::size_t i, std::size_t j) const {
  if (i >= size_ || j >= size_) throw std::out_of_range("SkewMatrix: index out of range");
  if (i == j) return ring_.zero();
  if (i < j) return upper_[slot(i, j)];
  return T(-upper_[slot(j, i)]);
}

template <Scalar T>
void SkewMatrix<T>::set(std::size_t i, std::size_t j, const T& v) {
  if (i >= size_ || j >= size_) throw std::out_of_range("SkewMatrix: index out of range");
  if (i == j) throw std::invalid_argument("SkewMatrix: diagonal entries are zero");
  if (i < j) upper_[slot(i, j)] = v;
  else upper_[slot(j, i)] = T(-v);
}

template <Scalar T>
Matrix<T> SkewMatrix<T>::to_matrix() const {
  Matrix<T> m(size_, size_, ring_);
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

template <Scalar T>
void WeightedGraph<T>::validate() const {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : edges) {
    if (e.i == e.j) throw std::invalid_argument("graph: self-loop at node " + std::to_string(e.i));
    if (e.i > e.j) throw std::invalid_argument("graph: edges must be listed with i < j");
    if (e.j >= nodes)
      throw std::invalid_argument("graph: node " + std::to_string(e.j) + " out of range");
    if (!seen.emplace(e.i, e.j).second)
      throw std::invalid_argument("graph: duplicate edge " + std::to_string(e.i) + " " + std::to_string(e.j));
  }
}

template <Scalar T>
SkewMatrix<T> WeightedGraph<T>::skew_matrix(const std::vector<int>& signs) const {
  validate();
  if (!signs.empty() && signs.size() != edges.size())
    throw std::invalid_argument("graph: one sign per edge required");
  SkewMatrix<T> a(nodes, ring);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    T w = edges[e].weight;
    if (!signs.empty() && signs[e] < 0) w = T(-w);
    a.set(edges[e].i, edges[e].j, w);
  }
  return a;
}

template <Scalar T>
void SignatureVector<T>::validate() const {
  if (arity < 1) throw std::invalid_argument("signature: arity must be positive");
  std::size_t len = 1;
  for (std::size_t i = 0; i < wires; ++i) len *= arity;
  if (entries.size() != len)
    throw std::invalid_argument("signature: expected " + std::to_string(len) + " entries for " +
                                std::to_string(wires) + " wires, got " + std::to_string(entries.size()));
}

namespace {

template <Scalar T>
class PfaffianMemo {
 public:
  explicit PfaffianMemo(const SkewMatrix<T>& a) : a_(a) {}

  T operator()(std::uint32_t mask) {
    if (mask == 0) return a_.ring().one();
    if (std::popcount(mask) % 2) return a_.ring().zero();
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    const auto first = static_cast<std::size_t>(std::countr_zero(mask));
    const std::uint32_t rest = mask & ~(1u << first);
    T total = a_.ring().zero();
    bool negative = false;
    for (std::uint32_t m = rest; m; m &= m - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(m));
      const T aij = a_(first, j);
      if (!is_zero(aij)) {
        const T term = aij * (*this)(rest & ~(1u << j));
        if (negative) total -= term;
        else total += term;
      }
      negative = !negative;
    }
    memo_.emplace(mask, total);
    return total;
  }

 private:
  const SkewMatrix<T>& a_;
  std::unordered_map<std::uint32_t, T> memo_;
};

template <Scalar T>
bool equal_up_to_sign(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, double>) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(std::fabs(a) - std::fabs(b)) <= 1e-9 * scale;
  } else {
    return a == b || a == T(-b);
  }
}

}  // namespace

template <Scalar T>
T pfaffian(const SkewMatrix<T>& a) {
  if (a.size() > kMaxPfaffianSize)
    throw CapExceeded("pfaffian: matrix too large", a.size(), kMaxPfaffianSize);
  PfaffianMemo<T> pf(a);
  const std::uint32_t all = a.size() == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << a.size()) - 1);
  return pf(all);
}

template <Scalar T>
SignatureVector<T> sub_pfaffian_vector(const SkewMatrix<T>& a, const std::vector<std::size_t>& universe) {
  if (a.size() > kMaxPfaffianSize)
    throw CapExceeded("sub_pfaffian_vector: matrix too large", a.size(), kMaxPfaffianSize);
  std::set<std::size_t> distinct(universe.begin(), universe.end());
  if (distinct.size() != universe.size())
    throw std::invalid_argument("sub_pfaffian_vector: repeated node in universe");
  for (auto u : universe)
    if (u >= a.size()) throw std::invalid_argument("sub_pfaffian_vector: node out of range");
  PfaffianMemo<T> pf(a);
  const std::uint32_t all = a.size() == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << a.size()) - 1);
  SignatureVector<T> s{universe.size(), 2, {}, a.ring()};
  s.entries.reserve(std::size_t{1} << universe.size());
  for (std::uint32_t j = 0; j < (1u << universe.size()); ++j) {
    std::uint32_t mask = all;
    for (std::size_t i = 0; i < universe.size(); ++i)
      if (j >> i & 1u) mask &= ~(1u << universe[i]);
    s.entries.push_back(pf(mask));
  }
  return s;
}

template <Scalar T>
T count_matchings(const WeightedGraph<T>& g) {
  g.validate();
  if (g.nodes > kMaxMatchingNodes)
    throw CapExceeded("count_matchings: too many nodes", g.nodes, kMaxMatchingNodes);
  std::vector<std::vector<std::pair<std::size_t, T>>> adj(g.nodes);
  for (const auto& e : g.edges) adj[e.i].emplace_back(e.j, e.weight);
  std::unordered_map<std::uint32_t, T> memo;
  auto rec = [&](auto&& self, std::uint32_t mask) -> T {
    if (mask == 0) return g.ring.one();
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    const auto first = static_cast<std::size_t>(std::countr_zero(mask));
    T total = g.ring.zero();
    // Edges are stored at their smaller endpoint, which is `first` here.
    for (const auto& [j, w] : adj[first])
      if (mask >> j & 1u) total += T(w * self(self, mask & ~(1u << first) & ~(1u << j)));
    memo.emplace(mask, total);
    return total;
  };
  if (g.nodes % 2) return g.ring.zero();
  const std::uint32_t all = static_cast<std::uint32_t>((std::uint64_t{1} << g.nodes) - 1);
  return rec(rec, all);
}

template <Scalar T>
OrientationResult<T> pfaffian_orientation_search(const WeightedGraph<T>& g) {
  g.validate();
  const std::size_t e = g.edges.size();
  if (e > kMaxOrientationEdges)
    throw CapExceeded("pfaffian_orientation_search: too many edges", e, kMaxOrientationEdges);
  OrientationResult<T> out;
  out.matchings = count_matchings(g);
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << e); ++c) {
    std::vector<int> signs(e);
    for (std::size_t k = 0; k < e; ++k) signs[k] = (c >> (e - 1 - k) & 1u) ? -1 : 1;
    ++out.candidates_tried;
    if (equal_up_to_sign(pfaffian(g.skew_matrix(signs)), out.matchings)) {
      out.signs = std::move(signs);
      return out;
    }
  }
  return out;
}

template <Scalar T>
std::vector<T> mgi_residuals(const SignatureVector<T>& s) {
  s.validate();
  if (s.arity != 2) throw std::invalid_argument("mgi_residuals: needs a binary signature");
  if (s.wires > kMaxMgiWires)
    throw CapExceeded("mgi_residuals: too many wires", s.wires, kMaxMgiWires);
  const std::uint32_t n = 1u << s.wires;
  std::vector<T> out;
  out.reserve(std::size_t{n} * (n - 1) / 2);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b) {
      const std::uint32_t diff = a ^ b;
      T acc = s.ring.zero();
      bool negative = true;
      for (std::uint32_t m = diff; m; m &= m - 1) {
        const std::uint32_t t = m & (~m + 1);
        const T& x = s.entries[a ^ t];
        const T& y = s.entries[b ^ t];
        if (!is_zero(x) && !is_zero(y)) {
          if (negative) acc -= T(x * y);
          else acc += T(x * y);
        }
        negative = !negative;
      }
      out.push_back(std::move(acc));
    }
  return out;
}

template <Scalar T>
SignatureVector<T> transform_signature(const SignatureVector<T>& s, const Matrix<T>& b, TransformSide side) {
  s.validate();
  if (b.rows() != 2) throw std::invalid_argument("transform_signature: basis matrix must have 2 rows");
  const std::size_t c = b.cols();
  if (c < 1) throw std::invalid_argument("transform_signature: basis matrix needs a column");
  const Matrix<T> w = side == TransformSide::Generator ? b : b.transpose();
  if (s.arity != w.rows())
    throw std::invalid_argument("transform_signature: signature arity " + std::to_string(s.arity) +
                                " does not match the basis side " + std::to_string(w.rows()));
  // Contract one wire at a time: out[.., y, ..] = sum_x in[.., x, ..] w[x, y].
  std::vector<T> cur = s.entries;
  std::vector<std::size_t> dims(s.wires, w.rows());
  for (std::size_t wire = 0; wire < s.wires; ++wire) {
    std::size_t inner = 1, outer = 1;
    for (std::size_t q = 0; q < wire; ++q) inner *= dims[q];
    for (std::size_t q = wire + 1; q < s.wires; ++q) outer *= dims[q];
    std::vector<T> next(inner * w.cols() * outer, s.ring.zero());
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t x = 0; x < w.rows(); ++x)
        for (std::size_t y = 0; y < w.cols(); ++y) {
          const T& wxy = w(x, y);
          if (is_zero(wxy)) continue;
          for (std::size_t i = 0; i < inner; ++i)
            next[(o * w.cols() + y) * inner + i] += T(wxy * cur[(o * w.rows() + x) * inner + i]);
        }
    cur = std::move(next);
    dims[wire] = w.cols();
  }
  return SignatureVector<T>{s.wires, w.cols(), std::move(cur), s.ring};
}

#define TENSORLAB_INSTANTIATE(T)                                                                \
  template class SkewMatrix<T>;                                                                \
  template struct WeightedGraph<T>;                                                            \
  template struct SignatureVector<T>;                                                          \
  template T pfaffian(const SkewMatrix<T>&);                                                   \
  template SignatureVector<T> sub_pfaffian_vector(const SkewMatrix<T>&, const std::vector<std::size_t>&); \
  template T count_matchings(const WeightedGraph<T>&);                                         \
  template OrientationResult<T> pfaffian_orientation_search(const WeightedGraph<T>&);          \
  template std::vector<T> mgi_residuals(const SignatureVector<T>&);                            \
  template SignatureVector<T> transform_signature(const SignatureVector<T>&, const Matrix<T>&, TransformSide);

TENSORLAB_INSTANTIATE(Rational)
TENSORLAB_INSTANTIATE(Fp)
TENSORLAB_INSTANTIATE(double)

}  // namespace tensorlab
