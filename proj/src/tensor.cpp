#include "tensorlab/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace tensorlab {

Shape::Shape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("Shape: at least one factor required");
  if (dims_.size() > kMaxFactors) {
    throw std::invalid_argument("Shape: at most " + std::to_string(kMaxFactors) + " factors");
  }
  for (auto d : dims_)
    if (d == 0) throw std::invalid_argument("Shape: factor dimensions must be positive");
}

std::size_t Shape::total() const {
  std::size_t t = 1;
  for (auto d : dims_) t *= d;
  return t;
}

std::vector<std::size_t> Shape::strides() const {
  std::vector<std::size_t> s(dims_.size(), 1);
  for (std::size_t k = dims_.size(); k-- > 1;) s[k - 1] = s[k] * dims_[k];
  return s;
}

std::string to_string(const Shape& s) {
  std::string out;
  for (std::size_t k = 0; k < s.order(); ++k) {
    if (k) out += 'x';
    out += std::to_string(s[k]);
  }
  return out;
}

Bipartition::Bipartition(std::vector<std::size_t> left, std::size_t order)
    : left_(std::move(left)) {
  std::sort(left_.begin(), left_.end());
  if (left_.empty()) throw std::invalid_argument("Bipartition: left part is empty");
  if (std::adjacent_find(left_.begin(), left_.end()) != left_.end())
    throw std::invalid_argument("Bipartition: repeated position");
  if (left_.back() >= order) throw std::invalid_argument("Bipartition: position out of range");
  for (std::size_t k = 0; k < order; ++k)
    if (!std::binary_search(left_.begin(), left_.end(), k)) right_.push_back(k);
  if (right_.empty()) throw std::invalid_argument("Bipartition: right part is empty");
}

std::vector<Bipartition> all_bipartitions(std::size_t order) {
  std::vector<Bipartition> out;
  if (order < 2) return out;
  const std::size_t full = (std::size_t{1} << order) - 1;
  for (std::size_t mask = 1; mask < full; ++mask) {
    if (!(mask & 1)) continue;
    std::vector<std::size_t> left;
    for (std::size_t k = 0; k < order; ++k)
      if (mask >> k & 1) left.push_back(k);
    out.emplace_back(std::move(left), order);
  }
  return out;
}

std::vector<std::size_t> unflatten_index(const Shape& shape, std::size_t flat) {
  std::vector<std::size_t> idx(shape.order());
  for (std::size_t k = shape.order(); k-- > 0;) {
    idx[k] = flat % shape[k];
    flat /= shape[k];
  }
  return idx;
}

namespace {

template <Scalar T>
void require_nonzero(const std::vector<T>& v, const char* who) {
  if (v.empty() || std::all_of(v.begin(), v.end(), [](const T& x) { return is_zero(x); })) {
    throw std::invalid_argument(std::string(who) + ": zero vector is not a projective point");
  }
}

// Odometer over multi-indices of a shape, last index fastest.
bool advance(std::vector<std::size_t>& idx, const std::vector<std::size_t>& dims) {
  for (std::size_t k = idx.size(); k-- > 0;) {
    if (++idx[k] < dims[k]) return true;
    idx[k] = 0;
  }
  return false;
}

}  // namespace

template <Scalar T>
DenseTensor<T> rank_one(const std::vector<std::vector<T>>& vectors, const ring_t<T>& ring) {
  std::vector<std::size_t> dims;
  for (const auto& v : vectors) {
    require_nonzero(v, "rank_one");
    dims.push_back(v.size());
  }
  Shape shape(dims);
  std::vector<T> data(1, ring.one());
  for (const auto& v : vectors) {
    std::vector<T> next;
    next.reserve(data.size() * v.size());
    for (const auto& x : data)
      for (const auto& y : v) next.push_back(T(x * y));
    data = std::move(next);
  }
  return DenseTensor<T>(std::move(shape), std::move(data), ring);
}

template <Scalar T>
DenseTensor<T> veronese_point(const std::vector<T>& v, std::size_t degree,
                              const ring_t<T>& ring) {
  if (degree == 0) throw std::invalid_argument("veronese_point: degree must be at least 1");
  return rank_one(std::vector<std::vector<T>>(degree, v), ring);
}

template <Scalar T>
DenseTensor<T> segre_veronese_point(const std::vector<std::vector<T>>& vectors,
                                    const std::vector<std::size_t>& degrees,
                                    const ring_t<T>& ring) {
  if (vectors.size() != degrees.size())
    throw std::invalid_argument("segre_veronese_point: one degree per vector required");
  std::vector<std::vector<T>> factors;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (degrees[i] == 0) throw std::invalid_argument("segre_veronese_point: degree must be >= 1");
    for (std::size_t k = 0; k < degrees[i]; ++k) factors.push_back(vectors[i]);
  }
  return rank_one(factors, ring);
}

template <Scalar T>
Matrix<T> flatten(const DenseTensor<T>& t, const Bipartition& b) {
  const Shape& s = t.shape();
  if (b.left().back() >= s.order() || b.left().size() + b.right().size() != s.order())
    throw std::invalid_argument("flatten: bipartition does not match tensor order");
  const auto strides = s.strides();
  std::size_t rows = 1, cols = 1;
  for (auto k : b.left()) rows *= s[k];
  for (auto k : b.right()) cols *= s[k];
  // Offsets contributed by each left (row) and right (column) multi-index.
  auto offsets = [&](const std::vector<std::size_t>& pos) {
    std::vector<std::size_t> dims;
    for (auto k : pos) dims.push_back(s[k]);
    std::vector<std::size_t> out, idx(pos.size(), 0);
    do {
      std::size_t off = 0;
      for (std::size_t q = 0; q < pos.size(); ++q) off += idx[q] * strides[pos[q]];
      out.push_back(off);
    } while (advance(idx, dims));
    return out;
  };
  const auto row_off = offsets(b.left());
  const auto col_off = offsets(b.right());
  std::vector<T> e;
  e.reserve(rows * cols);
  for (auto r : row_off)
    for (auto c : col_off) e.push_back(t[r + c]);
  return Matrix<T>(rows, cols, std::move(e), t.ring());
}

template <Scalar T>
DenseTensor<T> braid(const DenseTensor<T>& t, const std::vector<std::size_t>& perm) {
  const std::size_t n = t.order();
  if (perm.size() != n) throw std::invalid_argument("braid: permutation length mismatch");
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (p >= n || seen[p]) throw std::invalid_argument("braid: not a permutation");
    seen[p] = true;
  }
  std::vector<std::size_t> dims(n);
  for (std::size_t k = 0; k < n; ++k) dims[k] = t.shape()[perm[k]];
  DenseTensor<T> out(Shape(dims), t.ring());
  const auto in_strides = t.shape().strides();
  std::vector<std::size_t> idx(n, 0);
  std::size_t flat = 0;
  do {
    std::size_t src = 0;
    for (std::size_t k = 0; k < n; ++k) src += idx[k] * in_strides[perm[k]];
    out[flat++] = t[src];
  } while (advance(idx, dims));
  return out;
}

template <Scalar T>
DenseTensor<T> symmetrize(const DenseTensor<T>& t) {
  const std::size_t d = t.order();
  for (std::size_t k = 1; k < d; ++k)
    if (t.shape()[k] != t.shape()[0])
      throw std::invalid_argument("symmetrize: factor dimensions differ");
  std::uint64_t fact = 1;
  for (std::size_t k = 2; k <= d; ++k) fact *= k;
  if constexpr (std::is_same_v<T, Fp>) {
    if (t.ring().modulus() <= d)
      throw std::invalid_argument("symmetrize: order! is not invertible in F_" +
                                  std::to_string(t.ring().modulus()));
  }
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  DenseTensor<T> acc(t.shape(), t.ring());
  do {
    acc = add(acc, braid(t, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  const T inv = T(t.ring().one() / t.ring().from_int(static_cast<std::int64_t>(fact)));
  return scale(acc, inv);
}

template <Scalar T>
bool is_symmetric(const DenseTensor<T>& t) {
  const std::size_t d = t.order();
  for (std::size_t k = 1; k < d; ++k)
    if (t.shape()[k] != t.shape()[0]) return false;
  std::vector<std::size_t> perm(d);
  for (std::size_t k = 0; k + 1 < d; ++k) {
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[k], perm[k + 1]);
    if (!(braid(t, perm) == t)) return false;
  }
  return true;
}

template <Scalar T>
DenseTensor<T> add(const DenseTensor<T>& a, const DenseTensor<T>& b) {
  if (!(a.shape() == b.shape())) throw std::invalid_argument("add: shape mismatch");
  DenseTensor<T> out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i) out[i] += b[i];
  return out;
}

template <Scalar T>
DenseTensor<T> scale(const DenseTensor<T>& a, const T& s) {
  DenseTensor<T> out = a;
  for (auto& x : out.data()) x *= s;
  return out;
}

template <Scalar T>
DenseTensor<T> outer(const DenseTensor<T>& a, const DenseTensor<T>& b) {
  std::vector<std::size_t> dims = a.shape().dims();
  dims.insert(dims.end(), b.shape().dims().begin(), b.shape().dims().end());
  std::vector<T> data;
  data.reserve(a.data().size() * b.data().size());
  for (const auto& x : a.data())
    for (const auto& y : b.data()) data.push_back(T(x * y));
  return DenseTensor<T>(Shape(dims), std::move(data), a.ring());
}

template <Scalar T>
DenseTensor<T> random_tensor(const Shape& shape, const ring_t<T>& ring, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> dist(-10, 10);
  std::vector<T> data;
  data.reserve(shape.total());
  for (std::size_t i = 0; i < shape.total(); ++i) data.push_back(ring.from_int(dist(gen)));
  return DenseTensor<T>(shape, std::move(data), ring);
}

template <Scalar T>
DenseTensor<T> convert_tensor(const DenseTensor<Rational>& t, const ring_t<T>& ring) {
  std::vector<T> data;
  data.reserve(t.data().size());
  for (const auto& x : t.data()) data.push_back(convert_scalar<T>(x, ring));
  return DenseTensor<T>(t.shape(), std::move(data), ring);
}

#define TENSORLAB_INSTANTIATE(T)                                                               \
  template DenseTensor<T> rank_one(const std::vector<std::vector<T>>&, const ring_t<T>&);     \
  template DenseTensor<T> veronese_point(const std::vector<T>&, std::size_t, const ring_t<T>&); \
  template DenseTensor<T> segre_veronese_point(const std::vector<std::vector<T>>&,            \
                                               const std::vector<std::size_t>&,               \
                                               const ring_t<T>&);                             \
  template Matrix<T> flatten(const DenseTensor<T>&, const Bipartition&);                      \
  template DenseTensor<T> symmetrize(const DenseTensor<T>&);                                  \
  template bool is_symmetric(const DenseTensor<T>&);                                          \
  template DenseTensor<T> braid(const DenseTensor<T>&, const std::vector<std::size_t>&);      \
  template DenseTensor<T> add(const DenseTensor<T>&, const DenseTensor<T>&);                  \
  template DenseTensor<T> scale(const DenseTensor<T>&, const T&);                             \
  template DenseTensor<T> outer(const DenseTensor<T>&, const DenseTensor<T>&);                \
  template DenseTensor<T> random_tensor(const Shape&, const ring_t<T>&, std::uint64_t);       \
  template DenseTensor<T> convert_tensor(const DenseTensor<Rational>&, const ring_t<T>&);

TENSORLAB_INSTANTIATE(Rational)
TENSORLAB_INSTANTIATE(Fp)
TENSORLAB_INSTANTIATE(double)

#undef TENSORLAB_INSTANTIATE

}  // namespace tensorlab
