#pragma once

// Dense tensors in V_1 (x) ... (x) V_n, stored row-major with the last index
// fastest. The same index order is used by every flattening and file format.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tensorlab/matrix.hpp"

namespace tensorlab {

/// Factor dimensions (dim V_1, ..., dim V_n). Nonempty, each at least 1.
class Shape {
 public:
  static constexpr std::size_t kMaxFactors = 12;

  Shape() = default;
  explicit Shape(std::vector<std::size_t> dims);

  std::size_t order() const { return dims_.size(); }
  std::size_t operator[](std::size_t k) const { return dims_[k]; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total() const;
  /// Row-major strides; stride of the last factor is 1.
  std::vector<std::size_t> strides() const;

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<std::size_t> dims_;
};

std::string to_string(const Shape& s);

/// Split of factor positions (0-based) into a nonempty left part I and its
/// nonempty complement.
class Bipartition {
 public:
  Bipartition(std::vector<std::size_t> left, std::size_t order);

  const std::vector<std::size_t>& left() const { return left_; }
  const std::vector<std::size_t>& right() const { return right_; }

 private:
  std::vector<std::size_t> left_;
  std::vector<std::size_t> right_;
};

/// All bipartitions up to swapping sides: those whose left part contains
/// position 0. There are 2^(n-1) - 1 of them.
std::vector<Bipartition> all_bipartitions(std::size_t order);

template <Scalar T>
class DenseTensor {
 public:
  using value_type = T;
  using ring_type = ring_t<T>;

  DenseTensor() = default;
  DenseTensor(Shape shape, ring_type ring = {})
      : shape_(std::move(shape)), ring_(ring), data_(shape_.total(), ring.zero()) {}
  DenseTensor(Shape shape, std::vector<T> data, ring_type ring = {})
      : shape_(std::move(shape)), ring_(ring), data_(std::move(data)) {
    if (data_.size() != shape_.total()) {
      throw std::invalid_argument("DenseTensor: expected " + std::to_string(shape_.total()) +
                                  " entries, got " + std::to_string(data_.size()));
    }
  }

  const Shape& shape() const { return shape_; }
  std::size_t order() const { return shape_.order(); }
  const ring_type& ring() const { return ring_; }
  std::span<const T> data() const { return data_; }
  std::span<T> data() { return data_; }

  T& operator[](std::size_t flat) { return data_[flat]; }
  const T& operator[](std::size_t flat) const { return data_[flat]; }

  const T& at(std::span<const std::size_t> index) const { return data_[offset(index)]; }
  T& at(std::span<const std::size_t> index) { return data_[offset(index)]; }

  std::size_t offset(std::span<const std::size_t> index) const {
    std::size_t off = 0;
    for (std::size_t k = 0; k < index.size(); ++k) off = off * shape_[k] + index[k];
    return off;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!tensorlab::is_zero(x)) return false;
    return true;
  }

  friend bool operator==(const DenseTensor& a, const DenseTensor& b) {
    return a.shape_ == b.shape_ && a.data_ == b.data_;
  }

 private:
  Shape shape_;
  ring_type ring_{};
  std::vector<T> data_;
};

/// Multi-index of a flat offset for the given shape.
std::vector<std::size_t> unflatten_index(const Shape& shape, std::size_t flat);

/// v_1 (x) ... (x) v_n. Throws on a zero vector (not a projective point).
template <Scalar T>
DenseTensor<T> rank_one(const std::vector<std::vector<T>>& vectors, const ring_t<T>& ring = {});

/// v^{(x) d}.
template <Scalar T>
DenseTensor<T> veronese_point(const std::vector<T>& v, std::size_t degree,
                              const ring_t<T>& ring = {});

/// (w_1)^{d_1} (x) ... (x) (w_n)^{d_n}, with sum(d_i) factors.
template <Scalar T>
DenseTensor<T> segre_veronese_point(const std::vector<std::vector<T>>& vectors,
                                    const std::vector<std::size_t>& degrees,
                                    const ring_t<T>& ring = {});

/// Rows enumerate the left multi-indices, columns the right ones, both
/// row-major in ascending factor position.
template <Scalar T>
Matrix<T> flatten(const DenseTensor<T>& t, const Bipartition& b);

/// Average over all index permutations. Needs equal factor dimensions; over
/// F_p needs p > order so that order! is invertible.
template <Scalar T>
DenseTensor<T> symmetrize(const DenseTensor<T>& t);

/// True iff the tensor is invariant under every adjacent index transposition.
template <Scalar T>
bool is_symmetric(const DenseTensor<T>& t);

/// Output factor k is input factor perm[k] (0-based positions).
template <Scalar T>
DenseTensor<T> braid(const DenseTensor<T>& t, const std::vector<std::size_t>& perm);

template <Scalar T>
DenseTensor<T> add(const DenseTensor<T>& a, const DenseTensor<T>& b);

template <Scalar T>
DenseTensor<T> scale(const DenseTensor<T>& a, const T& s);

/// Outer product a (x) b, factors of a first.
template <Scalar T>
DenseTensor<T> outer(const DenseTensor<T>& a, const DenseTensor<T>& b);

/// Integer entries uniform in [-10, 10] from a seeded mt19937_64.
template <Scalar T>
DenseTensor<T> random_tensor(const Shape& shape, const ring_t<T>& ring, std::uint64_t seed);

/// Entrywise image of a rational tensor in another ring.
template <Scalar T>
DenseTensor<T> convert_tensor(const DenseTensor<Rational>& t, const ring_t<T>& ring = {});

}  // namespace tensorlab
