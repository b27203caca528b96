#pragma once

// Pfaffians, sub-Pfaffian signatures, perfect-matching counts and the
// Pfaffian (Grassmann-Plucker type) identities for matchgates.

#include <cstdint>
#include <optional>
#include <vector>

#include "tensorlab/matrix.hpp"

namespace tensorlab {

/// Skew-symmetric matrix stored by its strict upper triangle.
template <Scalar T>
class SkewMatrix {
 public:
  SkewMatrix() = default;
  explicit SkewMatrix(std::size_t size, ring_t<T> ring = {})
      : size_(size), ring_(ring), upper_(size * (size > 0 ? size - 1 : 0) / 2, ring.zero()) {}

  /// Throws std::invalid_argument unless m is square and skew-symmetric.
  static SkewMatrix from_matrix(const Matrix<T>& m);

  std::size_t size() const { return size_; }
  const ring_t<T>& ring() const { return ring_; }

  /// a_ij, with a_ji = -a_ij and a_ii = 0.
  T operator()(std::size_t i, std::size_t j) const;
  /// Sets a_ij (and so a_ji = -v); i != j.
  void set(std::size_t i, std::size_t j, const T& v);

  Matrix<T> to_matrix() const;

 private:
  std::size_t slot(std::size_t i, std::size_t j) const;

  std::size_t size_ = 0;
  ring_t<T> ring_{};
  std::vector<T> upper_;
};

template <Scalar T>
struct WeightedEdge {
  std::size_t i = 0;
  std::size_t j = 0;
  T weight;
};

template <Scalar T>
struct WeightedGraph {
  std::size_t nodes = 0;
  std::vector<WeightedEdge<T>> edges;
  ring_t<T> ring{};

  /// Throws on self-loops, duplicate edges, i >= j or nodes out of range.
  void validate() const;
  /// a_ij = sign_e * w_e for edge e = (i, j), i < j; all signs + when empty.
  SkewMatrix<T> skew_matrix(const std::vector<int>& signs = {}) const;
};

/// Values indexed little-endian: for arity c the entry of (j_0, ..., j_{k-1})
/// sits at sum_i j_i c^i. For arity 2 this is the subset encoding, bit i set
/// iff wire i is present.
template <Scalar T>
struct SignatureVector {
  std::size_t wires = 0;
  std::size_t arity = 2;
  std::vector<T> entries;
  ring_t<T> ring{};

  void validate() const;
  friend bool operator==(const SignatureVector& a, const SignatureVector& b) {
    return a.wires == b.wires && a.arity == b.arity && a.entries == b.entries;
  }
};

inline constexpr std::size_t kMaxPfaffianSize = 24;

/// Expansion along the first remaining row, memoized over node subsets.
/// Pf of the empty matrix is 1, of odd size 0.
template <Scalar T>
T pfaffian(const SkewMatrix<T>& a);

/// Entry at J (bit i <-> universe[i]) is the Pfaffian with the rows and
/// columns in J deleted.
template <Scalar T>
SignatureVector<T> sub_pfaffian_vector(const SkewMatrix<T>& a, const std::vector<std::size_t>& universe);

inline constexpr std::size_t kMaxMatchingNodes = 16;

/// Sum over perfect matchings of the product of edge weights.
template <Scalar T>
T count_matchings(const WeightedGraph<T>& g);

inline constexpr std::size_t kMaxOrientationEdges = 20;

template <Scalar T>
struct OrientationResult {
  /// +1 / -1 per edge, or empty when no orientation works.
  std::optional<std::vector<int>> signs;
  std::uint64_t candidates_tried = 0;
  T matchings;
};

/// Sign vectors in lexicographic order (edge 0 most significant, + before
/// -); the first whose Pfaffian equals the matching count up to sign wins.
template <Scalar T>
OrientationResult<T> pfaffian_orientation_search(const WeightedGraph<T>& g);

inline constexpr std::size_t kMaxMgiWires = 10;

/// For every pair of subsets a < b (as integers) with a xor b nonempty and
/// elements t_1 < ... < t_m of a xor b, the residual
/// sum_i (-1)^i s(a xor t_i) s(b xor t_i). All vanish on sub-Pfaffian
/// vectors.
template <Scalar T>
std::vector<T> mgi_residuals(const SignatureVector<T>& s);

enum class TransformSide { Generator, Recognizer };

/// b is 2 x c. Generator: binary input, c-ary output,
///   out(j) = sum_S s(S) prod_i b[bit_i(S), j_i].
/// Recognizer: c-ary input, binary output,
///   out(S) = sum_j s(j) prod_i b[bit_i(S), j_i].
template <Scalar T>
SignatureVector<T> transform_signature(const SignatureVector<T>& s, const Matrix<T>& b, TransformSide side);

}  // namespace tensorlab
