#pragma once

// Minimum rank of linear spaces of matrices, tensor products of such spaces,
// the Gurvits family S_2n = span{M (x) I_n, I_2n}, and entanglement entropy.

#include <cstdint>
#include <vector>

#include "tensorlab/matrix.hpp"

namespace tensorlab {

template <ExactScalar T>
struct MatrixSubspace {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Matrix<T>> basis;
  ring_t<T> ring{};

  /// Throws std::invalid_argument on shape mismatch or a dependent basis.
  void validate() const;
  std::size_t dimension() const { return basis.size(); }
};

/// Validated subspace spanned by the given independent matrices.
template <ExactScalar T>
MatrixSubspace<T> make_subspace(std::vector<Matrix<T>> basis);

inline constexpr std::uint64_t kMaxMinRankEnumeration = 1'000'000;

/// Exact minimum rank over all nonzero elements, enumerating coefficient
/// vectors whose first nonzero entry is 1. Needs p^dim <= 10^6.
std::size_t min_rank_exact_fp(const MatrixSubspace<Fp>& s);

struct MinRankSample {
  /// An upper bound only: the minimum over the elements tried.
  std::size_t upper_bound = 0;
  Matrix<Rational> witness;
  std::size_t elements_tried = 0;
};

/// Basis elements, pairwise sums and differences, then `trials` random
/// combinations with integer coefficients in [-10, 10].
MinRankSample min_rank_sample(const MatrixSubspace<Rational>& s, std::size_t trials, std::uint64_t seed);

/// S1 (x) S2 under the braiding (A1 (x) B1) (x) (A2 (x) B2) ->
/// (A1 (x) A2) (x) (B1 (x) B2): rows index A1 (x) A2, columns B1 (x) B2.
template <ExactScalar T>
MatrixSubspace<T> tensor_subspace(const MatrixSubspace<T>& s1, const MatrixSubspace<T>& s2);

/// a (x) b as an element of the braided space above.
template <Scalar T>
Matrix<T> braided_product(const Matrix<T>& a, const Matrix<T>& b);

/// M = [[0, 1], [-1, 0]].
Matrix<Rational> gurvits_m();
/// span{M, I_2}.
MatrixSubspace<Rational> gurvits_x();
/// span{M (x) I_n, I_2n}.
MatrixSubspace<Rational> gurvits_s(std::size_t n);

inline constexpr std::size_t kMaxGurvitsN = 8;

struct GurvitsSample {
  /// Coefficients of a M (x) I_n + b I_2n.
  Rational a;
  Rational b;
  std::size_t rank = 0;
};

struct GurvitsRecord {
  std::size_t n = 0;
  std::vector<GurvitsSample> samples;
  /// M has no real eigenvalue (negative discriminant of its characteristic
  /// polynomial), so every nonzero a M (x) I_n + b I_2n is invertible.
  bool no_real_eigenvalues = false;
  std::size_t minrank_x = 0;
  /// rank((M (x) I_n) (x) (M (x) I_n) -/+ I_{4n^2}).
  std::size_t witness_rank_minus = 0;
  std::size_t witness_rank_plus = 0;
  /// minrank_x^2 - witness_rank_minus.
  std::size_t decrement = 0;
};

GurvitsRecord gurvits_construction(std::size_t n);

/// (M (x) I_n) (x) (M (x) I_n) - I in the braided matrix form.
Matrix<Rational> gurvits_witness(std::size_t n);

struct BipartiteVector {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::vector<double> data;

  /// dim_a x dim_b, row-major.
  Matrix<double> matrix() const;
};

BipartiteVector as_bipartite(const Matrix<double>& m);

enum class LogBase { E, Two };

/// Shannon entropy of the squared Schmidt coefficients of the normalized
/// vector. Weights below 1e-20 (singular values below 1e-10 relative) count
/// as zero. Throws std::invalid_argument on the zero vector.
double entanglement_entropy(const BipartiteVector& v, LogBase base = LogBase::E);

struct FriedlandRecord {
  std::size_t n = 0;
  /// 2 log(2n): each factor alone has minimal entropy log(2n).
  double sum_of_mins = 0.0;
  /// Smallest entropy seen over sampled elements of S_2n.
  double sampled_min = 0.0;
  std::size_t samples = 0;
  /// Entropy of the Gurvits witness, log(2n^2).
  double joint_min_upper = 0.0;
  double margin = 0.0;
  bool violated = false;
};

FriedlandRecord friedland_check(std::size_t n, std::size_t samples = 1000, std::uint64_t seed = 0);

}  // namespace tensorlab
