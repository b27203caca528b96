#pragma once

// Computable rank notions: flattening (f-)ranks, multilinear rank, the
// flattening lower bound for border rank, exhaustive rank over tiny prime
// fields, the W-state, and Sylvester's catalecticant test for binary forms.

#include <cstdint>
#include <optional>
#include <vector>

#include "tensorlab/decomposition.hpp"
#include "tensorlab/tensor.hpp"

namespace tensorlab {

struct MultilinearRank {
  std::vector<std::size_t> ranks;
  friend bool operator==(const MultilinearRank&, const MultilinearRank&) = default;
};

/// Rank of the flattening; exact for Rational/F_p, numeric (1e-8) for floats.
template <Scalar T>
std::size_t f_rank(const DenseTensor<T>& t, const Bipartition& b);

/// r_i = rank of the factor-i-versus-rest flattening.
template <Scalar T>
MultilinearRank multilinear_rank(const DenseTensor<T>& t);

/// Largest f-rank over every bipartition.
template <Scalar T>
std::size_t border_rank_lower_bound(const DenseTensor<T>& t);

/// Result of exhaustive rank search over F_p. `rank` is empty when the tensor
/// needs more than r_max summands; `witness` then is empty too.
struct BruteForceRank {
  std::optional<std::size_t> rank;
  std::size_t r_max = 0;
  std::uint32_t modulus = 0;
  /// Number of normalized rank-one tensors enumerated.
  std::uint64_t rank_one_count = 0;
  std::optional<Decomposition<Fp>> witness;
};

inline constexpr std::size_t kBruteForceMaxEntries = 64;
inline constexpr std::size_t kBruteForceMaxR = 4;
/// Largest number of partial sums enumerated (or stored) in one pass.
inline constexpr std::uint64_t kBruteForceSearchCap = 60'000'000;
inline constexpr std::uint64_t kBruteForceTableCap = 8'000'000;

/// Smallest r <= r_max with t a sum of r rank-one tensors over F_p,
/// p in {2, 3, 5}. Factor vectors are normalized with first nonzero
/// coordinate 1 except the last factor, which absorbs the scale. The search
/// is meet-in-the-middle over sums of distinct rank-one tensors. Throws
/// CapExceeded when the search space is too large.
BruteForceRank exact_rank_bruteforce(const DenseTensor<Fp>& t, std::size_t r_max);

/// sum_k x (x) ... (x) y (position k) (x) ... (x) x with x = e_1, y = e_2.
template <Scalar T>
DenseTensor<T> w_state(std::size_t n, const ring_t<T>& ring = {});

/// The n-term decomposition of w_state(n) read off its definition.
template <Scalar T>
Decomposition<T> w_state_decomposition(std::size_t n, const ring_t<T>& ring = {});

/// Binary form sum_i coeffs[i] x^(d-i) y^i of degree d = coeffs.size() - 1.
struct BinaryForm {
  std::vector<Rational> coeffs;

  std::size_t degree() const { return coeffs.size() - 1; }
  bool is_zero() const;
};

/// (d-r+1) x (r+1) Hankel matrix with entries a_{i+j}, where
/// a_i = coeffs[i] / binom(d, i). A kernel vector g gives the degree-r form
/// q(s, t) = sum_j g_j s^(r-j) t^j, which vanishes at the nodes (alpha:beta)
/// of any decomposition f = sum lambda_k (alpha_k x + beta_k y)^d.
Matrix<Rational> catalecticant(const BinaryForm& f, std::size_t r);

/// q(s, t) = sum_j g_j s^(r-j) t^j has r distinct projective roots.
bool is_square_free_binary(const std::vector<Rational>& g);

struct SylvesterKernel {
  std::size_t rank = 0;
  /// Coefficients g_0..g_rank of a square-free form in the kernel.
  std::vector<Rational> kernel_form;
};

/// Walks r = 1, 2, ... until the r-th catalecticant has a square-free kernel
/// form. Terminates by r = d. Throws std::invalid_argument on the zero form.
SylvesterKernel sylvester_kernel(const BinaryForm& f);

/// Waring rank of a binary form.
std::size_t sylvester_symmetric_rank_binary(const BinaryForm& f);

}  // namespace tensorlab
