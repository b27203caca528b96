#pragma once

// Tests on explicit decompositions: Gross's symmetry lemma, Kruskal's
// uniqueness condition, Sylvester's algorithm for binary forms, and direct
// sums for Strassen's additivity question.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "tensorlab/decomposition.hpp"
#include "tensorlab/rank.hpp"

namespace tensorlab {

enum class GrossVerdict { Symmetric, HypothesisNotMet, Asymmetric };

std::string to_string(GrossVerdict v);

struct IndependenceCheck {
  /// The subset I (|I| = d - 2) whose projections were tested.
  std::vector<std::size_t> subset;
  bool independent = false;
};

/// Summand i has a_i^(k) = scalars[k] * a_i^(0), the scalar read off the
/// first nonzero coordinate of a_i^(0).
struct ProportionalityCertificate {
  std::size_t summand = 0;
  bool proportional = false;
  std::vector<Rational> scalars;
};

struct GrossReport {
  std::vector<IndependenceCheck> independence;
  bool independence_ok = false;
  /// Whether alpha_i(T) was a symmetric matrix for every i and every I.
  bool contractions_symmetric = false;
  GrossVerdict verdict = GrossVerdict::HypothesisNotMet;
  bool symmetric_verdict = false;
  std::vector<ProportionalityCertificate> certificates;
  /// With a symmetric verdict: the summands as c * v (x) v (x) ... (x) v,
  /// the scale folded into the first factor.
  std::optional<Decomposition<Rational>> symmetric_form;
};

/// Throws std::invalid_argument unless t is symmetric of order > 2 and d
/// reconstructs t exactly.
GrossReport gross_check(const DenseTensor<Rational>& t, const Decomposition<Rational>& d);

/// True iff |D| equals the rank of some flattening ([0, k), [k, n)).
bool gross_minimality_check(const DenseTensor<Rational>& t, const Decomposition<Rational>& d);

inline constexpr std::size_t kKruskalMaxColumns = 12;

/// Largest k such that every k columns are independent; 0 if a column is
/// zero. Throws CapExceeded past kKruskalMaxColumns columns.
template <Scalar T>
std::size_t kruskal_rank(const Matrix<T>& m);

/// Columns are the factor vectors a_i^(k) of the given factor.
template <Scalar T>
Matrix<T> factor_matrix(const Decomposition<T>& d, std::size_t factor);

/// k_1 + k_2 + k_3 >= 2r + 2, or r <= 1. Needs exactly three factors.
template <Scalar T>
bool kruskal_uniqueness(const Decomposition<T>& d);

/// The symmetric tensor in (Q^2)^{(x) d} of the binary form.
DenseTensor<Rational> binary_form_tensor(const BinaryForm& f);

struct WaringTerm {
  Rational coeff;
  Rational alpha;
  Rational beta;
};

struct WaringTermNumeric {
  std::complex<double> coeff;
  std::complex<double> alpha;
  std::complex<double> beta;
};

/// f = sum_i c_i (alpha_i x + beta_i y)^d.
struct BinaryWaring {
  enum class Status { Decomposed, RankExceedsGenericBound };

  Status status = Status::Decomposed;
  std::size_t degree = 0;
  std::size_t rank = 0;
  /// Exact path: every node rational.
  bool exact = false;
  std::vector<WaringTerm> terms;
  /// Float path, also filled (by conversion) on the exact path.
  std::vector<WaringTermNumeric> numeric_terms;
  /// ||reconstructed - f|| / ||f|| on the coefficient vector; 0 on the
  /// exact path.
  double relative_residual = 0.0;

  /// Symmetric tensor decomposition with c_i folded into the first factor.
  /// Exact path only.
  Decomposition<Rational> to_decomposition() const;
};

inline constexpr double kWaringResidualTol = 1e-8;

BinaryWaring sylvester_decompose_binary(const BinaryForm& f);

/// Block-diagonal embedding of a and b in (A1+A2) (x) ... (x) (An+Bn).
template <Scalar T>
DenseTensor<T> direct_sum(const DenseTensor<T>& a, const DenseTensor<T>& b);

struct StrassenRecord {
  std::optional<std::size_t> r1;
  std::optional<std::size_t> r2;
  std::optional<std::size_t> r_sum;
  std::size_t r_max = 0;
  /// Set when all three ranks are known.
  std::optional<bool> additive;
};

/// Exhaustive ranks of t1, t2 and t1 + t2 (direct sum) over F_p. A missing
/// rank means it exceeds r_max.
StrassenRecord strassen_experiment(const DenseTensor<Fp>& t1, const DenseTensor<Fp>& t2,
                                   std::size_t r_max);

}  // namespace tensorlab
