#pragma once

// Characters of the symmetric group by the Murnaghan-Nakayama rule, Kronecker
// coefficients by character sums, and small plethysm multiplicities by weight
// enumeration.

#include <string>
#include <string_view>
#include <vector>

#include "tensorlab/scalar.hpp"

namespace tensorlab {

/// Weakly decreasing positive parts; the empty partition is allowed.
class Partition {
 public:
  Partition() = default;
  /// Throws std::invalid_argument unless parts are positive and weakly
  /// decreasing.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int size() const;
  std::size_t length() const { return parts_.size(); }
  Partition conjugate() const;
  /// Each part multiplied by k.
  Partition stretched(int k) const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// Comma-joined parts; "" for the empty partition.
std::string to_string(const Partition& p);
/// Inverse of to_string; also accepts surrounding parentheses.
Partition parse_partition(std::string_view text);

inline constexpr int kMaxPartitionN = 20;
inline constexpr int kMaxCharacterN = 16;
inline constexpr int kMaxKroneckerN = 14;

/// Every partition of n, reverse lexicographic: (n), (n-1,1), ...
std::vector<Partition> partitions_of(int n);

/// chi_lambda at the class of cycle type mu.
Integer character(const Partition& lambda, const Partition& mu);

struct ClassData {
  Partition cycle_type;
  Integer size;
};

struct CharacterTable {
  int n = 0;
  /// Irreducibles and classes are both indexed by partitions_of(n).
  std::vector<Partition> partitions;
  std::vector<ClassData> classes;
  /// values[i][j] = chi_{partitions[i]}(classes[j]).
  std::vector<std::vector<Integer>> values;

  std::size_t index(const Partition& p) const;
};

/// Built once per n and cached; safe to call concurrently.
const CharacterTable& character_table(int n);

/// n! / z_mu.
Integer class_size(const Partition& mu);

/// (1/n!) sum_classes |C| chi_lambda chi_mu chi_nu. Throws
/// std::invalid_argument on unequal sizes and CapExceeded past
/// kMaxKroneckerN.
Integer kronecker_coefficient(const Partition& lambda, const Partition& mu, const Partition& nu);

/// n parts equal to d.
Partition rectangle(int d, int n);

struct RectangularKronecker {
  /// K(lambda, rectangle(d, n), rectangle(d, n)).
  Integer coefficient;
  /// The same with d parts equal to n.
  Integer conjugate_coefficient;
  /// l(lambda) > n^2, so S_lambda(A (x) B) vanishes for dim A = dim B = n.
  bool exceeds_length = false;
};

RectangularKronecker rectangular_kronecker(const Partition& lambda, int d, int n);

struct KroneckerTriple {
  Partition lambda;
  Partition mu;
  Partition nu;
  Integer coefficient;
};

struct StretchCheck {
  KroneckerTriple triple;
  Integer doubled;
  bool holds = false;
};

struct ConeSample {
  /// Triples with K > 0 and l(lambda) <= p, l(mu) <= q, l(nu) <= r.
  std::vector<KroneckerTriple> positive;
  /// K(2 lambda, 2 mu, 2 nu) for every positive triple whose doubled size is
  /// within kMaxKroneckerN.
  std::vector<StretchCheck> stretch;
};

inline constexpr int kMaxConeDim = 4;
inline constexpr int kMaxConeN = 10;

/// Sizes 1..n_max.
ConeSample cone_sample(int p, int q, int r, int n_max);

/// Multiplicity of S_lambda A in S^d(S^n A), dim A = a.
Integer plethysm_multiplicity(const Partition& lambda, int d, int n, int a);

inline constexpr int kMaxWeylSize = 12;
inline constexpr int kMaxWeylDim = 4;

/// Whether S_lambda A occurs in S^d(S^n A) for some d * n = |lambda|. Needs
/// a to divide |lambda|.
bool weyl_zero_weight_invariant_exists(const Partition& lambda, int a);

}  // namespace tensorlab
