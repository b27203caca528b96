#pragma once

// Secant-variety dimensions by Terracini's lemma: the affine cone over
// sigma_r(X) at a generic point of the span of r generic points of X has
// tangent space equal to the span of the tangent spaces at those points.
// Ranks are computed exactly over Q at integer sample points, so every
// reported dimension is a certified lower bound that is exact with
// probability one.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tensorlab/matrix.hpp"
#include "tensorlab/tensor.hpp"

namespace tensorlab::terracini {

/// Seg(P^{d_1-1} x ... x P^{d_n-1}).
struct Segre {
  std::vector<std::size_t> dims;
};
/// v_d(P^{n-1}); n is the dimension of the underlying vector space.
struct Veronese {
  std::size_t n = 0;
  std::size_t d = 0;
};
struct SegreVeronese {
  std::vector<std::size_t> dims;
  std::vector<std::size_t> degrees;
};
/// Sub_{r_1,...,r_n}(V_1 (x) ... (x) V_n).
struct Subspace {
  std::vector<std::size_t> dims;
  std::vector<std::size_t> ranks;
};
/// Sub_r(S^d V): symmetric tensors lying in S^d A for some r-dimensional A.
struct SymSubspace {
  std::size_t dim = 0;
  std::size_t r = 0;
  std::size_t d = 0;
};

using VarietySpec = std::variant<Segre, Veronese, SegreVeronese, Subspace, SymSubspace>;

/// Throws std::invalid_argument when dimensions, degrees or multiranks are
/// out of range.
void validate(const VarietySpec& spec);

/// Compact grammar: segre:d1,d2,... | veronese:n,d | segver:d1,d2@e1,e2 |
/// sub:d1,d2,d3@r1,r2,r3 | symsub:n,r@d.
VarietySpec parse_variety(std::string_view text);
std::string to_string(const VarietySpec& spec);

/// Dimension of the affine cone over X.
std::size_t cone_dimension(const VarietySpec& spec);
/// Dimension of the linear span the variety lives in (symmetric spaces for
/// Veronese-type varieties).
std::size_t ambient_dimension(const VarietySpec& spec);
/// Shape of the dense tensor space the tangent vectors are written in.
Shape dense_shape(const VarietySpec& spec);

/// Parameters of one point of X. Segre-type varieties use `vectors` (one per
/// factor); subspace varieties use `core` and `maps` (d_i x r_i matrices, or a
/// single dim x r matrix for SymSubspace).
struct PointParams {
  std::vector<std::vector<Rational>> vectors;
  std::optional<DenseTensor<Rational>> core;
  std::vector<Matrix<Rational>> maps;
};

inline constexpr std::size_t kMaxAmbient = 20000;
inline constexpr int kMaxResamples = 10;

/// Random point with integer coordinates in [-10, 10]. Zero factor vectors
/// are redrawn up to kMaxResamples times.
PointParams sample_point(const VarietySpec& spec, std::mt19937_64& gen);

/// Spanning set of the affine tangent space at the point, as dense ambient
/// vectors. Throws std::invalid_argument on a zero factor.
std::vector<std::vector<Rational>> affine_tangent_basis(const VarietySpec& spec,
                                                        const PointParams& point);

struct SecantReport {
  std::string variety;
  std::size_t r = 0;
  std::size_t ambient_affine_dim = 0;
  std::size_t computed_affine_dim = 0;
  std::size_t expected_affine_dim = 0;
  std::size_t defect = 0;
  std::size_t trials = 0;
};

/// Stacks tangent spaces at r sampled points and takes the exact rank; the
/// maximum over `trials` independent samples is reported.
SecantReport secant_dimension(const VarietySpec& spec, std::size_t r, std::size_t trials = 3,
                              std::uint64_t seed = 0);

struct GenericRankReport {
  std::size_t generic_rank = 0;
  /// One report for each r = 1 .. generic_rank.
  std::vector<SecantReport> profile;
};

/// Smallest r whose secant fills the ambient space.
GenericRankReport generic_rank(const VarietySpec& spec, std::size_t trials = 3,
                               std::uint64_t seed = 0);

/// Reports for every (spec, r) with r in [r_min, r_max]; when r_max is empty
/// the range for each spec runs up to its generic rank. Cells are independent
/// and may run in parallel; the output order is (spec, r).
std::vector<SecantReport> defect_scan(const std::vector<VarietySpec>& family, std::size_t r_min,
                                      std::optional<std::size_t> r_max, std::size_t trials = 3,
                                      std::uint64_t seed = 0);

}  // namespace tensorlab::terracini
