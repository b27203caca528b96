#pragma once

// Text and JSON formats: tensors ("tensor v1"), graphs ("graph v1"),
// signatures, matrix subspaces and decompositions. Rationals are always
// written as "p/q" strings (or integers), never as floats.

#include <json.hpp>

#include <string>
#include <string_view>
#include <variant>

#include "tensorlab/decomposition.hpp"
#include "tensorlab/matchgate.hpp"
#include "tensorlab/minrank.hpp"
#include "tensorlab/tensor.hpp"

namespace tensorlab::io {

using Json = nlohmann::json;

using AnyTensor = std::variant<DenseTensor<Rational>, DenseTensor<Fp>, DenseTensor<double>>;

/// Parses "rational", "fp <p>" or "float".
std::variant<RationalRing, PrimeRing, FloatRing> parse_ring(std::string_view tag);

/// Canonical form: header, dims, ring tag, then one line per run of the
/// last factor.
template <Scalar T>
std::string format_tensor(const DenseTensor<T>& t);
std::string format_tensor(const AnyTensor& t);

/// Accepts any whitespace layout of the entries; F_p entries may be any
/// rational whose denominator is prime to p.
AnyTensor parse_tensor(std::string_view text);

std::string read_file(const std::string& path);

/// "graph v1", node count, then one "i j weight" line per edge (0-based).
std::string format_graph(const WeightedGraph<Rational>& g);
WeightedGraph<Rational> parse_graph(std::string_view text);

template <Scalar T>
Json scalar_json(const T& x);

Rational json_rational(const Json& j);

/// JSON array of entries ordered by subset index.
template <Scalar T>
Json signature_json(const SignatureVector<T>& s);
/// Binary signature; the length must be a power of two.
SignatureVector<Rational> parse_signature(const Json& j);

/// {"rows", "cols", "ring", "basis": [[row-major entries], ...]}.
template <ExactScalar T>
Json subspace_json(const MatrixSubspace<T>& s);
std::variant<MatrixSubspace<Rational>, MatrixSubspace<Fp>> parse_subspace(const Json& j);

template <Scalar T>
Json matrix_json(const Matrix<T>& m);

/// {"shape", "ring", "summands": [[[factor vector], ...], ...]}.
template <Scalar T>
Json decomposition_json(const Decomposition<T>& d);
Decomposition<Rational> parse_decomposition(const Json& j);

}  // namespace tensorlab::io
