#include "tensorlab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace tensorlab::io {

namespace {

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(std::move(line));
  }
  return out;
}

std::vector<std::string> tokens_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string tok; in >> tok;) out.push_back(std::move(tok));
  return out;
}

std::size_t parse_count(const std::string& tok, const char* what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != tok.size() || v < 0)
    throw std::invalid_argument(std::string(what) + ": malformed count '" + tok + "'");
  return static_cast<std::size_t>(v);
}

double parse_double(const std::string& tok) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != tok.size() || !std::isfinite(v))
    throw std::invalid_argument("tensor: malformed float entry '" + tok + "'");
  return v;
}

template <Scalar T>
std::string ring_tag(const ring_t<T>& ring) {
  return ring.tag();
}

}  // namespace

std::variant<RationalRing, PrimeRing, FloatRing> parse_ring(std::string_view tag) {
  const auto toks = tokens_of(tag);
  if (toks.size() == 1 && toks[0] == "rational") return RationalRing{};
  if (toks.size() == 1 && toks[0] == "float") return FloatRing{};
  if (toks.size() == 2 && toks[0] == "fp") {
    const auto p = parse_count(toks[1], "ring");
    if (p > 0xffffffffu) throw std::invalid_argument("ring: modulus too large");
    return PrimeRing(static_cast<std::uint32_t>(p));
  }
  throw std::invalid_argument("ring: unknown tag '" + std::string(tag) +
                              "' (expected rational, fp <p> or float)");
}

template <Scalar T>
std::string format_tensor(const DenseTensor<T>& t) {
  std::string s = "tensor v1\n";
  const auto& dims = t.shape().dims();
  for (std::size_t k = 0; k < dims.size(); ++k) s += (k ? " " : "") + std::to_string(dims[k]);
  s += "\n" + ring_tag<T>(t.ring()) + "\n";
  const std::size_t run = dims.back();
  for (std::size_t i = 0; i < t.data().size(); ++i) {
    s += to_string(t[i]);
    s += (i + 1) % run == 0 ? "\n" : " ";
  }
  return s;
}

std::string format_tensor(const AnyTensor& t) {
  return std::visit([](const auto& x) { return format_tensor(x); }, t);
}

AnyTensor parse_tensor(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.size() < 3 || lines[0] != "tensor v1")
    throw std::invalid_argument("tensor: expected header line 'tensor v1'");
  std::vector<std::size_t> dims;
  for (const auto& tok : tokens_of(lines[1])) dims.push_back(parse_count(tok, "tensor dims"));
  const Shape shape(dims);
  std::string rest;
  for (std::size_t i = 3; i < lines.size(); ++i) rest += lines[i] + "\n";
  const auto toks = tokens_of(rest);
  if (toks.size() != shape.total())
    throw std::invalid_argument("tensor: expected " + std::to_string(shape.total()) + " entries, got " +
                                std::to_string(toks.size()));
  return std::visit(
      [&](const auto& ring) -> AnyTensor {
        using R = std::decay_t<decltype(ring)>;
        using T = typename R::value_type;
        std::vector<T> data;
        data.reserve(toks.size());
        for (const auto& tok : toks) {
          if constexpr (std::is_same_v<T, double>) {
            data.push_back(parse_double(tok));
          } else {
            data.push_back(convert_scalar<T>(parse_rational(tok), ring));
          }
        }
        return DenseTensor<T>(shape, std::move(data), ring);
      },
      parse_ring(lines[2]));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_graph(const WeightedGraph<Rational>& g) {
  g.validate();
  std::string s = "graph v1\n" + std::to_string(g.nodes) + "\n";
  for (const auto& e : g.edges)
    s += std::to_string(e.i) + " " + std::to_string(e.j) + " " + to_string(e.weight) + "\n";
  return s;
}

WeightedGraph<Rational> parse_graph(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.size() < 2 || lines[0] != "graph v1")
    throw std::invalid_argument("graph: expected header line 'graph v1'");
  const auto head = tokens_of(lines[1]);
  if (head.size() != 1) throw std::invalid_argument("graph: second line must hold the node count");
  WeightedGraph<Rational> g;
  g.nodes = parse_count(head[0], "graph node count");
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto toks = tokens_of(lines[i]);
    if (toks.empty()) continue;
    if (toks.size() != 3)
      throw std::invalid_argument("graph: line " + std::to_string(i + 1) + " must be 'i j weight'");
    g.edges.push_back({parse_count(toks[0], "graph node"), parse_count(toks[1], "graph node"),
                       parse_rational(toks[2])});
  }
  g.validate();
  return g;
}

template <Scalar T>
Json scalar_json(const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    return x;
  } else {
    return to_string(x);
  }
}

Rational json_rational(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("expected a rational as \"p/q\" string or integer, got " + j.dump());
}

template <Scalar T>
Json signature_json(const SignatureVector<T>& s) {
  Json a = Json::array();
  for (const auto& x : s.entries) a.push_back(scalar_json(x));
  return a;
}

SignatureVector<Rational> parse_signature(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("signature: expected a JSON array");
  SignatureVector<Rational> s;
  const std::size_t n = j.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("signature: length " + std::to_string(n) + " is not a power of two");
  while ((std::size_t{1} << s.wires) < n) ++s.wires;
  for (const auto& x : j) s.entries.push_back(json_rational(x));
  return s;
}

template <Scalar T>
Json matrix_json(const Matrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(scalar_json(m(i, k)));
    rows.push_back(std::move(r));
  }
  return rows;
}

template <ExactScalar T>
Json subspace_json(const MatrixSubspace<T>& s) {
  Json basis = Json::array();
  for (const auto& m : s.basis) {
    Json flat = Json::array();
    for (const auto& x : m.entries()) flat.push_back(scalar_json(x));
    basis.push_back(std::move(flat));
  }
  return Json{{"rows", s.rows}, {"cols", s.cols}, {"ring", s.ring.tag()}, {"basis", std::move(basis)}};
}

std::variant<MatrixSubspace<Rational>, MatrixSubspace<Fp>> parse_subspace(const Json& j) {
  for (const char* key : {"rows", "cols", "basis"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("subspace: missing field '") + key + "'");
  for (const auto& [key, _] : j.items())
    if (key != "rows" && key != "cols" && key != "basis" && key != "ring")
      throw std::invalid_argument("subspace: unknown field '" + key + "'");
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto ring = parse_ring(j.value("ring", std::string("rational")));
  return std::visit(
      [&](const auto& r) -> std::variant<MatrixSubspace<Rational>, MatrixSubspace<Fp>> {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, FloatRing>) {
          throw std::invalid_argument("subspace: ring must be exact");
        } else {
          using T = typename R::value_type;
          std::vector<Matrix<T>> basis;
          for (const auto& flat : j.at("basis")) {
            if (!flat.is_array() || flat.size() != rows * cols)
              throw std::invalid_argument("subspace: each basis matrix needs " + std::to_string(rows * cols) +
                                          " entries");
            std::vector<T> e;
            for (const auto& x : flat) e.push_back(convert_scalar<T>(json_rational(x), r));
            basis.emplace_back(rows, cols, std::move(e), r);
          }
          return make_subspace(std::move(basis));
        }
      },
      ring);
}

template <Scalar T>
Json decomposition_json(const Decomposition<T>& d) {
  Json summands = Json::array();
  for (const auto& s : d.summands) {
    Json factors = Json::array();
    for (const auto& v : s) {
      Json vec = Json::array();
      for (const auto& x : v) vec.push_back(scalar_json(x));
      factors.push_back(std::move(vec));
    }
    summands.push_back(std::move(factors));
  }
  return Json{{"shape", d.shape.dims()}, {"ring", d.ring.tag()}, {"summands", std::move(summands)}};
}

Decomposition<Rational> parse_decomposition(const Json& j) {
  for (const char* key : {"shape", "summands"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("decomposition: missing field '") + key + "'");
  if (j.value("ring", std::string("rational")) != "rational")
    throw std::invalid_argument("decomposition: only rational decompositions are read");
  Decomposition<Rational> d;
  d.shape = Shape(j.at("shape").get<std::vector<std::size_t>>());
  for (const auto& s : j.at("summands")) {
    Decomposition<Rational>::Summand summand;
    for (const auto& v : s) {
      std::vector<Rational> vec;
      for (const auto& x : v) vec.push_back(json_rational(x));
      summand.push_back(std::move(vec));
    }
    d.summands.push_back(std::move(summand));
  }
  d.validate();
  return d;
}

#define TENSORLAB_INSTANTIATE(T)                                \
  template std::string format_tensor(const DenseTensor<T>&);   \
  template Json scalar_json(const T&);                         \
  template Json signature_json(const SignatureVector<T>&);     \
  template Json matrix_json(const Matrix<T>&);                 \
  template Json decomposition_json(const Decomposition<T>&);

TENSORLAB_INSTANTIATE(Rational)
TENSORLAB_INSTANTIATE(Fp)
TENSORLAB_INSTANTIATE(double)

template Json subspace_json(const MatrixSubspace<Rational>&);
template Json subspace_json(const MatrixSubspace<Fp>&);

}  // namespace tensorlab::io
