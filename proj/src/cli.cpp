#include "tensorlab/cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "tensorlab/decomp.hpp"
#include "tensorlab/errors.hpp"
#include "tensorlab/kronecker.hpp"
#include "tensorlab/linalg.hpp"
#include "tensorlab/matchgate.hpp"
#include "tensorlab/minrank.hpp"
#include "tensorlab/rank.hpp"
#include "tensorlab/terracini.hpp"

namespace tensorlab::cli {

namespace {

using tensorlab::to_string;
using VK = ValueKind;

const std::map<std::string, std::vector<ParamSpec>>& spec_table() {
  static const std::map<std::string, std::vector<ParamSpec>> table{
      {"terracini",
       {{"mode", VK::String, "secant", "secant | generic | scan"},
        {"variety", VK::StringList, {}, "variety spec, repeatable: segre:d1,.. | veronese:n,d | "
                                        "segver:d1,..@e1,.. | sub:d1,..@r1,.. | symsub:n,r@d"},
        {"r", VK::Int, {}, "number of secant points (secant mode)"},
        {"r_min", VK::Int, 1, "first r of a scan"},
        {"r_max", VK::Int, {}, "last r of a scan (default: up to the generic rank)"},
        {"trials", VK::Int, 3, "independent samples per cell"}}},
      {"rank",
       {{"method", VK::String, "flattening", "flattening | bruteforce | sylvester"},
        {"input", VK::String, {}, "tensor file"},
        {"w_state", VK::Int, {}, "use the n-factor W-state instead of a file"},
        {"ring", VK::String, "rational", "ring of the W-state: rational | fp <p> | float"},
        {"r_max", VK::Int, 4, "largest rank tried by the exhaustive search"},
        {"form", VK::String, {}, "binary form coefficients c_0,..,c_d of x^(d-i) y^i"},
        {"tol", VK::Double, kDefaultRelTol, "relative singular-value tolerance for float tensors"}}},
      {"decompose",
       {{"method", VK::String, {}, "sylvester | gross | kruskal | strassen"},
        {"form", VK::String, {}, "binary form coefficients c_0,..,c_d"},
        {"input", VK::String, {}, "tensor file"},
        {"input2", VK::String, {}, "second tensor file (strassen)"},
        {"decomposition", VK::String, {}, "decomposition JSON file"},
        {"r_max", VK::Int, 4, "largest rank tried by the exhaustive search"}}},
      {"kron",
       {{"op", VK::String, {}, "partitions | character | coefficient | rectangular | cone | weyl"},
        {"n", VK::Int, {}, "partition size, or rectangle part count"},
        {"lambda", VK::String, {}, "partition as comma-joined parts"},
        {"mu", VK::String, {}, "partition as comma-joined parts"},
        {"nu", VK::String, {}, "partition as comma-joined parts"},
        {"d", VK::Int, {}, "rectangle part size"},
        {"p", VK::Int, {}, "length bound for lambda (cone)"},
        {"q", VK::Int, {}, "length bound for mu (cone)"},
        {"r", VK::Int, {}, "length bound for nu (cone)"},
        {"n_max", VK::Int, {}, "largest size in the cone sample"},
        {"a", VK::Int, {}, "dimension of A (weyl)"}}},
      {"matchgate",
       {{"op", VK::String, {}, "pfaffian | count | orientation | subpfaffian | mgi | transform"},
        {"graph", VK::String, {}, "graph file"},
        {"universe", VK::String, {}, "comma-joined node list (default: all nodes)"},
        {"signature", VK::String, {}, "comma-joined entries ordered by subset index"},
        {"basis", VK::String, {}, "2 x c basis matrix, row-major, comma-joined"},
        {"side", VK::String, "generator", "generator | recognizer"}}},
      {"minrank",
       {{"op", VK::String, {}, "gurvits | friedland | exact | sample | tensor"},
        {"n", VK::Int, {}, "Gurvits parameter"},
        {"samples", VK::Int, 1000, "sampled elements (friedland)"},
        {"subspace", VK::String, {}, "subspace JSON file"},
        {"subspace2", VK::String, {}, "second subspace JSON file (tensor)"},
        {"trials", VK::Int, 100, "random combinations (sample)"}}},
  };
  return table;
}

Json coerce(const ParamSpec& spec, const Json& v) {
  auto bad = [&](const std::string& why) {
    return ConfigError(spec.key, "malformed value for '" + spec.key + "': " + why);
  };
  switch (spec.kind) {
    case VK::Int:
      if (v.is_number_integer()) return v.get<long long>();
      throw bad("expected an integer, got " + v.dump());
    case VK::Double:
      if (v.is_number()) return v.get<double>();
      throw bad("expected a number, got " + v.dump());
    case VK::String:
      if (v.is_string()) return v;
      throw bad("expected a string, got " + v.dump());
    case VK::StringList:
      if (v.is_string()) return Json::array({v});
      if (v.is_array() && !v.empty()) {
        for (const auto& x : v)
          if (!x.is_string()) throw bad("expected strings, got " + x.dump());
        return v;
      }
      throw bad("expected a string or a nonempty list of strings, got " + v.dump());
  }
  throw bad("unsupported kind");
}

Json from_flag(const ParamSpec& spec, const std::vector<std::string>& values) {
  auto bad = [&](const std::string& why) {
    return ConfigError(spec.key, "malformed value for '" + spec.key + "': " + why);
  };
  if (spec.kind == VK::StringList) return Json(values);
  if (values.size() != 1) throw bad("given " + std::to_string(values.size()) + " times");
  const std::string& s = values[0];
  std::size_t pos = 0;
  try {
    switch (spec.kind) {
      case VK::Int: {
        const long long x = std::stoll(s, &pos);
        if (pos == s.size()) return x;
        break;
      }
      case VK::Double: {
        const double x = std::stod(s, &pos);
        if (pos == s.size()) return x;
        break;
      }
      default:
        return s;
    }
  } catch (const std::exception&) {
  }
  throw bad("'" + s + "'");
}

std::uint64_t parse_seed(const Json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    std::size_t pos = 0;
    try {
      if (!s.empty() && s[0] != '-') {
        const auto x = std::stoull(s, &pos);
        if (pos == s.size()) return x;
      }
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("seed", "malformed value for 'seed': expected a non-negative 64-bit integer, got " + v.dump());
}

void check_command(const std::string& command) {
  if (!spec_table().count(command))
    throw ConfigError("command", "unknown command '" + command +
                                     "' (expected terracini, rank, decompose, kron, matchgate or minrank)");
}

void fill_defaults(Config& c) {
  for (const auto& spec : param_specs(c.command))
    if (!c.params.contains(spec.key) && !spec.default_value.is_null()) c.params[spec.key] = spec.default_value;
}

// ---------------------------------------------------------------------------
// Parameter access.

bool has(const Config& c, const std::string& key) { return c.params.contains(key); }

const Json& need(const Config& c, const std::string& key, const std::string& why) {
  if (!has(c, key)) throw ConfigError(key, "missing required parameter '" + key + "' (" + why + ")");
  return c.params.at(key);
}

long long need_int(const Config& c, const std::string& key, const std::string& why, long long lo = 0) {
  const long long v = need(c, key, why).get<long long>();
  if (v < lo)
    throw ConfigError(key, "malformed value for '" + key + "': must be at least " + std::to_string(lo));
  return v;
}

std::string need_str(const Config& c, const std::string& key, const std::string& why) {
  return need(c, key, why).get<std::string>();
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<Rational> rational_list(const Config& c, const std::string& key, const std::string& why) {
  std::vector<Rational> out;
  try {
    for (const auto& tok : split_commas(need_str(c, key, why))) out.push_back(parse_rational(tok));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, "malformed value for '" + key + "': " + e.what());
  }
  return out;
}

Partition partition_param(const Config& c, const std::string& key, const std::string& why) {
  try {
    return parse_partition(need_str(c, key, why));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, "malformed value for '" + key + "': " + e.what());
  }
}

template <class E>
E choice(const Config& c, const std::string& key, const std::vector<std::pair<std::string, E>>& options) {
  const auto v = need_str(c, key, "choose one of its options");
  for (const auto& [name, e] : options)
    if (name == v) return e;
  std::string names;
  for (const auto& [name, _] : options) names += (names.empty() ? "" : " | ") + name;
  throw ConfigError(key, "malformed value for '" + key + "': '" + v + "' (expected " + names + ")");
}

Json integer_json(const Integer& z) { return z.get_str(); }

// ---------------------------------------------------------------------------
// terracini

Json report_json(const terracini::SecantReport& r) {
  return Json{{"variety", r.variety},
              {"r", r.r},
              {"ambient_affine_dim", r.ambient_affine_dim},
              {"computed_affine_dim", r.computed_affine_dim},
              {"expected_affine_dim", r.expected_affine_dim},
              {"defect", r.defect},
              {"trials", r.trials}};
}

std::vector<Json> run_terracini(const Config& c, const std::vector<Json>& done) {
  enum class Mode { Secant, Generic, Scan };
  const Mode mode = choice<Mode>(c, "mode", {{"secant", Mode::Secant}, {"generic", Mode::Generic}, {"scan", Mode::Scan}});
  std::vector<terracini::VarietySpec> specs;
  for (const auto& v : need(c, "variety", "at least one variety spec"))
    specs.push_back(terracini::parse_variety(v.get<std::string>()));
  const auto trials = static_cast<std::size_t>(need_int(c, "trials", "samples per cell", 1));
  std::vector<Json> out;
  switch (mode) {
    case Mode::Secant: {
      const auto r = static_cast<std::size_t>(need_int(c, "r", "secant mode needs r", 1));
      for (const auto& s : specs)
        out.push_back(Json{{"mode", "secant"}, {"reports", {report_json(terracini::secant_dimension(s, r, trials, c.seed))}}});
      break;
    }
    case Mode::Generic: {
      for (const auto& s : specs) {
        const auto g = terracini::generic_rank(s, trials, c.seed);
        Json reports = Json::array();
        for (const auto& rep : g.profile) reports.push_back(report_json(rep));
        out.push_back(Json{{"mode", "generic"}, {"variety", terracini::to_string(s)}, {"generic_rank", g.generic_rank}, {"reports", reports}});
      }
      break;
    }
    case Mode::Scan: {
      std::map<std::pair<std::string, std::size_t>, Json> finished;
      for (const auto& rec : done) {
        const auto& cfg = rec.value("config", Json::object());
        if (cfg.value("command", "") != "terracini" || cfg.value("mode", "") != "scan") continue;
        if (cfg.value("seed", std::uint64_t{0}) != c.seed || cfg.value("trials", 0LL) != static_cast<long long>(trials))
          continue;
        for (const auto& rep : rec.at("payload").at("reports"))
          finished[{rep.at("variety").get<std::string>(), rep.at("r").get<std::size_t>()}] = rep;
      }
      const auto r_min = static_cast<std::size_t>(need_int(c, "r_min", "first r", 1));
      std::optional<std::size_t> r_max;
      if (has(c, "r_max")) r_max = static_cast<std::size_t>(need_int(c, "r_max", "last r", 1));
      for (const auto& s : specs) {
        const auto name = terracini::to_string(s);
        const std::size_t ambient = terracini::ambient_dimension(s);
        for (std::size_t r = r_min; r <= ambient; ++r) {
          if (r_max && r > *r_max) break;
          Json rep;
          if (auto it = finished.find({name, r}); it != finished.end()) {
            rep = it->second;
          } else {
            rep = report_json(terracini::secant_dimension(s, r, trials, c.seed));
            out.push_back(Json{{"mode", "scan"}, {"reports", {rep}}});
          }
          if (!r_max && rep.at("computed_affine_dim").get<std::size_t>() == ambient) break;
        }
      }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// rank

io::AnyTensor load_tensor(const Config& c, const std::string& key, const std::string& why) {
  const auto path = need_str(c, key, why);
  try {
    return io::parse_tensor(io::read_file(path));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, "cannot read '" + key + "' from " + path + ": " + e.what());
  }
}

io::AnyTensor rank_input(const Config& c) {
  if (has(c, "input") && has(c, "w_state"))
    throw ConfigError("input", "give either 'input' or 'w_state', not both");
  if (has(c, "w_state")) {
    const auto n = static_cast<std::size_t>(need_int(c, "w_state", "factor count", 2));
    const auto ring = io::parse_ring(need_str(c, "ring", "W-state ring"));
    return std::visit(
        [&](const auto& r) -> io::AnyTensor {
          using T = typename std::decay_t<decltype(r)>::value_type;
          return w_state<T>(n, r);
        },
        ring);
  }
  return load_tensor(c, "input", "a tensor file or 'w_state'");
}

template <Scalar T>
std::size_t flattening_rank(const DenseTensor<T>& t, const Bipartition& b, double tol) {
  if constexpr (std::is_same_v<T, double>) {
    return rank_numeric(flatten(t, b), tol);
  } else {
    (void)tol;
    return rank_exact(flatten(t, b));
  }
}

Json run_rank(const Config& c) {
  enum class Method { Flattening, Bruteforce, Sylvester };
  const Method method =
      choice<Method>(c, "method", {{"flattening", Method::Flattening}, {"bruteforce", Method::Bruteforce}, {"sylvester", Method::Sylvester}});
  if (method == Method::Sylvester) {
    const BinaryForm f{rational_list(c, "form", "binary form coefficients")};
    const auto k = sylvester_kernel(f);
    Json g = Json::array();
    for (const auto& x : k.kernel_form) g.push_back(to_string(x));
    return Json{{"method", "sylvester"}, {"degree", f.degree()}, {"rank", k.rank}, {"kernel_form", g}};
  }
  const auto input = rank_input(c);
  if (method == Method::Bruteforce) {
    const auto* t = std::get_if<DenseTensor<Fp>>(&input);
    if (!t) throw ConfigError("input", "malformed value for 'input': exhaustive search needs an fp tensor");
    const auto r_max = static_cast<std::size_t>(need_int(c, "r_max", "search bound", 1));
    const auto res = exact_rank_bruteforce(*t, r_max);
    return Json{{"method", "bruteforce"},
                {"shape", t->shape().dims()},
                {"modulus", res.modulus},
                {"r_max", res.r_max},
                {"rank", res.rank ? Json(*res.rank) : Json()},
                {"rank_one_count", res.rank_one_count},
                {"witness", res.witness ? io::decomposition_json(*res.witness) : Json()}};
  }
  const double tol = need(c, "tol", "tolerance").get<double>();
  if (!(tol > 0)) throw ConfigError("tol", "malformed value for 'tol': must be positive");
  return std::visit(
      [&](const auto& t) {
        Json flat = Json::array();
        std::size_t best = 0;
        std::vector<std::size_t> multi;
        if (t.order() >= 2) {
          for (const auto& b : all_bipartitions(t.order())) {
            const auto r = flattening_rank(t, b, tol);
            best = std::max(best, r);
            flat.push_back(Json{{"left", b.left()}, {"rank", r}});
          }
          for (std::size_t k = 0; k < t.order(); ++k) multi.push_back(flattening_rank(t, Bipartition({k}, t.order()), tol));
        } else {
          best = t.is_zero() ? 0 : 1;
          multi.push_back(best);
        }
        return Json{{"method", "flattening"},
                    {"shape", t.shape().dims()},
                    {"ring", t.ring().tag()},
                    {"multilinear_rank", multi},
                    {"border_rank_lower_bound", best},
                    {"flattenings", flat}};
      },
      input);
}

// ---------------------------------------------------------------------------
// decompose

Json complex_json(const std::complex<double>& z) { return Json::array({z.real(), z.imag()}); }

DenseTensor<Rational> rational_tensor(const Config& c, const std::string& key) {
  auto t = load_tensor(c, key, "tensor file");
  if (auto* r = std::get_if<DenseTensor<Rational>>(&t)) return std::move(*r);
  throw ConfigError(key, "malformed value for '" + key + "': needs a rational tensor");
}

DenseTensor<Fp> fp_tensor(const Config& c, const std::string& key) {
  auto t = load_tensor(c, key, "tensor file");
  if (auto* r = std::get_if<DenseTensor<Fp>>(&t)) return std::move(*r);
  throw ConfigError(key, "malformed value for '" + key + "': needs an fp tensor");
}

Decomposition<Rational> load_decomposition(const Config& c) {
  const auto path = need_str(c, "decomposition", "decomposition JSON file");
  try {
    return io::parse_decomposition(Json::parse(io::read_file(path)));
  } catch (const Json::exception& e) {
    throw ConfigError("decomposition", "cannot read 'decomposition' from " + path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError("decomposition", "cannot read 'decomposition' from " + path + ": " + e.what());
  }
}

Json run_decompose(const Config& c) {
  enum class Method { Sylvester, Gross, Kruskal, Strassen };
  const Method method = choice<Method>(
      c, "method", {{"sylvester", Method::Sylvester}, {"gross", Method::Gross}, {"kruskal", Method::Kruskal}, {"strassen", Method::Strassen}});
  switch (method) {
    case Method::Sylvester: {
      const BinaryForm f{rational_list(c, "form", "binary form coefficients")};
      const auto w = sylvester_decompose_binary(f);
      Json exact_terms = Json::array(), numeric = Json::array();
      for (const auto& t : w.terms)
        exact_terms.push_back(Json{{"coeff", to_string(t.coeff)}, {"alpha", to_string(t.alpha)}, {"beta", to_string(t.beta)}});
      for (const auto& t : w.numeric_terms)
        numeric.push_back(Json{{"coeff", complex_json(t.coeff)}, {"alpha", complex_json(t.alpha)}, {"beta", complex_json(t.beta)}});
      return Json{{"method", "sylvester"},
                  {"status", w.status == BinaryWaring::Status::Decomposed ? "decomposed" : "rank exceeds generic bound"},
                  {"degree", w.degree},
                  {"rank", w.rank},
                  {"exact", w.exact},
                  {"terms", exact_terms},
                  {"numeric_terms", numeric},
                  {"relative_residual", w.relative_residual}};
    }
    case Method::Gross: {
      const auto t = rational_tensor(c, "input");
      const auto d = load_decomposition(c);
      const auto rep = gross_check(t, d);
      Json ind = Json::array(), certs = Json::array();
      for (const auto& x : rep.independence) ind.push_back(Json{{"subset", x.subset}, {"independent", x.independent}});
      for (const auto& x : rep.certificates) {
        Json sc = Json::array();
        for (const auto& s : x.scalars) sc.push_back(to_string(s));
        certs.push_back(Json{{"summand", x.summand}, {"proportional", x.proportional}, {"scalars", sc}});
      }
      return Json{{"method", "gross"},
                  {"verdict", to_string(rep.verdict)},
                  {"independence_ok", rep.independence_ok},
                  {"independence", ind},
                  {"contractions_symmetric", rep.contractions_symmetric},
                  {"certificates", certs},
                  {"symmetric_form", rep.symmetric_form ? io::decomposition_json(*rep.symmetric_form) : Json()},
                  {"minimal", gross_minimality_check(t, d)}};
    }
    case Method::Kruskal: {
      const auto d = load_decomposition(c);
      if (d.shape.order() != 3) throw ConfigError("decomposition", "malformed value for 'decomposition': needs three factors");
      std::vector<std::size_t> k;
      for (std::size_t f = 0; f < 3; ++f) k.push_back(kruskal_rank(factor_matrix(d, f)));
      return Json{{"method", "kruskal"}, {"r", d.size()}, {"kruskal_ranks", k}, {"unique", kruskal_uniqueness(d)}};
    }
    case Method::Strassen: {
      const auto t1 = fp_tensor(c, "input");
      const auto t2 = fp_tensor(c, "input2");
      const auto r_max = static_cast<std::size_t>(need_int(c, "r_max", "search bound", 1));
      const auto rec = strassen_experiment(t1, t2, r_max);
      auto opt = [](const std::optional<std::size_t>& x) { return x ? Json(*x) : Json(); };
      return Json{{"method", "strassen"},
                  {"r1", opt(rec.r1)},
                  {"r2", opt(rec.r2)},
                  {"r_sum", opt(rec.r_sum)},
                  {"r_max", rec.r_max},
                  {"additive", rec.additive ? Json(*rec.additive) : Json()}};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// kron

Json run_kron(const Config& c) {
  enum class Op { Partitions, Character, Coefficient, Rectangular, Cone, Weyl };
  const Op op = choice<Op>(c, "op",
                           {{"partitions", Op::Partitions},
                            {"character", Op::Character},
                            {"coefficient", Op::Coefficient},
                            {"rectangular", Op::Rectangular},
                            {"cone", Op::Cone},
                            {"weyl", Op::Weyl}});
  switch (op) {
    case Op::Partitions: {
      const auto n = static_cast<int>(need_int(c, "n", "partition size"));
      Json list = Json::array();
      for (const auto& p : partitions_of(n)) list.push_back(to_string(p));
      return Json{{"op", "partitions"}, {"n", n}, {"count", list.size()}, {"partitions", list}};
    }
    case Op::Character: {
      const auto l = partition_param(c, "lambda", "irreducible");
      const auto m = partition_param(c, "mu", "cycle type");
      return Json{{"op", "character"}, {"lambda", to_string(l)}, {"mu", to_string(m)}, {"value", integer_json(character(l, m))}};
    }
    case Op::Coefficient: {
      const auto l = partition_param(c, "lambda", "first partition");
      const auto m = partition_param(c, "mu", "second partition");
      const auto v = partition_param(c, "nu", "third partition");
      return Json{{"op", "coefficient"},
                  {"lambda", to_string(l)},
                  {"mu", to_string(m)},
                  {"nu", to_string(v)},
                  {"coefficient", integer_json(kronecker_coefficient(l, m, v))}};
    }
    case Op::Rectangular: {
      const auto l = partition_param(c, "lambda", "partition of d * n");
      const auto d = static_cast<int>(need_int(c, "d", "rectangle part size", 1));
      const auto n = static_cast<int>(need_int(c, "n", "rectangle part count", 1));
      const auto r = rectangular_kronecker(l, d, n);
      return Json{{"op", "rectangular"},
                  {"lambda", to_string(l)},
                  {"rectangle", to_string(rectangle(d, n))},
                  {"coefficient", integer_json(r.coefficient)},
                  {"conjugate_rectangle", to_string(rectangle(n, d))},
                  {"conjugate_coefficient", integer_json(r.conjugate_coefficient)},
                  {"exceeds_length", r.exceeds_length}};
    }
    case Op::Cone: {
      const auto s = cone_sample(static_cast<int>(need_int(c, "p", "length bound")), static_cast<int>(need_int(c, "q", "length bound")),
                                 static_cast<int>(need_int(c, "r", "length bound")), static_cast<int>(need_int(c, "n_max", "largest size")));
      Json pos = Json::array(), stretch = Json::array();
      for (const auto& t : s.positive)
        pos.push_back(Json{{"lambda", to_string(t.lambda)}, {"mu", to_string(t.mu)}, {"nu", to_string(t.nu)}, {"K", integer_json(t.coefficient)}});
      for (const auto& t : s.stretch)
        stretch.push_back(Json{{"lambda", to_string(t.triple.lambda)},
                               {"mu", to_string(t.triple.mu)},
                               {"nu", to_string(t.triple.nu)},
                               {"K", integer_json(t.triple.coefficient)},
                               {"K_doubled", integer_json(t.doubled)},
                               {"holds", t.holds}});
      return Json{{"op", "cone"}, {"positive", pos}, {"stretch", stretch}};
    }
    case Op::Weyl: {
      const auto l = partition_param(c, "lambda", "partition");
      const auto a = static_cast<int>(need_int(c, "a", "dimension of A", 1));
      const bool exists = weyl_zero_weight_invariant_exists(l, a);
      Json mult = Json::array();
      const int size = l.size();
      for (int n = 1; n <= size; ++n)
        if (size % n == 0)
          mult.push_back(Json{{"d", size / n}, {"n", n}, {"multiplicity", integer_json(plethysm_multiplicity(l, size / n, n, a))}});
      return Json{{"op", "weyl"}, {"lambda", to_string(l)}, {"a", a}, {"exists", exists}, {"multiplicities", mult}};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// matchgate

WeightedGraph<Rational> load_graph(const Config& c) {
  const auto path = need_str(c, "graph", "graph file");
  try {
    return io::parse_graph(io::read_file(path));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("graph", "cannot read 'graph' from " + path + ": " + e.what());
  }
}

SignatureVector<Rational> signature_param(const Config& c, std::size_t arity) {
  const auto entries = rational_list(c, "signature", "signature entries");
  SignatureVector<Rational> s;
  s.arity = arity;
  std::size_t len = 1;
  while (len < entries.size()) {
    len *= arity;
    ++s.wires;
  }
  if (len != entries.size() || arity < 2)
    throw ConfigError("signature", "malformed value for 'signature': length " + std::to_string(entries.size()) +
                                       " is not a power of " + std::to_string(arity));
  s.entries = entries;
  return s;
}

Json signature_payload(const SignatureVector<Rational>& s) {
  return Json{{"wires", s.wires}, {"arity", s.arity}, {"entries", io::signature_json(s)}};
}

Json run_matchgate(const Config& c) {
  enum class Op { Pfaffian, Count, Orientation, SubPfaffian, Mgi, Transform };
  const Op op = choice<Op>(c, "op",
                           {{"pfaffian", Op::Pfaffian},
                            {"count", Op::Count},
                            {"orientation", Op::Orientation},
                            {"subpfaffian", Op::SubPfaffian},
                            {"mgi", Op::Mgi},
                            {"transform", Op::Transform}});
  switch (op) {
    case Op::Pfaffian:
      return Json{{"op", "pfaffian"}, {"pfaffian", to_string(pfaffian(load_graph(c).skew_matrix()))}};
    case Op::Count:
      return Json{{"op", "count"}, {"matchings", to_string(count_matchings(load_graph(c)))}};
    case Op::Orientation: {
      const auto r = pfaffian_orientation_search(load_graph(c));
      return Json{{"op", "orientation"},
                  {"found", r.signs.has_value()},
                  {"signs", r.signs ? Json(*r.signs) : Json()},
                  {"candidates_tried", r.candidates_tried},
                  {"matchings", to_string(r.matchings)}};
    }
    case Op::SubPfaffian: {
      const auto g = load_graph(c);
      std::vector<std::size_t> universe;
      if (has(c, "universe")) {
        for (const auto& tok : split_commas(need_str(c, "universe", "node list"))) {
          try {
            universe.push_back(static_cast<std::size_t>(std::stoul(tok)));
          } catch (const std::exception&) {
            throw ConfigError("universe", "malformed value for 'universe': '" + tok + "'");
          }
        }
      } else {
        for (std::size_t i = 0; i < g.nodes; ++i) universe.push_back(i);
      }
      const auto s = sub_pfaffian_vector(g.skew_matrix(), universe);
      return Json{{"op", "subpfaffian"}, {"universe", universe}, {"signature", signature_payload(s)}};
    }
    case Op::Mgi: {
      const auto s = signature_param(c, 2);
      const auto res = mgi_residuals(s);
      constexpr std::size_t kListed = 64;
      Json nonzero = Json::array();
      std::size_t count = 0, idx = 0;
      const std::uint32_t n = 1u << s.wires;
      for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b, ++idx) {
          if (sgn(res[idx]) == 0) continue;
          if (count++ < kListed) nonzero.push_back(Json{{"a", a}, {"b", b}, {"residual", to_string(res[idx])}});
        }
      return Json{{"op", "mgi"},
                  {"wires", s.wires},
                  {"relations", res.size()},
                  {"nonzero_count", count},
                  {"satisfied", count == 0},
                  {"nonzero", nonzero}};
    }
    case Op::Transform: {
      const auto b_entries = rational_list(c, "basis", "2 x c basis matrix");
      if (b_entries.size() < 2 || b_entries.size() % 2)
        throw ConfigError("basis", "malformed value for 'basis': needs 2 x c entries");
      const Matrix<Rational> b(2, b_entries.size() / 2, b_entries);
      const auto side = choice<TransformSide>(c, "side", {{"generator", TransformSide::Generator}, {"recognizer", TransformSide::Recognizer}});
      const auto s = signature_param(c, side == TransformSide::Generator ? 2 : b.cols());
      return Json{{"op", "transform"},
                  {"side", need_str(c, "side", "")},
                  {"signature", signature_payload(transform_signature(s, b, side))}};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// minrank

std::variant<MatrixSubspace<Rational>, MatrixSubspace<Fp>> load_subspace(const Config& c, const std::string& key) {
  const auto path = need_str(c, key, "subspace JSON file");
  try {
    return io::parse_subspace(Json::parse(io::read_file(path)));
  } catch (const Json::exception& e) {
    throw ConfigError(key, "cannot read '" + key + "' from " + path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, "cannot read '" + key + "' from " + path + ": " + e.what());
  }
}

Json run_minrank(const Config& c) {
  enum class Op { Gurvits, Friedland, Exact, Sample, Tensor };
  const Op op = choice<Op>(
      c, "op", {{"gurvits", Op::Gurvits}, {"friedland", Op::Friedland}, {"exact", Op::Exact}, {"sample", Op::Sample}, {"tensor", Op::Tensor}});
  switch (op) {
    case Op::Gurvits: {
      const auto r = gurvits_construction(static_cast<std::size_t>(need_int(c, "n", "Gurvits parameter", 1)));
      Json samples = Json::array();
      for (const auto& s : r.samples) samples.push_back(Json{{"a", to_string(s.a)}, {"b", to_string(s.b)}, {"rank", s.rank}});
      return Json{{"op", "gurvits"},
                  {"n", r.n},
                  {"samples", samples},
                  {"no_real_eigenvalues", r.no_real_eigenvalues},
                  {"minrank_x", r.minrank_x},
                  {"witness_rank_minus", r.witness_rank_minus},
                  {"witness_rank_plus", r.witness_rank_plus},
                  {"decrement", r.decrement}};
    }
    case Op::Friedland: {
      const auto r = friedland_check(static_cast<std::size_t>(need_int(c, "n", "Gurvits parameter", 1)),
                                     static_cast<std::size_t>(need_int(c, "samples", "sample count")), c.seed);
      return Json{{"op", "friedland"},
                  {"n", r.n},
                  {"sum_of_mins", r.sum_of_mins},
                  {"sampled_min", r.sampled_min},
                  {"samples", r.samples},
                  {"joint_min_upper", r.joint_min_upper},
                  {"margin", r.margin},
                  {"violated", r.violated}};
    }
    case Op::Exact: {
      const auto s = load_subspace(c, "subspace");
      const auto* fp = std::get_if<MatrixSubspace<Fp>>(&s);
      if (!fp) throw ConfigError("subspace", "malformed value for 'subspace': exact min rank needs an fp subspace");
      return Json{{"op", "exact"}, {"modulus", fp->ring.modulus()}, {"dimension", fp->dimension()}, {"min_rank", min_rank_exact_fp(*fp)}, {"certified", true}};
    }
    case Op::Sample: {
      const auto s = load_subspace(c, "subspace");
      const auto* q = std::get_if<MatrixSubspace<Rational>>(&s);
      if (!q) throw ConfigError("subspace", "malformed value for 'subspace': sampling needs a rational subspace");
      const auto r = min_rank_sample(*q, static_cast<std::size_t>(need_int(c, "trials", "random combinations", 1)), c.seed);
      return Json{{"op", "sample"},
                  {"dimension", q->dimension()},
                  {"upper_bound", r.upper_bound},
                  {"certified", false},
                  {"elements_tried", r.elements_tried},
                  {"witness", io::matrix_json(r.witness)}};
    }
    case Op::Tensor: {
      const auto s1 = load_subspace(c, "subspace");
      const auto s2 = load_subspace(c, "subspace2");
      if (s1.index() != s2.index()) throw ConfigError("subspace2", "malformed value for 'subspace2': ring differs from 'subspace'");
      return std::visit(
          [&](const auto& a) {
            using S = std::decay_t<decltype(a)>;
            const auto t = tensor_subspace(a, std::get<S>(s2));
            return Json{{"op", "tensor"}, {"dimension", t.dimension()}, {"subspace", io::subspace_json(t)}};
          },
          s1);
    }
  }
  return {};
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

// Tabular view of records, or nothing.
std::optional<std::pair<std::vector<std::string>, std::vector<std::vector<std::string>>>> table_of(
    const std::vector<Record>& records) {
  auto cell = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  for (const auto& rec : records) {
    const auto command = rec.config.value("command", "");
    if (command == "terracini") {
      header = {"variety", "r", "ambient_affine_dim", "computed_affine_dim", "expected_affine_dim", "defect", "trials"};
      for (const auto& rep : rec.payload.at("reports")) {
        std::vector<std::string> row;
        for (const auto& h : header) row.push_back(cell(rep.at(h)));
        rows.push_back(std::move(row));
      }
    } else if (command == "kron" && rec.payload.value("op", "") == "cone") {
      header = {"lambda", "mu", "nu", "K"};
      for (const auto& t : rec.payload.at("positive")) {
        std::vector<std::string> row;
        for (const auto& h : header) row.push_back(cell(t.at(h)));
        rows.push_back(std::move(row));
      }
    } else {
      return std::nullopt;
    }
  }
  if (header.empty()) return std::nullopt;
  return std::make_pair(header, rows);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"terracini", "rank", "decompose", "kron", "matchgate", "minrank"};
  return names;
}

const std::vector<ParamSpec>& param_specs(const std::string& command) {
  check_command(command);
  return spec_table().at(command);
}

std::string to_string(Format f) {
  switch (f) {
    case Format::Json:
      return "json";
    case Format::Csv:
      return "csv";
    case Format::Text:
      return "text";
  }
  return "json";
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  throw ConfigError("format", "malformed value for 'format': '" + s + "' (expected json | csv | text)");
}

Json Config::echo() const {
  Json j = params;
  j["command"] = command;
  j["seed"] = seed;
  j["format"] = to_string(format);
  if (!output.empty()) j["output"] = output;
  return j;
}

Config parse_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("config", "config must be a JSON object");
  if (!j.contains("command")) throw ConfigError("command", "missing required field 'command'");
  if (!j.at("command").is_string()) throw ConfigError("command", "malformed value for 'command': expected a string");
  Config c;
  c.command = j.at("command").get<std::string>();
  check_command(c.command);
  const auto& specs = param_specs(c.command);
  for (const auto& [key, value] : j.items()) {
    if (key == "command") continue;
    if (key == "seed") {
      c.seed = parse_seed(value);
    } else if (key == "output") {
      if (!value.is_string()) throw ConfigError("output", "malformed value for 'output': expected a path string");
      c.output = value.get<std::string>();
    } else if (key == "format") {
      if (!value.is_string()) throw ConfigError("format", "malformed value for 'format': expected a string");
      c.format = parse_format(value.get<std::string>());
    } else {
      const auto it = std::find_if(specs.begin(), specs.end(), [&](const ParamSpec& s) { return s.key == key; });
      if (it == specs.end()) throw ConfigError(key, "unknown key '" + key + "' for command '" + c.command + "'");
      c.params[key] = coerce(*it, value);
    }
  }
  fill_defaults(c);
  return c;
}

Config config_from_flags(const std::string& command,
                         const std::vector<std::pair<std::string, std::vector<std::string>>>& flags) {
  check_command(command);
  Config c;
  c.command = command;
  const auto& specs = param_specs(command);
  for (const auto& [key, values] : flags) {
    if (values.empty()) continue;
    if (key == "seed") {
      if (values.size() != 1) throw ConfigError("seed", "malformed value for 'seed': given more than once");
      c.seed = parse_seed(Json(values[0]));
    } else if (key == "output") {
      c.output = values.back();
    } else if (key == "format") {
      c.format = parse_format(values.back());
    } else {
      const auto it = std::find_if(specs.begin(), specs.end(), [&](const ParamSpec& s) { return s.key == key; });
      if (it == specs.end()) throw ConfigError(key, "unknown key '" + key + "' for command '" + command + "'");
      c.params[key] = from_flag(*it, values);
    }
  }
  fill_defaults(c);
  return c;
}

Json Record::to_json() const {
  return Json{{"tool", "tensorlab"},
              {"version", kVersion},
              {"seed", config.at("seed")},
              {"config", config},
              {"timestamp", timestamp},
              {"wall_time_s", wall_time_s},
              {"payload", payload}};
}

std::vector<Json> compute_payloads(const Config& c, const std::vector<Json>& done) {
  if (c.command == "terracini") return run_terracini(c, done);
  if (c.command == "rank") return {run_rank(c)};
  if (c.command == "decompose") return {run_decompose(c)};
  if (c.command == "kron") return {run_kron(c)};
  if (c.command == "matchgate") return {run_matchgate(c)};
  if (c.command == "minrank") return {run_minrank(c)};
  check_command(c.command);
  return {};
}

std::vector<Record> run(const Config& c) {
  std::vector<Json> done;
  if (c.command == "terracini" && c.format == Format::Json && !c.output.empty()) {
    std::ifstream in(c.output);
    for (std::string line; std::getline(in, line);) {
      if (line.empty()) continue;
      try {
        done.push_back(Json::parse(line));
      } catch (const Json::exception&) {
        // A partial last line from an interrupted run.
      }
    }
  }
  const auto start = std::chrono::steady_clock::now();
  const auto timestamp = utc_timestamp();
  const auto payloads = compute_payloads(c, done);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::vector<Record> out;
  for (const auto& p : payloads) out.push_back({c.echo(), timestamp, wall, p});
  return out;
}

std::string emit(const std::vector<Record>& records, Format format) {
  std::string s;
  switch (format) {
    case Format::Json:
      for (const auto& r : records) s += r.to_json().dump() + "\n";
      return s;
    case Format::Csv: {
      const auto table = table_of(records);
      if (!table) throw ConfigError("format", "malformed value for 'format': csv needs a tabular payload (terracini, kron cone)");
      const auto& [header, rows] = *table;
      for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + csv_field(header[i]);
      s += "\n";
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_field(row[i]);
        s += "\n";
      }
      return s;
    }
    case Format::Text: {
      if (const auto table = table_of(records)) {
        const auto& [header, rows] = *table;
        std::vector<std::size_t> width(header.size());
        for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
        for (const auto& row : rows)
          for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
        auto line = [&](const std::vector<std::string>& cells) {
          std::string l;
          for (std::size_t i = 0; i < cells.size(); ++i) {
            l += cells[i] + std::string(width[i] - cells[i].size(), ' ');
            if (i + 1 < cells.size()) l += "  ";
          }
          while (!l.empty() && l.back() == ' ') l.pop_back();
          return l + "\n";
        };
        s += line(header);
        for (const auto& row : rows) s += line(row);
        return s;
      }
      for (const auto& r : records) {
        std::size_t w = 0;
        for (const auto& [key, _] : r.payload.items()) w = std::max(w, key.size());
        for (const auto& [key, value] : r.payload.items())
          s += key + std::string(w - key.size(), ' ') + "  " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
        s += "\n";
      }
      return s;
    }
  }
  return s;
}

void write_output(const Config& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  const auto mode = c.format == Format::Json ? std::ios::app : std::ios::trunc;
  std::ofstream out(c.output, std::ios::out | mode);
  if (!out) throw ConfigError("output", "cannot open output path '" + c.output + "'");
  out << text;
}

}  // namespace tensorlab::cli
