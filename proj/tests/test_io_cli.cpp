#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "tensorlab/cli.hpp"
#include "tensorlab/io.hpp"
#include "tensorlab/kronecker.hpp"
#include "tensorlab/rank.hpp"

using namespace tensorlab;
using cli::Json;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

std::vector<cli::Record> records_for(const cli::Config& c, const std::vector<Json>& payloads) {
  std::vector<cli::Record> out;
  for (const auto& p : payloads) out.push_back({c.echo(), "2000-01-01T00:00:00Z", 0.0, p});
  return out;
}

}  // namespace

TEST_CASE("tensor text format") {
  const std::string text = "tensor v1\n2 2\nrational\n1 1/2\n  -3   0\n";
  const auto t = io::parse_tensor(text);
  REQUIRE(std::holds_alternative<DenseTensor<Rational>>(t));
  const auto& q = std::get<DenseTensor<Rational>>(t);
  CHECK(q[1] == Rational(1, 2));
  CHECK(q[2] == -3);
  const std::string canon = io::format_tensor(t);
  CHECK(canon == "tensor v1\n2 2\nrational\n1 1/2\n-3 0\n");
  CHECK(io::format_tensor(io::parse_tensor(canon)) == canon);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto r = random_tensor<Rational>(Shape({2, 3, 2}), {}, seed);
    const auto s = io::format_tensor(r);
    CHECK(std::get<DenseTensor<Rational>>(io::parse_tensor(s)) == r);
    CHECK(io::format_tensor(io::parse_tensor(s)) == s);
  }

  const auto f = io::parse_tensor("tensor v1\n2\nfp 7\n1/2 -1\n");
  REQUIRE(std::holds_alternative<DenseTensor<Fp>>(f));
  CHECK(std::get<DenseTensor<Fp>>(f)[0].value() == 4);
  CHECK(std::get<DenseTensor<Fp>>(f)[1].value() == 6);
  CHECK(io::format_tensor(f) == "tensor v1\n2\nfp 7\n4 6\n");

  const auto d = io::parse_tensor("tensor v1\n2\nfloat\n0.5 -2\n");
  CHECK(std::get<DenseTensor<double>>(d)[0] == 0.5);
  CHECK(io::format_tensor(io::parse_tensor(io::format_tensor(d))) == io::format_tensor(d));

  CHECK_THROWS_AS(io::parse_tensor("tensor v2\n2\nrational\n1 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_tensor("tensor v1\n2\nrational\n1\n"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_tensor("tensor v1\n2\nrational\n1 2 3\n"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_tensor("tensor v1\n2\nfp 6\n1 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_tensor("tensor v1\n2\nfp 7\n1/7 2\n"), std::exception);
}

TEST_CASE("graph format") {
  const std::string text = "graph v1\n4\n0 1 1\n2 3 1/2\n0 3 -2\n";
  const auto g = io::parse_graph(text);
  CHECK(g.nodes == 4);
  REQUIRE(g.edges.size() == 3);
  CHECK(g.edges[1].weight == Rational(1, 2));
  CHECK(io::format_graph(g) == text);
  CHECK(io::format_graph(io::parse_graph(io::format_graph(g))) == text);
  CHECK_THROWS_AS(io::parse_graph("graph v1\n3\n0 0 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_graph("graph v1\n3\n0 5 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_graph("graph\n3\n"), std::invalid_argument);
}

TEST_CASE("JSON scalars, signatures, subspaces and decompositions") {
  CHECK(io::scalar_json(Rational(-1, 3)) == Json("-1/3"));
  CHECK(io::scalar_json(Rational(4)) == Json("4"));
  CHECK(io::json_rational(Json("6/4")) == Rational(3, 2));
  CHECK(io::json_rational(Json(5)) == 5);
  CHECK_THROWS_AS(io::json_rational(Json(0.5)), std::invalid_argument);

  SignatureVector<Rational> s;
  s.wires = 2;
  s.entries = {0, 1, Rational(1, 2), 0};
  const auto sj = io::signature_json(s);
  CHECK(sj.dump() == R"(["0","1","1/2","0"])");
  CHECK(io::parse_signature(sj) == s);
  CHECK_THROWS_AS(io::parse_signature(Json::array({"1", "2", "3"})), std::invalid_argument);

  const auto x = gurvits_x();
  const auto xj = io::subspace_json(x);
  const auto back = std::get<MatrixSubspace<Rational>>(io::parse_subspace(xj));
  CHECK(back.basis == x.basis);
  CHECK(io::subspace_json(back).dump() == xj.dump());
  // Every rational is a string on the wire.
  for (const auto& b : xj["basis"])
    for (const auto& e : b) CHECK(e.is_string());

  const auto w = w_state_decomposition<Rational>(3);
  const auto wj = io::decomposition_json(w);
  const auto wb = io::parse_decomposition(Json::parse(wj.dump()));
  CHECK(wb.reconstruct() == w.reconstruct());
  CHECK(io::decomposition_json(wb).dump() == wj.dump());

  Decomposition<Rational> frac{Shape({2, 2}), {{{Rational(1, 3), 2}, {1, Rational(-5, 7)}}}};
  CHECK(io::parse_decomposition(io::decomposition_json(frac)).summands == frac.summands);
}

TEST_CASE("configuration parsing") {
  const auto c = cli::parse_config(Json::parse(R"({"command": "terracini", "variety": ["segre:2,2,2"], "r": 2})"));
  CHECK(c.command == "terracini");
  CHECK(c.seed == 0);
  CHECK(c.format == cli::Format::Json);
  CHECK(c.params["trials"] == 3);
  CHECK(c.params["r"] == 2);
  CHECK(c.params["mode"] == "secant");
  const auto echo = c.echo();
  CHECK(echo["seed"] == 0);
  CHECK(echo["command"] == "terracini");

  const auto f = cli::config_from_flags("terracini", {{"variety", {"segre:2,2,2"}}, {"r", {"2"}}});
  CHECK(f.echo() == echo);
  const auto rank = cli::parse_config(Json::parse(R"({"command": "rank", "w_state": 3})"));
  CHECK(rank.params["tol"] == 1e-8);

  auto field_of = [](const Json& j) {
    try {
      cli::parse_config(j);
    } catch (const cli::ConfigError& e) {
      return e.field() + "|" + e.what();
    }
    return std::string("accepted");
  };
  const auto typo = field_of(Json::parse(R"({"command": "terracini", "variety": ["segre:2,2"], "rmax_typo": 3})"));
  CHECK(typo.rfind("rmax_typo|", 0) == 0);
  CHECK(typo.find("unknown key 'rmax_typo'") != std::string::npos);
  CHECK(field_of(Json::parse(R"({"command": "nope"})")).rfind("command|", 0) == 0);
  CHECK(field_of(Json::parse(R"({"variety": ["segre:2,2"]})")).rfind("command|", 0) == 0);
  const auto bad_r = field_of(Json::parse(R"({"command": "terracini", "variety": ["segre:2,2"], "r": "two"})"));
  CHECK(bad_r.rfind("r|", 0) == 0);
  CHECK(bad_r.find("malformed value") != std::string::npos);
  CHECK(field_of(Json::parse(R"({"command": "terracini", "variety": ["segre:2,2"], "seed": -1})")).rfind("seed|", 0) == 0);
  CHECK(field_of(Json::parse(R"({"command": "terracini", "variety": ["segre:2,2"], "format": "xml"})")).rfind("format|", 0) == 0);

  // Required parameters are named when missing.
  try {
    cli::compute_payloads(cli::parse_config(Json::parse(R"({"command": "terracini", "r": 2})")));
    FAIL("no error");
  } catch (const cli::ConfigError& e) {
    CHECK(e.field() == "variety");
    CHECK(std::string(e.what()).find("missing required parameter 'variety'") != std::string::npos);
  }
  CHECK_THROWS_AS(cli::config_from_flags("minrank", {{"op", {"gurvits"}}, {"n", {"1", "2"}}}), cli::ConfigError);
  CHECK_THROWS_AS(cli::config_from_flags("minrank", {{"bogus", {"1"}}}), cli::ConfigError);
}

TEST_CASE("payloads are deterministic") {
  const std::vector<std::string> configs{
      R"({"command": "terracini", "mode": "scan", "variety": ["segre:2,2,2"], "r_max": 3, "seed": 42})",
      R"({"command": "terracini", "mode": "generic", "variety": ["veronese:3,3"], "seed": 7})",
      R"({"command": "rank", "w_state": 3, "ring": "fp 2", "method": "bruteforce", "r_max": 3})",
      R"({"command": "rank", "method": "sylvester", "form": "1,0,0,1"})",
      R"({"command": "decompose", "method": "sylvester", "form": "1,2,-1,3,5,1"})",
      R"({"command": "kron", "op": "cone", "p": 2, "q": 2, "r": 2, "n_max": 4})",
      R"({"command": "matchgate", "op": "mgi", "signature": "0,1,1,1,1,1,1,0"})",
      R"({"command": "minrank", "op": "friedland", "n": 2, "samples": 50, "seed": 3})"};
  for (const auto& text : configs) {
    const auto c = cli::parse_config(Json::parse(text));
    CHECK(Json(cli::compute_payloads(c)).dump() == Json(cli::compute_payloads(c)).dump());
  }
}

TEST_CASE("Gurvits payload") {
  const auto c = cli::config_from_flags("minrank", {{"op", {"gurvits"}}, {"n", {"2"}}});
  const auto p = cli::compute_payloads(c);
  REQUIRE(p.size() == 1);
  CHECK(p[0]["decrement"] == 8);
  CHECK(p[0]["decrement"] == gurvits_construction(2).decrement);
}

TEST_CASE("scan over (P^1)^n has exactly one defective cell") {
  const auto c = cli::config_from_flags(
      "terracini", {{"mode", {"scan"}}, {"variety", {"segre:2,2", "segre:2,2,2", "segre:2,2,2,2", "segre:2,2,2,2,2"}}});
  const auto p = cli::compute_payloads(c);
  std::vector<std::pair<std::string, int>> defective;
  for (const auto& rec : p)
    for (const auto& r : rec["reports"])
      if (r["defect"].get<int>() > 0) defective.emplace_back(r["variety"].get<std::string>(), r["r"].get<int>());
  REQUIRE(defective.size() == 1);
  CHECK(defective[0].first == "segre:2,2,2,2");
  CHECK(defective[0].second == 3);
}

TEST_CASE("scans resume from earlier records") {
  const auto full = cli::parse_config(
      Json::parse(R"({"command": "terracini", "mode": "scan", "variety": ["segre:2,2,2", "veronese:3,3"], "r_max": 4})"));
  const auto all = cli::compute_payloads(full);
  CHECK(all.size() == 8);
  auto half = full;
  half.params["r_max"] = 2;
  std::vector<Json> done;
  for (const auto& r : records_for(half, cli::compute_payloads(half))) done.push_back(r.to_json());
  CHECK(done.size() == 4);
  const auto rest = cli::compute_payloads(full, done);
  CHECK(rest.size() == 4);
  for (const auto& r : rest) CHECK(r["reports"][0]["r"].get<int>() > 2);

  // Records with another seed do not count.
  auto other = half;
  other.seed = 5;
  std::vector<Json> foreign;
  for (const auto& r : records_for(other, cli::compute_payloads(other))) foreign.push_back(r.to_json());
  CHECK(cli::compute_payloads(full, foreign).size() == 8);
}

TEST_CASE("emitters") {
  const auto c = cli::parse_config(Json::parse(R"({"command": "terracini", "mode": "scan", "variety": ["segre:2,2,2"], "r_max": 4})"));
  const auto recs = records_for(c, cli::compute_payloads(c));
  const auto json = cli::emit(recs, cli::Format::Json);
  const auto jl = lines_of(json);
  REQUIRE(jl.size() == recs.size());
  for (std::size_t i = 0; i < jl.size(); ++i) {
    const auto j = Json::parse(jl[i]);
    CHECK(j == recs[i].to_json());
    CHECK(j["seed"] == 0);
    CHECK(j["version"] == cli::kVersion);
    CHECK(j["tool"] == "tensorlab");
  }

  const auto csv = lines_of(cli::emit(recs, cli::Format::Csv));
  CHECK(csv.size() == 4 + 1);
  CHECK(csv[0].find("variety") != std::string::npos);

  const auto cone = cli::parse_config(Json::parse(R"({"command": "kron", "op": "cone", "p": 2, "q": 2, "r": 2, "n_max": 2})"));
  const auto cp = cli::compute_payloads(cone);
  const auto ccsv = lines_of(cli::emit(records_for(cone, cp), cli::Format::Csv));
  CHECK(ccsv[0] == "lambda,mu,nu,K");
  CHECK(ccsv.size() == cp[0]["positive"].size() + 1);
  CHECK(ccsv.size() == cone_sample(2, 2, 2, 2).positive.size() + 1);
  // Partitions with commas are quoted.
  CHECK(std::find(ccsv.begin(), ccsv.end(), "\"1,1\",\"1,1\",2,1") != ccsv.end());

  const auto text = cli::emit(recs, cli::Format::Text);
  CHECK(lines_of(text).size() >= recs.size());

  const auto g = cli::config_from_flags("minrank", {{"op", {"gurvits"}}, {"n", {"1"}}});
  const auto grecs = records_for(g, cli::compute_payloads(g));
  CHECK_THROWS_AS(cli::emit(grecs, cli::Format::Csv), cli::ConfigError);
  CHECK_FALSE(cli::emit(grecs, cli::Format::Text).empty());

  // Exact decompositions keep rational coefficients as strings.
  const auto s = cli::config_from_flags("decompose", {{"method", {"sylvester"}}, {"form", {"1,0,0,1"}}});
  const auto sp = cli::compute_payloads(s);
  for (const auto& t : sp[0]["terms"]) {
    CHECK(t["coeff"].is_string());
    CHECK(t["alpha"].is_string());
  }
}
