#include <CLI11.hpp>

#include <iostream>
#include <map>

#include "tensorlab/cli.hpp"
#include "tensorlab/errors.hpp"

using namespace tensorlab;

namespace {

const char* kGrammar =
    "Variety specs: segre:d1,d2,..  veronese:n,d  segver:d1,d2,..@e1,e2,..\n"
    "               sub:d1,d2,d3@r1,r2,r3  symsub:n,r@d\n"
    "Exit codes: 0 ok, 2 invalid input, 3 size cap exceeded, 1 internal error.";

int run_config(const cli::Config& c) {
  const auto records = cli::run(c);
  cli::write_output(c, cli::emit(records, c.format));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tensorlab: exact experiments on tensor rank, secant varieties, Kronecker coefficients and matchgates"};
  app.footer(kGrammar);
  app.set_version_flag("--version", std::string(cli::kVersion));
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file: {\"command\": ..., <parameters>}");
  app.require_subcommand(0, 1);

  const std::map<std::string, std::string> about{
      {"terracini", "secant dimensions, generic ranks and defect scans"},
      {"rank", "flattening bounds, exhaustive rank over F_p, binary Waring rank"},
      {"decompose", "Sylvester, Gross, Kruskal and direct-sum experiments"},
      {"kron", "characters, Kronecker coefficients, cone samples, Weyl invariants"},
      {"matchgate", "Pfaffians, matchings, orientations, matchgate identities"},
      {"minrank", "minimum rank of matrix spaces, Gurvits family, entropy"}};
  std::map<std::string, std::map<std::string, CLI::Option*>> options;
  for (const auto& name : cli::commands()) {
    auto* sub = app.add_subcommand(name, about.at(name));
    auto& opts = options[name];
    // Repeats are collected here and judged by the config layer.
    auto add = [&](const std::string& key, const std::string& help) {
      opts[key] = sub->add_option("--" + key, help)->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    };
    for (const auto& spec : cli::param_specs(name)) {
      std::string help = spec.help;
      if (!spec.default_value.is_null()) help += " [default: " + spec.default_value.dump() + "]";
      add(spec.key, help);
    }
    add("seed", "64-bit seed [default: 0]");
    add("output", "output path; JSON lines are appended");
    add("format", "json | csv | text [default: json]");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cli::Config c;
    if (!config_path.empty()) {
      if (!app.get_subcommands().empty()) throw cli::ConfigError("config", "give either --config or a subcommand, not both");
      c = cli::parse_config(cli::Json::parse(io::read_file(config_path)));
    } else if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return 2;
    } else {
      const auto* sub = app.get_subcommands().front();
      std::vector<std::pair<std::string, std::vector<std::string>>> flags;
      for (const auto& [key, opt] : options.at(sub->get_name()))
        if (opt->count() > 0) flags.emplace_back(key, opt->results());
      c = cli::config_from_flags(sub->get_name(), flags);
    }
    return run_config(c);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const cli::Json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
