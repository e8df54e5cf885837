#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "modtheory/suites.hpp"

using namespace modtheory;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

void emit(const VerificationReport& rep, const RunConfig& cfg) {
  const std::string text = cfg.format == "csv" ? to_csv(rep) : to_json(rep);
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw ConfigError("cannot open output file " + cfg.out);
  f << text;
}

void summarize(const VerificationReport& rep) {
  for (const Case& c : rep.cases)
    if (!c.pass) std::cerr << "FAIL " << c.name << "  lhs=" << c.lhs << " rhs=" << c.rhs << " slack=" << c.slack << '\n';
  std::cerr << rep.suite << ": " << rep.cases.size() - rep.failures() << '/' << rep.cases.size() << " cases pass\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modular-theory verification suites"};
  app.set_version_flag("--version", artifact_version());
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::vector<std::string> tol_pairs;
  std::string timestamp;
  app.add_option("--seed", cfg.seed, "RNG seed");
  app.add_option("--dims", cfg.dims, "matrix dimensions (each ≥ 2)")->delimiter(',');
  app.add_option("--trials", cfg.trials, "number of random instances");
  app.add_option("--alpha", cfg.alpha_grid, "test-function decay constants")->delimiter(',');
  app.add_option("--n", cfg.n_grid, "smearing widths")->delimiter(',');
  app.add_option("--tol", tol_pairs, "tolerance override KEY=VAL (repeatable)");
  app.add_option("--out", cfg.out, "report path (default: stdout)");
  app.add_option("--format", cfg.format, "json or csv");
  app.add_option("--timestamp", timestamp, "pin the report timestamp");

  auto* findim = app.add_subcommand("verify-findim", "finite-dimensional property ensembles");
  auto* qubit = app.add_subcommand("qubit-demo", "maximally entangled qubit pair");
  auto* chiral = app.add_subcommand("chiral-bound", "chiral current norm expansion and Wick bound");
  auto* swap = app.add_subcommand("swap-check", "swapping-partner identity on the ray or the wedge");
  std::string target;
  swap->add_option("target", target, "ray or wedge")->required()->check(CLI::IsMember({"ray", "wedge"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    for (const std::string& kv : tol_pairs) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--tol expects KEY=VAL, got " + kv);
      try {
        cfg.tolerances[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
      } catch (const std::logic_error&) {
        throw ConfigError("--tol value is not a number: " + kv);
      }
    }
    if (!timestamp.empty()) cfg.timestamp = timestamp;
    cfg.validate();

    VerificationReport rep;
    if (*findim) rep = cmd_verify_findim(cfg);
    if (*qubit) {
      rep = cmd_qubit_demo(cfg);
      for (const Case& c : rep.cases) std::cerr << c.name << ": deviation " << c.lhs << '\n';
    }
    if (*chiral) rep = cmd_chiral_bound(cfg);
    if (*swap) rep = cmd_swap_check(cfg, target);
    emit(rep, cfg);
    summarize(rep);
    return rep.all_pass() ? 0 : kExitFail;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
}
