#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modtheory/core.hpp"
#include "modtheory/report.hpp"

namespace modtheory {

// Everything a suite run depends on. Reports are deterministic given this,
// apart from the timestamp (which can be pinned).
struct RunConfig {
  std::uint64_t seed = 1;
  std::vector<int> dims{2, 3};
  int trials = 200;
  std::vector<double> alpha_grid{1.0};
  std::vector<double> n_grid;  // empty: the suite's own grid
  std::map<std::string, double> tolerances;
  std::string out;
  std::string format = "json";
  std::optional<std::string> timestamp;

  // ConfigError on dims < 2, non-positive tolerances, unknown keys or format
  void validate() const;
  double tol(const std::string& key) const;
};

// tolerance keys understood by --tol KEY=VAL, with their defaults
const std::map<std::string, double>& default_tolerances();

VerificationReport cmd_verify_findim(const RunConfig& cfg);
VerificationReport cmd_qubit_demo(const RunConfig& cfg);
VerificationReport cmd_chiral_bound(const RunConfig& cfg);
// target is "ray" or "wedge"
VerificationReport cmd_swap_check(const RunConfig& cfg, const std::string& target);

}  // namespace modtheory
