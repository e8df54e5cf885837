#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace modtheory {

enum class CaseKind { identity, inequality, info };

// One checked relation. identity: |lhs − rhs| ≤ tolerance, slack = −|lhs − rhs|.
// inequality lhs ≤ rhs: slack = rhs − lhs ≥ −tolerance. info: recorded only.
struct Case {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  double lhs = 0, rhs = 0, slack = 0, tolerance = 0;
  bool pass = true;
  CaseKind kind = CaseKind::identity;
};

Case identity_case(std::string name, nlohmann::json params, double lhs, double rhs, double tol);
Case inequality_case(std::string name, nlohmann::json params, double lhs, double rhs, double tol);
Case info_case(std::string name, nlohmann::json params, double lhs, double rhs);

struct VerificationReport {
  std::string suite;
  std::vector<Case> cases;
  std::uint64_t seed = 0;
  std::string version;
  std::string timestamp;

  bool all_pass() const;
  int failures() const;
};

std::string artifact_version();
std::string utc_timestamp();

// JSON with every floating-point number written at 17 significant digits;
// non-finite numbers become the strings "inf", "-inf", "nan".
std::string to_json(const VerificationReport& r);
VerificationReport report_from_json(const std::string& text);
// Header: suite,case,param_json,lhs,rhs,slack,tolerance,pass
std::string to_csv(const VerificationReport& r);

std::string to_string(CaseKind k);

}  // namespace modtheory
