#include "modtheory/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

#ifndef MODTHEORY_VERSION
#define MODTHEORY_VERSION "0.0.0"
#endif

namespace modtheory {

namespace {

std::string fmt17(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // keep it a JSON float so the type survives a round trip
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

void write_json(const nlohmann::json& j, std::ostringstream& os) {
  using T = nlohmann::json::value_t;
  switch (j.type()) {
    case T::number_float: os << fmt17(j.get<double>()); break;
    case T::object: {
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        os << nlohmann::json(it.key()).dump() << ':';
        write_json(it.value(), os);
      }
      os << '}';
      break;
    }
    case T::array: {
      os << '[';
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) os << ',';
        write_json(j[i], os);
      }
      os << ']';
      break;
    }
    default: os << j.dump();
  }
}

double read_number(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    return NAN;
  }
  return j.get<double>();
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(CaseKind k) {
  switch (k) {
    case CaseKind::identity: return "identity";
    case CaseKind::inequality: return "inequality";
    case CaseKind::info: return "info";
  }
  return "identity";
}

Case identity_case(std::string name, nlohmann::json params, double lhs, double rhs, double tol) {
  Case c{std::move(name), std::move(params), lhs, rhs, 0, tol, false, CaseKind::identity};
  const double gap = std::abs(lhs - rhs);
  c.slack = std::isnan(gap) ? -INFINITY : -gap;
  c.pass = gap <= tol;
  return c;
}

Case inequality_case(std::string name, nlohmann::json params, double lhs, double rhs, double tol) {
  Case c{std::move(name), std::move(params), lhs, rhs, 0, tol, false, CaseKind::inequality};
  // +∞ on the right dominates everything, including +∞ on the left
  if (std::isinf(rhs) && rhs > 0)
    c.slack = INFINITY;
  else
    c.slack = rhs - lhs;
  if (std::isnan(c.slack)) c.slack = -INFINITY;
  c.pass = c.slack >= -tol;
  return c;
}

Case info_case(std::string name, nlohmann::json params, double lhs, double rhs) {
  Case c{std::move(name), std::move(params), lhs, rhs, rhs - lhs, 0, true, CaseKind::info};
  return c;
}

bool VerificationReport::all_pass() const { return failures() == 0; }

int VerificationReport::failures() const {
  int f = 0;
  for (const auto& c : cases) f += c.pass ? 0 : 1;
  return f;
}

std::string artifact_version() { return MODTHEORY_VERSION; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string to_json(const VerificationReport& r) {
  std::ostringstream os;
  os << "{\"suite\":" << nlohmann::json(r.suite).dump() << ",\"seed\":" << r.seed
     << ",\"version\":" << nlohmann::json(r.version).dump() << ",\"timestamp\":" << nlohmann::json(r.timestamp).dump()
     << ",\"cases\":[";
  for (size_t i = 0; i < r.cases.size(); ++i) {
    const Case& c = r.cases[i];
    if (i) os << ',';
    os << "\n{\"name\":" << nlohmann::json(c.name).dump() << ",\"kind\":\"" << to_string(c.kind) << "\",\"params\":";
    write_json(c.params, os);
    os << ",\"lhs\":" << fmt17(c.lhs) << ",\"rhs\":" << fmt17(c.rhs) << ",\"slack\":" << fmt17(c.slack)
       << ",\"tolerance\":" << fmt17(c.tolerance) << ",\"pass\":" << (c.pass ? "true" : "false") << '}';
  }
  os << "\n]}\n";
  return os.str();
}

VerificationReport report_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  VerificationReport r;
  r.suite = j.at("suite").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.version = j.at("version").get<std::string>();
  r.timestamp = j.at("timestamp").get<std::string>();
  for (const auto& jc : j.at("cases")) {
    Case c;
    c.name = jc.at("name").get<std::string>();
    const auto kind = jc.at("kind").get<std::string>();
    c.kind = kind == "inequality" ? CaseKind::inequality : kind == "info" ? CaseKind::info : CaseKind::identity;
    c.params = jc.at("params");
    c.lhs = read_number(jc.at("lhs"));
    c.rhs = read_number(jc.at("rhs"));
    c.slack = read_number(jc.at("slack"));
    c.tolerance = read_number(jc.at("tolerance"));
    c.pass = jc.at("pass").get<bool>();
    r.cases.push_back(std::move(c));
  }
  return r;
}

std::string to_csv(const VerificationReport& r) {
  std::ostringstream os;
  os << "suite,case,param_json,lhs,rhs,slack,tolerance,pass\n";
  for (const Case& c : r.cases) {
    std::ostringstream params;
    write_json(c.params, params);
    os << csv_quote(r.suite) << ',' << csv_quote(c.name) << ',' << csv_quote(params.str()) << ',' << csv_number(c.lhs)
       << ',' << csv_number(c.rhs) << ',' << csv_number(c.slack) << ',' << csv_number(c.tolerance) << ','
       << (c.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace modtheory
