#include "doctest.h"

#include "modtheory/report.hpp"
#include "modtheory/suites.hpp"

using namespace modtheory;

TEST_SUITE("report") {

TEST_CASE("case constructors") {
  const Case id = identity_case("a", {}, 1.0, 1.0 + 1e-9, 1e-8);
  CHECK(id.pass);
  CHECK(id.slack == doctest::Approx(-1e-9));
  CHECK_FALSE(identity_case("b", {}, 1.0, 1.1, 1e-8).pass);
  const Case iq = inequality_case("c", {}, 2.0, 1.0 - 1e-9, 1e-8);
  CHECK_FALSE(iq.pass);
  CHECK(inequality_case("d", {}, 1.0 + 1e-9, 1.0, 1e-8).pass);
  CHECK(info_case("e", {}, 5.0, 0.0).pass);
  CHECK_FALSE(identity_case("nan", {}, NAN, 0.0, 1.0).pass);
}

TEST_CASE("json round trip keeps every digit") {
  VerificationReport r;
  r.suite = "s";
  r.seed = 42;
  r.version = "1.0.0";
  r.timestamp = "2000-01-01T00:00:00Z";
  r.cases.push_back(identity_case("x", {{"p", 0.1}}, 0.1 + 0.2, 0.3, 1e-15));
  r.cases.push_back(inequality_case("y", {{"n", 3}}, -INFINITY, 1.0 / 3.0, 1e-8));
  r.cases.push_back(info_case("z", {}, NAN, 2.0));
  const VerificationReport back = report_from_json(to_json(r));
  CHECK(back.suite == r.suite);
  CHECK(back.seed == r.seed);
  CHECK(back.timestamp == r.timestamp);
  REQUIRE(back.cases.size() == 3);
  CHECK(back.cases[0].lhs == r.cases[0].lhs);
  CHECK(back.cases[1].lhs == -INFINITY);
  CHECK(back.cases[1].rhs == 1.0 / 3.0);
  CHECK(std::isnan(back.cases[2].lhs));
  CHECK(back.cases[2].kind == CaseKind::info);
  CHECK(back.cases[0].params == r.cases[0].params);
  CHECK(to_json(back) == to_json(r));
}

TEST_CASE("csv layout") {
  VerificationReport r;
  r.suite = "s";
  r.cases.push_back(identity_case("x", {{"k", 1}}, 1.0, 1.0, 1e-8));
  const std::string csv = to_csv(r);
  CHECK(csv.rfind("suite,case,param_json,lhs,rhs,slack,tolerance,pass\n", 0) == 0);
  CHECK(csv.find("\"s\",\"x\",") != std::string::npos);
}

TEST_CASE("run configuration validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.dims = {1};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.tolerances["oracle"] = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.tolerances["nope"] = 1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.format = "xml";
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  CHECK(c.tol("oracle") == 1e-10);
  c.tolerances["oracle"] = 1e-3;
  CHECK(c.tol("oracle") == 1e-3);
}

TEST_CASE("suites: deterministic, falsifiable, empty") {
  RunConfig c;
  c.trials = 6;
  c.dims = {2, 3};
  c.timestamp = "2000-01-01T00:00:00Z";
  const VerificationReport a = cmd_verify_findim(c), b = cmd_verify_findim(c);
  CHECK(a.all_pass());
  CHECK(to_json(a) == to_json(b));
  c.tolerances["oracle"] = 1e-30;
  CHECK(cmd_verify_findim(c).failures() > 0);
  RunConfig empty;
  empty.trials = 0;
  const VerificationReport e = cmd_verify_findim(empty);
  CHECK(e.cases.empty());
  CHECK(e.all_pass());
  CHECK_THROWS_AS(cmd_swap_check(RunConfig{}, "cone"), ConfigError);
}

TEST_CASE("qubit suite has three passing cases") {
  const VerificationReport r = cmd_qubit_demo(RunConfig{});
  CHECK(r.cases.size() == 3);
  CHECK(r.all_pass());
}

TEST_CASE("ray swap suite flags the negative-frequency rows") {
  RunConfig c;
  c.n_grid = {1, 4};
  const VerificationReport r = cmd_swap_check(c, "ray");
  CHECK(r.all_pass());
  for (const Case& k : r.cases)
    if (k.kind == CaseKind::info) CHECK(k.params.at("expected") == "nonzero");
}

}
