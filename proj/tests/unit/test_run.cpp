#include <doctest.h>

#include "achern/errors.hpp"
#include "achern/run.hpp"

using namespace achern;

namespace {

RunOutcome run_json(const Json& j) { return run_text(j.dump()); }

const Json* verdict(const Json& report, const std::string& claim) {
  for (const auto& v : report["forms"][0]["verdicts"])
    if (v["claim"] == claim) return &v;
  return nullptr;
}

}  // namespace

TEST_CASE("delta: Fermat quotient of 2 at 3") {
  const auto out = run_json({{"command", "delta"}, {"a", "2"}, {"p", 3}});
  CHECK(out.code == ExitCode::Ok);
  CHECK(out.report["results"][0]["delta"] == "-2");
  CHECK(out.report["results"][0]["frobenius"] == "2");
  // (1/2 - 1/8) / 3 = 1/8 at p = 3
  const auto half = run_json({{"command", "delta"}, {"a", "1/2"}, {"p", 3}});
  CHECK(half.report["results"][0]["delta"] == "1/8");
}

TEST_CASE("lift: q = [[2]] at 3 is not global, constant term -2") {
  const auto out = run_json({{"command", "lift"}, {"q", {{2}}}, {"p", 3}});
  CHECK(out.code == ExitCode::Ok);
  const auto& lift = out.report["lifts"][0];
  CHECK(lift["constant_term"][0][0] == "-2");
  CHECK(lift["global_along_identity"] == false);
  CHECK(lift["flags"] == Json::array({"not-global-along-1"}));
  CHECK(lift["deficits"]["identity_I"] == 0);
}

TEST_CASE("lift: sp(2) certificate in the report") {
  const auto out = run_json({{"command", "lift"}, {"form", {{"kind", "sp"}, {"r", 1}}}, {"primes", {5, 3}}});
  REQUIRE(out.code == ExitCode::Ok);
  REQUIRE(out.report["lifts"].size() == 2);
  CHECK(out.report["lifts"][0]["p"] == 3);
  CHECK(out.report["lifts"][0]["certificate"]["passed"] == true);
  CHECK(out.report["lifts"][0]["constant_term"] == Json::array({{"1", "0"}, {"0", "1"}}));
}

TEST_CASE("verify-theorems: sp(2) passes") {
  const auto out = run_json({{"command", "verify-theorems"}, {"form", "sp(2)"}, {"primes", {3, 5}}});
  CHECK(out.code == ExitCode::Ok);
  const auto* v = verdict(out.report, "curvature_vanishes_sp2");
  REQUIRE(v);
  CHECK((*v)["status"] == "pass");
}

TEST_CASE("verify-theorems: rank 4 undetected at D = 4 is inconclusive, not a pass") {
  const auto out =
      run_json({{"command", "verify-theorems"}, {"form", "so(4)"}, {"primes", {3, 5}}, {"escalate", true}});
  CHECK(out.code == ExitCode::Inconclusive);
  CHECK(out.report["status"] == "inconclusive");
  CHECK((*verdict(out.report, "curvature_nonzero_rank_ge4"))["status"] == "inconclusive");
  CHECK((*verdict(out.report, "curvature_cubic_even_rank"))["status"] == "pass");
}

TEST_CASE("input errors exit 1 with a message") {
  const std::vector<std::pair<Json, std::string>> cases = {
      {{{"command", "lift"}, {"form", "sp(2)"}, {"primes", Json::array()}}, "non-empty"},
      {{{"command", "lift"}, {"form", "sp(3)"}}, "n even"},
      {{{"command", "bogus"}}, "unknown command"},
      {{{"command", "lift"}, {"form", "sp(2)"}, {"primez", {3}}}, "unknown config key"},
      {{{"command", "lift"}, {"form", "sp(2)"}, {"primes", {9}}}, "InadmissiblePrime"},
      {{{"command", "lift"}, {"q", {{3}}}, {"p", 3}}, "not a unit"},
      {{{"command", "lift"}, {"q", {{1, 2}, {3, 1}}}}, "InvalidForm"},
      {{{"command", "curvature"}, {"form", "sp(2)"}, {"p", 3}}, "two distinct primes"},
      {{{"command", "delta"}, {"p", 3}}, "needs 'a'"},
      {{{"command", "delta"}, {"a", "1/3"}, {"p", 5}}, "DenominatorNotInvertible"},
      {{{"command", "lift"}, {"form", "sp(2)"}, {"K", 200}}, "PrecisionTooLarge"},
      {{{"command", "lift"}, {"form", "sp(2)"}, {"output", {{"format", "xml"}}}}, "unknown format"},
  };
  for (const auto& [cfg, needle] : cases) {
    CAPTURE(cfg.dump());
    const auto out = run_json(cfg);
    CHECK(out.code == ExitCode::InputError);
    REQUIRE(out.report.contains("error"));
    CHECK(out.report["error"].get<std::string>().find(needle) != std::string::npos);
  }
  CHECK(run_text("{not json").code == ExitCode::InputError);
  CHECK_THROWS_AS(parse_config_text("[]"), ConfigError);
}

TEST_CASE("reports are byte-identical across runs and job counts") {
  const Json cfg = {{"command", "verify-theorems"}, {"forms", {"sp(2)", "so(3)"}}, {"primes", {7, 3, 5}}};
  const auto a = run_json(cfg);
  Json cfg3 = cfg;
  cfg3["jobs"] = 3;
  const auto b = run_json(cfg3);
  for (auto f : {ReportFormat::Json, ReportFormat::Csv, ReportFormat::Markdown}) {
    CHECK(render(a.report, f) == render(run_json(cfg).report, f));
    CHECK(render(a.report, f) == render(b.report, f));
  }
}

TEST_CASE("curvature report carries the divisibility witness table") {
  const auto out = run_json({{"command", "curvature"}, {"form", "sp(4)"}, {"primes", {3, 5}}, {"D", 6}});
  REQUIRE(out.code == ExitCode::Ok);
  const auto& pair = out.report["pairs"][0];
  CHECK(pair["lowest_degree"] == 6);
  const auto& first = pair["degrees"][0]["coefficients"][0];
  CHECK(first["row"] == 1);
  CHECK(first["col"] == 1);
  CHECK(first["monomial"] == "T12^2*T21^3*T43");
  CHECK(first["commutator"] == "15/4");
  CHECK(first["curvature"] == "1/4");
  CHECK(first["val_p"] == 1);
  CHECK(first["val_p2"] == 1);
  const std::string md = render(out.report, ReportFormat::Markdown);
  CHECK(md.find("| 6 | (1,1) | T12^2*T21^3*T43 | 15/4 | 1/4 | 1 | 1 |") != std::string::npos);
  const std::string csv = render(out.report, ReportFormat::Csv);
  CHECK(csv.find("sp(4),3,5,6,6,1,1,T12^2*T21^3*T43,15/4,1/4,1,1\n") != std::string::npos);
}

TEST_CASE("no floating point in reports") {
  const auto out = run_json({{"command", "lift"}, {"form", "so(3)"}, {"p", 5}});
  std::function<void(const Json&)> walk = [&](const Json& j) {
    CHECK_FALSE(j.is_number_float());
    if (j.is_structured())
      for (const auto& x : j) walk(x);
  };
  walk(out.report);
}

TEST_CASE("classical command") {
  const auto out = run_json({{"command", "classical"}, {"seed", 5}, {"trials", 12}});
  CHECK(out.code == ExitCode::Ok);
  for (const auto& c : out.report["checks"]) CHECK(c["passed"] == c["cases"]);
}
