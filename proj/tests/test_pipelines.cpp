// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cglab/errors.hpp"
#include "cglab/generators.hpp"
#include "cglab/pipelines.hpp"

using namespace cglab;

namespace {

const MeasuredSpace& cone() {
  static const auto ms =
      sample(make_space({.kind = SpaceKind::ConeOverCircle, .radius = 4.0, .rho = 0.5}), 1500, 11);
  return ms;
}
const MeasuredSpace& hyperbolic() {
  static const auto ms =
      sample(make_space({.kind = SpaceKind::HyperbolicDisk, .radius = 4.0, .kappa = -1.0}), 1500, 11);
  return ms;
}

}  // namespace

TEST_SUITE("pipelines") {

TEST_CASE("pipeline names") {
  const auto& names = pipeline_names();
  CHECK(names.size() == 6);
  CHECK_THROWS_AS(run_pipeline(cone(), "check-everything", Json::object()), InputError);
}

TEST_CASE("inspect") {
  const auto r = run_pipeline(cone(), "inspect", Json::object());
  CHECK(r.report.verdict == Verdict::Pass);
  CHECK(r.csv.empty());
  const Json& d = r.report.details;
  CHECK(d.at("points") == 1500);
  CHECK(d.at("backing") == "exact");
  CHECK(d.at("generator_kind") == std::string(to_string(SpaceKind::ConeOverCircle)));
  CHECK(d.at("total_weight").get<double>() == doctest::Approx(0.5 * std::numbers::pi * 16).epsilon(1e-12));
  CHECK(d.at("link_measure").get<double>() == doctest::Approx(std::numbers::pi));
  CHECK(r.report.config_echo.at("center") == 0);
  CHECK_THROWS_AS(run_pipeline(cone(), "inspect", {{"center", 99999}}), DomainError);
}

TEST_CASE("unknown and mistyped config keys") {
  for (const auto& name : pipeline_names()) {
    CHECK_THROWS_AS(run_pipeline(cone(), name, {{"no_such_key", 1}}), InputError);
  }
  CHECK_THROWS_AS(run_pipeline(cone(), "check-bg", {{"bins", "eight"}}), InputError);
  CHECK_THROWS_AS(run_pipeline(cone(), "check-bg", Json::array()), InputError);
  CHECK_THROWS_AS(thresholds_report({{"nn", 2}}), InputError);
}

TEST_CASE("check-curvature") {
  const Json cfg{{"samples", 800}, {"seed", 3}};
  const auto r = run_pipeline(cone(), "check-curvature", cfg);
  CHECK(r.report.verdict == Verdict::Pass);
  CHECK(r.report.items_tested == 800);
  CHECK(r.report.config_echo.at("kappa") == 0.0);
  CHECK(r.csv.rfind("p,a,b,c,defect\n", 0) == 0);

  const auto h = run_pipeline(hyperbolic(), "check-curvature", {{"samples", 800}, {"kappa", 0.0}});
  CHECK(h.report.verdict == Verdict::Fail);
  CHECK(h.report.violation_count > 0);
  CHECK(h.report.violations.size() <= VerificationReport::kMaxListedViolations);
  CHECK(*h.report.worst_margin < 0.0);
  const auto hk = run_pipeline(hyperbolic(), "check-curvature", {{"samples", 800}});
  CHECK(hk.report.verdict == Verdict::Pass);
}

TEST_CASE("check-bg") {
  const auto r = run_pipeline(cone(), "check-bg", {{"bins", 6}});
  CHECK(r.report.verdict == Verdict::Pass);
  CHECK(r.report.details.at("reports").size() == 3);
  CHECK(r.report.details.at("min_volume_growth_ratio").get<double>() ==
        doctest::Approx(0.5).epsilon(0.06));
  CHECK(r.csv.find('\n') != std::string::npos);

  const auto h = run_pipeline(hyperbolic(), "check-bg", {{"r1", 1.0}, {"r2", 3.0}});
  CHECK(h.report.verdict == Verdict::Fail);
  CHECK_THROWS_AS(run_pipeline(cone(), "check-bg", {{"r1", -1.0}}), DomainError);
}

TEST_CASE("check-excess") {
  const auto r = run_pipeline(cone(), "check-excess", {{"triples", 300}, {"seed", 2}});
  CHECK(r.report.verdict == Verdict::Pass);
  CHECK(r.report.items_tested > 0);
  CHECK(r.report.items_tested <= 300);
  CHECK(r.report.pipeline == "check-excess");
  CHECK_THROWS_AS(run_pipeline(cone(), "check-excess", {{"triples", 0}}), DomainError);
}

TEST_CASE("scan-critical") {
  const auto r = run_pipeline(cone(), "scan-critical", {{"seed", 1}});
  CHECK(r.report.verdict == Verdict::Pass);
  CHECK(r.report.details.at("reports").size() == 2);
  CHECK(r.report.config_echo.contains("radii"));
  CHECK(r.report.config_echo.contains("placement"));
  CHECK(r.csv == "point,radius,max_angle\n");

  const auto off = run_pipeline(cone(), "scan-critical", {{"placement", {{"enabled", false}}}});
  CHECK(off.report.details.at("reports").size() == 1);
  CHECK_THROWS_AS(run_pipeline(cone(), "scan-critical", {{"radii", {2.0, 1.0}}}), DomainError);
}

TEST_CASE("verify-all combines every check") {
  const auto r = run_pipeline(cone(), "verify-all", {{"seed", 5}, {"check-excess", {{"triples", 200}}}});
  CHECK(r.report.verdict == Verdict::Pass);
  const Json& parts = r.report.details.at("reports");
  REQUIRE(parts.size() == 4);
  CHECK(parts[0].at("pipeline") == "check-curvature");
  CHECK(parts[3].at("pipeline") == "scan-critical");
  for (const auto& p : parts) CHECK(p.at("seed") == 5);
  CHECK(r.report.config_echo.at("check-excess").at("triples") == 200);
}

TEST_CASE("reports are deterministic and complete") {
  for (const auto& name : pipeline_names()) {
    const Json cfg{{"seed", 8}};
    const auto a = dump_report(run_pipeline(cone(), name, cfg).report.to_json());
    const auto b = dump_report(run_pipeline(cone(), name, cfg).report.to_json());
    CHECK(a == b);
    const Json j = Json::parse(a);
    for (const char* key : {"pipeline", "config_echo", "seed", "items_tested", "violation_count",
                            "violations", "worst_margin", "tolerance", "verdict", "warnings", "details"}) {
      CHECK(j.contains(key));
    }
    CHECK(j.at("seed") == 8);
  }
}

TEST_CASE("thresholds") {
  const auto rep = thresholds_report({{"n", 2}, {"kappa", 1.0}});
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(rep.details.at("epsilon_max").get<double>() == doctest::Approx(0.29435250562886867).epsilon(1e-14));
  CHECK(rep.details.at("alpha_min").get<double>() == doctest::Approx(0.97921153640347478).epsilon(1e-13));
  CHECK(rep.items_tested == 51);
  CHECK_FALSE(rep.details.contains("gamma_intermediate"));
  const auto with_cbar = thresholds_report({{"n", 3}, {"kappa", 2.0}, {"Cbar", 4.0}, {"radii", {1.0, 10.0}}});
  CHECK(with_cbar.details.at("gamma_intermediate").get<double>() <
        with_cbar.details.at("gamma_threshold").get<double>());
  CHECK(with_cbar.items_tested == 2);
  CHECK_THROWS_AS(thresholds_report({{"kappa", -1.0}}), DomainError);
  CHECK_THROWS_AS(thresholds_report({{"eps", 0.5}}), DomainError);
}

TEST_CASE("combine") {
  VerificationReport pass;
  pass.pipeline = "a";
  pass.record(1.0);
  pass.conclude();
  VerificationReport empty;
  empty.pipeline = "b";
  empty.conclude();
  VerificationReport bad;
  bad.pipeline = "c";
  bad.record(-2.0);
  bad.add_violation({{"x", 1}});
  bad.conclude();

  CHECK(combine("all", {pass}).verdict == Verdict::Pass);
  CHECK(combine("all", {pass, empty}).verdict == Verdict::Inconclusive);
  const auto all = combine("all", {pass, empty, bad});
  CHECK(all.verdict == Verdict::Fail);
  CHECK(all.items_tested == 2);
  CHECK(*all.worst_margin == -2.0);
  CHECK(all.violations.at(0).at("pipeline") == "c");
  VerificationReport excluded = pass;
  excluded.verdict = Verdict::Excluded;
  CHECK(combine("all", {pass, excluded}).verdict == Verdict::Inconclusive);
}

TEST_CASE("non-finite margins serialize") {
  VerificationReport r;
  r.record(-INFINITY);
  r.tolerance = INFINITY;
  const Json j = r.to_json();
  CHECK(j.at("worst_margin") == "-inf");
  CHECK(j.at("tolerance") == "inf");
  CHECK(dump_report(j).back() == '\n');
}

}  // TEST_SUITE
