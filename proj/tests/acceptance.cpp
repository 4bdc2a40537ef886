// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance gate: one PASS/FAIL line per criterion.
//
//   cglab_acceptance               run every criterion
//   cglab_acceptance --criterion N run criterion N only
//
// Exit status is nonzero when any selected criterion fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cglab/critical.hpp"
#include "cglab/excess.hpp"
#include "cglab/generators.hpp"
#include "cglab/measure.hpp"
#include "cglab/metric_space.hpp"
#include "cglab/model_plane.hpp"
#include "cglab/pipelines.hpp"

using namespace cglab;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string failed;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    failed += (failed.empty() ? "" : "; ") + what;
  }
};

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> v;
  for (int i = 0; i < count; ++i) v.push_back(a + (b - a) * i / (count - 1));
  return v;
}

std::vector<double> logspace(double a, double b, int count) {
  std::vector<double> v;
  for (double t : linspace(std::log(a), std::log(b), count)) v.push_back(std::exp(t));
  return v;
}

// -- 1. model plane ----------------------------------------------------------

Outcome criterion_1() {
  Outcome o;
  const double angle = comparison_angle(0.0, 3.0, 4.0, 5.0);
  o.require(std::abs(angle - pi / 2) <= 1e-12, "comparison_angle(0,3,4,5) = pi/2 within 1e-12");

  // s'' + kappa s = 0 by central differences.
  double worst = 0.0;
  constexpr double kStep = 1e-4;
  for (double kappa : {-1.0, 0.0, 1.0}) {
    for (int i = 1; i <= 200; ++i) {
      const double r = 2.0 * i / 200.0;
      const double lo = std::max(r - kStep, 0.0);
      const double hi = r + kStep;
      const double mid = 0.5 * (lo + hi);
      const double h = 0.5 * (hi - lo);
      const double second = (jacobi_s(kappa, hi) - 2 * jacobi_s(kappa, mid) + jacobi_s(kappa, lo)) / (h * h);
      worst = std::max(worst, std::abs(second + kappa * jacobi_s(kappa, mid)));
    }
    const double slope = (jacobi_s(kappa, 1e-7) - jacobi_s(kappa, 0.0)) / 1e-7;
    worst = std::max(worst, std::abs(slope - 1.0));
    worst = std::max(worst, std::abs(jacobi_s(kappa, 0.0)));
  }
  o.require(worst <= 1e-6, "jacobi_s ODE residual within 1e-6");
  o.detail << "angle error " << std::abs(angle - pi / 2) << ", worst ODE residual " << worst;
  return o;
}

// -- 2. phi --------------------------------------------------------------------

Outcome criterion_2() {
  Outcome o;
  double worst_rel = 0.0;
  bool zero_ok = true;
  bool decreasing = true;
  const auto ls = linspace(0.2, 3.0, 20);
  for (int n = 2; n <= 6; ++n) {
    for (double l : ls) {
      zero_ok = zero_ok && phi(n, 0.0, l, l, PhiMethod::ClosedForm) == 0.0 &&
                phi(n, 0.0, l, l, PhiMethod::Quadrature) == 0.0;
      double prev = INFINITY;
      for (int i = 1; i <= 20; ++i) {
        const double r = l * i / 21.0;
        const double closed = phi(n, 0.0, r, l, PhiMethod::ClosedForm);
        const double quad = phi(n, 0.0, r, l, PhiMethod::Quadrature);
        worst_rel = std::max(worst_rel, std::abs(closed - quad) / std::abs(closed));
        decreasing = decreasing && closed < prev;
        prev = closed;
      }
    }
  }
  o.require(worst_rel <= 1e-6, "closed form vs quadrature relative error <= 1e-6");
  o.require(zero_ok, "phi(l, l) = 0 exactly");
  o.require(decreasing, "phi strictly decreasing in r");
  o.detail << "worst relative error " << worst_rel << " over n=2..6, 20x20 grids";
  return o;
}

// -- 3. chain bound ------------------------------------------------------------

Outcome criterion_3() {
  Outcome o;
  std::size_t tested = 0;
  std::size_t failures = 0;
  double worst = INFINITY;
  std::string example;
  for (int n = 2; n <= 6; ++n) {
    for (double h : logspace(0.01, 10.0, 30)) {
      for (double s : logspace(0.02, 100.0, 30)) {
        if (h > s / 2 || 2 * std::pow(h, n - 1) > s) continue;
        const VerificationReport r = chain_bound_check(h, s, n);
        if (r.verdict == Verdict::Excluded) continue;
        ++tested;
        const double margin = *r.worst_margin;
        if (margin < worst) {
          worst = margin;
          std::ostringstream ex;
          ex << "h=" << h << " s=" << s << " n=" << n << " lhs=" << r.details["lhs"].get<double>()
             << " bound=" << r.details["bound"].get<double>();
          example = ex.str();
        }
        if (margin < -kChainBoundTolerance) ++failures;
      }
    }
  }
  o.require(tested > 0, "admissible grid points exist");
  o.require(failures == 0, "margin >= -1e-12 on every admissible grid point");
  o.detail << failures << " of " << tested << " admissible points below margin -1e-12; worst " << worst
           << " at " << example;
  return o;
}

// -- 4. cone ground truth --------------------------------------------------------

Outcome criterion_4() {
  Outcome o;
  const AnalyticSpace cone = make_space({.kind = SpaceKind::ConeOverCircle, .radius = 4.0, .rho = 0.5});
  double worst_volume = 0.0;
  double worst_spread = 0.0;
  double worst_growth = 0.0;
  bool bg_pass = true;
  const auto radii = linspace(0.5, 3.0, 11);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const MeasuredSpace ms = sample(cone, 4000, seed);
    for (double r : radii) {
      const double exact = pi * 0.5 * r * r;
      worst_volume = std::max(worst_volume, std::abs(ball_volume(ms, 0, r) - exact) / exact);
      worst_growth = std::max(worst_growth, std::abs(volume_growth_ratio(ms, 0, r) - 0.5));
    }
    const RadialProfile prof = radial_profile(ms, 0, 8);
    bg_pass = bg_pass && bg_profile_check(prof, 2, 0.05).verdict == Verdict::Pass;
    double lo = INFINITY;
    double hi = 0.0;
    for (std::size_t b = 0; b < prof.bin_count(); ++b) {
      const double ratio = prof.a_estimates[b] / prof.mid(b);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    worst_spread = std::max(worst_spread, hi / lo - 1.0);
  }
  const IntegrationLemmaResult lemma = integration_lemma_check(cone, 4.0, 1e-9);
  o.require(worst_volume <= 0.02, "ball volume within 2% for r in [0.5, 3]");
  o.require(bg_pass && worst_spread <= 0.05, "a(r)/r constant within 5% (BG pass)");
  o.require(worst_growth <= 0.02, "volume growth ratio 0.5 +- 0.02");
  o.require(lemma.pass && std::abs(lemma.lhs - lemma.rhs) <= 1e-9, "integration lemma lhs = rhs to 1e-9");
  o.detail << "5 seeds, N=4000: worst volume error " << worst_volume << ", a(r)/r spread " << worst_spread
           << ", growth deviation " << worst_growth << ", lemma |lhs-rhs| " << std::abs(lemma.lhs - lemma.rhs);
  return o;
}

// -- 5. excess estimate ----------------------------------------------------------

Outcome criterion_5() {
  Outcome o;
  ExcessSampleConfig cfg;
  cfg.triples = 10000;
  cfg.seed = 17;
  const MeasuredSpace disk = sample(make_space({.kind = SpaceKind::EuclideanBall, .radius = 1.0}), 4000, 17);
  const MeasuredSpace cone =
      sample(make_space({.kind = SpaceKind::ConeOverCircle, .radius = 4.0, .rho = 0.5}), 4000, 17);
  const auto e = verify_excess_on_space(disk, cfg).report;
  const auto c = verify_excess_on_space(cone, cfg).report;
  o.require(e.items_tested == 10000 && e.violation_count == 0, "no violation on 1e4 Euclidean triples");
  o.require(c.items_tested == 10000 && c.violation_count == 0, "no violation on 1e4 cone triples");

  // Long thin triples in a hyperbolic tube.
  SpaceSpec tube{.kind = SpaceKind::HyperbolicDisk, .radius = 21.5, .kappa = -1.0};
  tube.tube = TubeRegion{20.0, 1.5};
  const MeasuredSpace hyp = sample(make_space(tube), 4000, 17);
  ExcessSampleConfig thin;
  thin.triples = 2000;
  thin.seed = 17;
  thin.min_s = 5.0;
  thin.min_h = 0.75;
  thin.max_h = 1.5;
  const auto h = verify_excess_on_space(hyp, thin).report;
  o.require(h.violation_count >= 1, "at least one violation on hyperbolic long thin triples");
  o.detail << "euclidean " << e.violation_count << "/" << e.items_tested << ", cone " << c.violation_count << "/"
           << c.items_tested << ", hyperbolic tube " << h.violation_count << "/" << h.items_tested
           << " violations";
  return o;
}

// -- 6. critical points ------------------------------------------------------------

CriticalScanReport default_scan(const MeasuredSpace& ms, double kappa) {
  const double net = ms.space().net_resolution();
  const double annulus = 5 * net;
  const double trusted = ms.generator()->trusted_radius();
  const auto grid = linspace(std::max(0.25 * trusted, 4 * net), trusted - annulus, 8);
  return critical_scan(ms, kappa, 0, grid);
}

Outcome criterion_6() {
  Outcome o;
  const MeasuredSpace disk = sample(make_space({.kind = SpaceKind::EuclideanBall, .radius = 1.0}), 4000, 6);
  const MeasuredSpace cone =
      sample(make_space({.kind = SpaceKind::ConeOverCircle, .radius = 4.0, .rho = 0.5}), 4000, 6);
  const auto e = default_scan(disk, 0.0);
  const auto c = default_scan(cone, 0.0);
  o.require(e.clear_beyond(3 * disk.space().net_resolution()), "euclidean: none beyond 3 delta_net");
  o.require(c.clear_beyond(3 * cone.space().net_resolution()), "cone: none beyond 3 delta_net");

  const MeasuredSpace cyl = sample(make_space({.kind = SpaceKind::FlatCylinder, .rho = 1.0, .half_height = 30.0}), 4000, 6);
  const double circumference = 2 * pi;
  const auto grid = linspace(2 * circumference + 0.5, 26.0, 8);
  const CriticalScanReport s = critical_scan(cyl, 0.0, 0, grid);
  std::size_t shells_with_critical = 0;
  for (const auto& sh : s.shells) shells_with_critical += sh.critical > 0 ? 1 : 0;
  o.require(s.critical_at_every_shell_beyond(2 * circumference),
            "cylinder: critical points at every radius beyond twice the circumference");
  o.detail << "euclidean critical " << e.critical_points.size() << ", cone critical " << c.critical_points.size()
           << ", cylinder shells with critical points " << shells_with_critical << "/" << s.shells.size();
  return o;
}

// -- 7. theorem constants --------------------------------------------------------

Outcome criterion_7() {
  Outcome o;
  const double g = gamma_threshold(0.1, 2.0, 2);
  const double gi = gamma_threshold(0.1, 2.0, 2, 1e6);
  const TheoremConstants tc = theorem_constants(2, 1.0);
  o.require(std::abs(g - 1.0 / 401.0) <= 1e-12, "gamma_threshold(0.1, 2, 2) = 1/401 to 1e-12");
  o.require(std::abs(gi - g) / g <= 1e-4, "intermediate form at Cbar = 1e6 within 1e-4 relative");
  o.require(std::abs(tc.epsilon_max - std::sqrt(std::log(2.0) / 8.0)) <= 1e-12,
            "epsilon_max(2, 1) = sqrt(ln 2 / 8) to 1e-12");
  double worst = INFINITY;
  for (double R : logspace(0.1, 1000.0, 200)) {
    worst = std::min(worst, contradiction_margin(2, 1.0, 0.99 * tc.epsilon_max, R));
  }
  o.require(worst > 0.0, "contradiction margin positive on R in [0.1, 1000]");
  o.detail << "gamma " << g << ", intermediate relative gap " << std::abs(gi - g) / g << ", epsilon_max "
           << tc.epsilon_max << ", min margin " << worst;
  return o;
}

// -- 8. BG negative control -------------------------------------------------------

Outcome criterion_8() {
  Outcome o;
  const MeasuredSpace hyp =
      sample(make_space({.kind = SpaceKind::HyperbolicDisk, .radius = 6.0, .kappa = -1.0}), 4000, 8);
  const auto bg = bg_profile_check(radial_profile(hyp, 0, 8), 2, 0.05);
  const auto ratio = ball_ratio_check(hyp, 0, 1.0, 3.0, 2);
  const auto quads = sample_quadruples(hyp.space(), 2000, 8);
  const double tol = hyp.space().default_tolerance();
  const auto at_minus_one = test_quadruples(hyp.space(), -1.0, quads, tol);
  const auto at_zero = test_quadruples(hyp.space(), 0.0, quads, tol);
  o.require(bg.verdict == Verdict::Fail, "bg_profile_check fails");
  o.require(ratio.verdict == Verdict::Fail, "ball_ratio_check fails at r1=1, r2=3");
  o.require(at_minus_one.violations == 0, "quadruple test passes at k=-1");
  o.require(at_zero.violations > 0, "quadruple test fails at k=0");
  o.detail << "ball ratio " << ratio.details.value("ratio", 0.0) << " vs " << 1.0 / 9.0
           << ", quadruple violations " << at_minus_one.violations << " at k=-1, " << at_zero.violations
           << " at k=0";
  return o;
}

// -- 9. determinism -----------------------------------------------------------------

Outcome criterion_9() {
  Outcome o;
  std::size_t compared = 0;
  auto run_twice = [&](const SpaceSpec& spec, std::size_t n) {
    const MeasuredSpace a = sample(make_space(spec), n, 11);
    const MeasuredSpace b = sample(make_space(spec), n, 11);
    for (const auto& name : pipeline_names()) {
      const Json cfg{{"seed", 11}};
      const PipelineResult ra = run_pipeline(a, name, cfg);
      const PipelineResult rb = run_pipeline(b, name, cfg);
      o.require(dump_report(ra.report.to_json()) == dump_report(rb.report.to_json()) && ra.csv == rb.csv,
                name + " on " + std::string(to_string(spec.kind)));
      ++compared;
    }
  };
  run_twice({.kind = SpaceKind::ConeOverCircle, .radius = 4.0, .rho = 0.5}, 1500);
  run_twice({.kind = SpaceKind::ParaboloidPatch, .radius = 1.0}, 600);
  const Json th{{"n", 3}, {"kappa", 2.0}, {"Cbar", 4.0}};
  o.require(dump_report(thresholds_report(th).to_json()) == dump_report(thresholds_report(th).to_json()),
            "thresholds");
  ++compared;
  o.detail << compared << " pipeline reruns compared byte for byte";
  return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> all{
      {"model-plane exactness", criterion_1},  {"phi consistency", criterion_2},
      {"chain bound", criterion_3},            {"cone ground truth", criterion_4},
      {"excess estimate", criterion_5},        {"critical-point controls", criterion_6},
      {"theorem constants", criterion_7},      {"BG negative control", criterion_8},
      {"determinism", criterion_9}};
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  const auto& all = criteria();
  if (only < 0 || only > static_cast<int>(all.size())) {
    std::fprintf(stderr, "criterion must be 1..%zu\n", all.size());
    return 2;
  }
  bool ok = true;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    Outcome out;
    try {
      out = all[i].second();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "error: " << e.what();
    }
    std::printf("criterion %zu (%s): %s - %s\n", i + 1, all[i].first.c_str(), out.pass ? "PASS" : "FAIL",
                out.detail.str().c_str());
    if (!out.failed.empty()) std::printf("  not met: %s\n", out.failed.c_str());
    ok = ok && out.pass;
  }
  return ok ? 0 : 1;
}
