// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cglab/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cglab/errors.hpp"
#include "cglab/model_plane.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace cglab {

std::string_view to_string(Criticality c) {
  switch (c) {
    case Criticality::Critical: return "critical";
    case Criticality::Regular: return "regular";
    case Criticality::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

CriticalityResult classify(const FiniteMetricSpace& space, const ModelPlane& plane, Index p, Index q,
                           const std::vector<double>& from_p, double annulus_radius, double tol) {
  const auto from_q = space.distances_from(q);
  const double qp = from_q[p];
  CriticalityResult res;
  res.max_angle = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < from_q.size(); ++i) {
    const double qx = from_q[i];
    if (!(qx > 0.0) || qx > annulus_radius || i == p) continue;
    const double xp = from_p[i];
    if (!plane.admits(qx, qp, xp)) continue;
    ++res.annulus_points;
    const double angle = plane.angle(qx, qp, xp);
    if (angle > res.max_angle) {
      res.max_angle = angle;
      res.witness = static_cast<Index>(i);
    }
  }
  if (res.annulus_points < kMinAnnulusPoints) {
    res.status = Criticality::Inconclusive;
  } else {
    res.status = res.max_angle <= kHalfPi + tol ? Criticality::Critical : Criticality::Regular;
  }
  return res;
}

}  // namespace

CriticalityResult is_critical(const MeasuredSpace& ms, double k, Index p, Index q,
                              double annulus_radius, double tol) {
  if (p == q) throw DomainError("is_critical requires q != p");
  if (!(annulus_radius > 0.0)) throw DomainError("annulus radius must be positive");
  const auto& space = ms.space();
  return classify(space, ModelPlane(k), p, q, space.distances_from(p), annulus_radius, tol);
}

bool CriticalScanReport::clear_beyond(double radius) const {
  for (const auto& c : critical_points) {
    if (c.radius >= radius) return false;
  }
  return true;
}

bool CriticalScanReport::critical_at_every_shell_beyond(double radius) const {
  bool any = false;
  for (const auto& s : shells) {
    if (s.radius < radius) continue;
    any = true;
    if (s.critical == 0) return false;
  }
  return any;
}

std::string CriticalScanReport::summary() const {
  std::ostringstream out;
  if (radius_grid.empty()) return "empty radius grid";
  if (critical_points.empty()) {
    out << "no critical points found on shells " << radius_grid.front() << " to "
        << radius_grid.back()
        << "; consistent with finite topological type (sampled evidence, not a certificate)";
  } else {
    out << critical_points.size() << " critical points found, largest radius "
        << *largest_critical_radius << "; no finite-type evidence on the scanned range";
  }
  return out.str();
}

VerificationReport CriticalScanReport::to_report() const {
  VerificationReport rep;
  rep.pipeline = "critical_scan";
  rep.tolerance = tol;
  for (const auto& s : shells) rep.items_tested += s.tested;
  for (const auto& c : critical_points) {
    rep.add_violation({{"point", c.point}, {"radius", c.radius}, {"max_angle", c.max_angle}});
  }
  Json shell_json = Json::array();
  std::size_t inconclusive = 0;
  for (const auto& s : shells) {
    shell_json.push_back({{"radius", s.radius}, {"tested", s.tested}, {"critical", s.critical},
                          {"inconclusive", s.inconclusive}});
    inconclusive += s.inconclusive;
  }
  rep.details = {{"center", center},     {"kappa", kappa},
                 {"radius_grid", radius_grid}, {"annulus_radius", annulus_radius},
                 {"band", band},         {"shells", shell_json},
                 {"largest_critical_radius",
                  largest_critical_radius ? Json(*largest_critical_radius) : Json(nullptr)},
                 {"summary", summary()}};
  if (inconclusive > 0) {
    rep.warnings.push_back(std::to_string(inconclusive) + " points had fewer than " +
                           std::to_string(kMinAnnulusPoints) + " annulus points");
  }
  rep.conclude();
  return rep;
}

CriticalScanReport critical_scan(const MeasuredSpace& ms, double k, Index p,
                                 std::span<const double> radius_grid,
                                 const CriticalScanOptions& options) {
  for (std::size_t i = 0; i < radius_grid.size(); ++i) {
    if (!(radius_grid[i] > 0.0) || (i > 0 && !(radius_grid[i] > radius_grid[i - 1]))) {
      throw DomainError("radius grid must be positive and strictly increasing");
    }
  }
  const auto& space = ms.space();
  CriticalScanReport rep;
  rep.center = p;
  rep.kappa = k;
  rep.radius_grid.assign(radius_grid.begin(), radius_grid.end());
  rep.annulus_radius = options.annulus_radius.value_or(5.0 * space.net_resolution());
  rep.band = options.band.value_or(space.net_resolution());
  rep.tol = options.tol;
  if (!(rep.annulus_radius > 0.0) || !(rep.band > 0.0)) {
    throw DomainError("annulus radius and band must be positive");
  }

  const ModelPlane plane(k);
  const auto from_p = space.distances_from(p);
  for (double radius : radius_grid) {
    std::vector<Index> shell;
    for (std::size_t i = 0; i < from_p.size(); ++i) {
      if (i != p && std::abs(from_p[i] - radius) <= rep.band) shell.push_back(static_cast<Index>(i));
    }
    std::vector<CriticalityResult> results(shell.size());
    detail::parallel_for(shell.size(), [&](std::size_t i) {
      results[i] = classify(space, plane, p, shell[i], from_p, rep.annulus_radius, rep.tol);
    });
    ShellSummary summary{radius, shell.size(), 0, 0};
    for (std::size_t i = 0; i < shell.size(); ++i) {
      if (results[i].status == Criticality::Critical) {
        ++summary.critical;
        rep.critical_points.push_back({shell[i], from_p[shell[i]], results[i].max_angle});
      } else if (results[i].status == Criticality::Inconclusive) {
        ++summary.inconclusive;
      }
    }
    rep.shells.push_back(summary);
  }
  std::sort(rep.critical_points.begin(), rep.critical_points.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) { return a.point < b.point; });
  rep.critical_points.erase(
      std::unique(rep.critical_points.begin(), rep.critical_points.end(),
                  [](const CriticalPoint& a, const CriticalPoint& b) { return a.point == b.point; }),
      rep.critical_points.end());
  for (const auto& c : rep.critical_points) {
    rep.largest_critical_radius = std::max(rep.largest_critical_radius.value_or(0.0), c.radius);
  }
  return rep;
}

double gamma_threshold(double eps, double C, int n, std::optional<double> Cbar) {
  if (!(eps > 0.0) || !(C > 1.0) || n < 2) {
    throw DomainError("gamma_threshold requires eps > 0, C > 1, n >= 2");
  }
  const double cn = std::pow(C, n);
  const double en = std::pow(eps, n);
  if (!Cbar) return 1.0 / (1.0 + cn / en);
  if (!(*Cbar > C)) throw DomainError("gamma_threshold requires Cbar > C");
  // (1+Cbar)^n / (Cbar^n - C^n) written as ((1+Cbar)/Cbar)^n / (1 - (C/Cbar)^n).
  const double growth = std::pow(1.0 + 1.0 / *Cbar, n) / (1.0 - std::pow(C / *Cbar, n));
  return 1.0 / (1.0 + growth * cn / en);
}

TheoremConstants theorem_constants(int n, double kappa, std::optional<double> epsilon) {
  if (n < 2) throw DomainError("theorem_constants requires n >= 2");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("theorem_constants requires kappa > 0");
  TheoremConstants tc;
  tc.n = n;
  tc.kappa = kappa;
  tc.epsilon_max = std::pow(std::log(2.0) / (8.0 * kappa), (n - 1.0) / n);
  tc.epsilon = epsilon.value_or(0.99 * tc.epsilon_max);
  if (!(tc.epsilon > 0.0 && tc.epsilon < tc.epsilon_max)) {
    throw DomainError("epsilon must lie in (0, epsilon_max)");
  }
  const auto alpha = [n](double e) { return 1.0 - 1.0 / (1.0 + std::pow(2.0 / e, n)); };
  tc.alpha_min = alpha(tc.epsilon);
  tc.alpha_limit = alpha(tc.epsilon_max);
  return tc;
}

double contradiction_margin(int n, double kappa, double eps, double R) {
  if (n < 2 || !(eps > 0.0)) throw DomainError("contradiction_margin requires n >= 2 and eps > 0");
  return hyperbolic_excess_lower_bound(kappa, R) - 8.0 * std::pow(eps, n / (n - 1.0));
}

VerificationReport geodesic_placement_check(const MeasuredSpace& ms, Index p, double C, double eps,
                                            double r, std::uint64_t seed, std::size_t pair_cap) {
  if (!(C > 1.0) || !(eps > 0.0) || !(r > 0.0)) {
    throw DomainError("geodesic_placement_check requires C > 1, eps > 0, r > 0");
  }
  const auto& space = ms.space();
  const std::size_t n_points = space.size();
  const auto tree = space.shortest_path_tree(p);
  const auto& from_p = tree->dist;

  std::vector<Index> inner;
  std::vector<Index> targets;
  std::vector<char> is_target(n_points, 0);
  for (std::size_t i = 0; i < n_points; ++i) {
    if (from_p[i] < r) inner.push_back(static_cast<Index>(i));
    if (std::isfinite(from_p[i]) && from_p[i] >= C * r) {
      targets.push_back(static_cast<Index>(i));
      is_target[i] = 1;
    }
  }

  VerificationReport rep;
  rep.pipeline = "geodesic_placement";
  rep.seed = seed;
  rep.tolerance = eps * r;
  rep.config_echo = {{"p", p}, {"C", C}, {"eps", eps}, {"r", r}, {"pair_cap", pair_cap}};
  rep.details["inner_points"] = inner.size();
  rep.details["targets"] = targets.size();
  if (targets.empty()) {
    rep.warnings.push_back("no sample point lies beyond C r; check is inconclusive");
    rep.verdict = Verdict::Inconclusive;
    return rep;
  }

  const bool full_pass = n_points <= pair_cap;
  std::vector<double> best(inner.size(), std::numeric_limits<double>::infinity());
  detail::parallel_for(inner.size(), [&](std::size_t ia) {
    const Index a = inner[ia];
    if (full_pass) {
      const auto from_a = space.distances_from(a);
      std::vector<double> reach(n_points, std::numeric_limits<double>::infinity());
      double b_best = std::numeric_limits<double>::infinity();
      for (Index v : tree->order) {
        const double here = from_a[v];
        reach[v] = v == p ? here : std::min(reach[tree->parent[v]], here);
        if (is_target[v]) b_best = std::min(b_best, reach[v]);
      }
      best[ia] = b_best;
      return;
    }
    std::vector<Index> shuffled = targets;
    detail::Rng rng(seed, a);
    rng.shuffle(shuffled);
    std::size_t budget = pair_cap;
    double b_best = std::numeric_limits<double>::infinity();
    for (Index b : shuffled) {
      for (Index v = b;; v = tree->parent[v]) {
        if (budget == 0) break;
        --budget;
        b_best = std::min(b_best, space.distance(a, v));
        if (v == p) break;
      }
      if (budget == 0) break;
    }
    best[ia] = b_best;
  });

  for (std::size_t ia = 0; ia < inner.size(); ++ia) {
    const double margin = eps * r - best[ia];
    rep.record(margin);
    if (margin < 0.0) {
      rep.add_violation({{"a", inner[ia]}, {"d_pa", from_p[inner[ia]]}, {"closest", best[ia]},
                         {"margin", margin}});
    }
  }
  rep.details["subsampled"] = !full_pass;
  rep.conclude();
  return rep;
}

}  // namespace cglab
