// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cglab/excess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "cglab/errors.hpp"
#include "cglab/model_plane.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace cglab {

double excess(const FiniteMetricSpace& space, Index p, Index q, Index x) {
  if (p == q) throw DomainError("excess requires distinct p and q");
  return space.distance(x, p) + space.distance(x, q) - space.distance(p, q);
}

double height(const FiniteMetricSpace& space, Index p, Index q, Index x) {
  if (p == q) throw DomainError("height requires distinct p and q");
  const auto path = space.geodesic(p, q);
  double best = std::numeric_limits<double>::infinity();
  for (Index v : path.vertices) best = std::min(best, space.distance(x, v));
  return best;
}

double ag_bound(double h, double s, int n) {
  if (!(h >= 0.0) || !(s > 0.0) || n < 2) throw DomainError("ag_bound requires h >= 0, s > 0, n >= 2");
  return 8.0 * std::pow(std::pow(h, n) / s, 1.0 / (n - 1));
}

namespace {

double phi_closed_form(int n, double r, double l) {
  if (n == 2) return 0.5 * l * l * std::log(l / r) - 0.25 * (l * l - r * r);
  const double m = n - 2.0;
  return (r * r - n / m * l * l + 2.0 / m * std::pow(l, n) * std::pow(r, -m)) / (2.0 * n);
}

}  // namespace

double phi(int n, double kappa, double r, double l, PhiMethod method, QuadratureTolerance tol) {
  if (n < 2) throw DomainError("phi requires n >= 2");
  if (!(r > 0.0) || !(r <= l)) throw DomainError("phi requires 0 < r <= l");
  if (method == PhiMethod::ClosedForm && kappa != 0.0) {
    throw DomainError("phi closed form is available only at kappa = 0");
  }
  if (kappa > 0.0 && !(l < std::numbers::pi / std::sqrt(kappa))) {
    throw DomainError("phi requires l < pi/sqrt(kappa) for kappa > 0");
  }
  if (r == l) return 0.0;
  if (method == PhiMethod::ClosedForm) return phi_closed_form(n, r, l);

  const QuadratureTolerance inner_tol{tol.absolute * 1e-2, tol.relative, tol.max_depth};
  auto outer = [&](double t) {
    const double st = jacobi_s(kappa, t);
    auto inner = [&](double tau) { return std::pow(jacobi_s(kappa, tau) / st, n - 1); };
    return adaptive_simpson(inner, t, l, inner_tol);
  };
  return adaptive_simpson(outer, r, l, tol);
}

double g_function(double d, double h, double s, int n, double eps) {
  if (!(eps >= 0.0) || !(s > 0.0)) throw DomainError("g_function requires s > 0 and eps >= 0");
  const double l = h + eps;
  if (!(d > 0.0 && d <= l)) throw DomainError("g_function requires 0 < d <= h + eps");
  return 2.0 * (n - 1) / s * phi(n, 0.0, d, l, PhiMethod::ClosedForm);
}

VerificationReport chain_bound_check(double h, double s, int n) {
  VerificationReport rep;
  rep.pipeline = "chain_bound";
  rep.tolerance = kChainBoundTolerance;
  rep.config_echo = {{"h", h}, {"s", s}, {"n", n}};
  if (!(h > 0.0) || !(s > 0.0) || n < 2) throw DomainError("chain_bound_check requires h, s > 0, n >= 2");
  const double c = 2.0 * std::pow(h, n) / s;
  rep.details["c"] = c;
  if (h > 0.5 * s) {
    rep.verdict = Verdict::Excluded;
    rep.warnings.push_back("h > s/2");
    return rep;
  }
  if (!(c > 0.0 && c <= h)) {
    rep.verdict = Verdict::Excluded;
    rep.warnings.push_back("c = 2h^n/s lies outside (0, h]");
    return rep;
  }
  const double lhs = 2.0 * c + g_function(c, h, s, n, 0.0);
  const double bound = ag_bound(h, s, n);
  const double margin = bound - lhs;
  rep.details["lhs"] = lhs;
  rep.details["bound"] = bound;
  rep.record(margin);
  if (margin < -kChainBoundTolerance) {
    rep.add_violation({{"h", h}, {"s", s}, {"n", n}, {"lhs", lhs}, {"bound", bound}, {"margin", margin}});
  }
  rep.conclude();
  return rep;
}

namespace {

struct Candidate {
  Index p, q, x;
};

struct Evaluated {
  bool admissible = false;
  ExcessTriple triple;
  double trivial_margin = 0.0;  // 2h + delta - e
};

}  // namespace

ExcessVerification verify_excess_on_space(const MeasuredSpace& ms, const ExcessSampleConfig& cfg) {
  const auto& space = ms.space();
  const std::size_t n_points = space.size();
  if (n_points < 3) throw DomainError("verify_excess_on_space needs at least 3 points");
  const int n = ms.dimension();
  const double delta = cfg.delta.value_or(4.0 * space.net_resolution());
  const bool graph = space.backing() == Backing::Graph;

  detail::Rng rng(cfg.seed, 0xe7ce55ULL);
  std::vector<Index> order(n_points);
  for (std::size_t i = 0; i < n_points; ++i) order[i] = static_cast<Index>(i);
  rng.shuffle(order);
  std::vector<Index> pool(order.begin(),
                          order.begin() + static_cast<std::ptrdiff_t>(std::min(std::max<std::size_t>(cfg.pool, 3), n_points)));

  const std::size_t max_attempts = cfg.max_attempts ? cfg.max_attempts : 50 * cfg.triples;
  constexpr std::size_t kBatch = 4096;

  ExcessVerification out;
  VerificationReport& rep = out.report;
  rep.pipeline = "excess";
  rep.seed = cfg.seed;
  rep.tolerance = delta;
  rep.config_echo = {{"triples", cfg.triples}, {"seed", cfg.seed}, {"pool", pool.size()},
                     {"min_s", cfg.min_s}, {"min_h", cfg.min_h}, {"max_h", cfg.max_h},
                     {"delta", delta}, {"dimension", n}};

  std::size_t attempts = 0;
  std::size_t trivial_violations = 0;
  double worst_relative = std::numeric_limits<double>::infinity();
  while (out.triples.size() < cfg.triples && attempts < max_attempts) {
    const std::size_t batch = std::min(kBatch, max_attempts - attempts);
    std::vector<Candidate> cand(batch);
    for (auto& c : cand) {
      c.p = pool[rng.index(pool.size())];
      c.q = pool[rng.index(pool.size())];
      c.x = graph ? pool[rng.index(pool.size())] : static_cast<Index>(rng.index(n_points));
    }
    std::vector<Evaluated> eval(batch);
    detail::parallel_for(batch, [&](std::size_t i) {
      const Candidate c = cand[i];
      if (c.p == c.q || c.x == c.p || c.x == c.q) return;
      const double dxp = space.distance(c.x, c.p);
      const double dxq = space.distance(c.x, c.q);
      const double s = std::min(dxp, dxq);
      if (s < cfg.min_s) return;
      const double e = dxp + dxq - space.distance(c.p, c.q);
      const double h = height(space, c.p, c.q, c.x);
      if (!(h > 0.0) || h > 0.5 * s || 2.0 * std::pow(h, n - 1) > s) return;
      if (h < cfg.min_h || (cfg.max_h > 0.0 && h > cfg.max_h)) return;
      Evaluated& ev = eval[i];
      ev.admissible = true;
      const double bound = ag_bound(h, s, n);
      ev.triple = {c.p, c.q, c.x, e, h, s, bound, bound + delta - e};
      ev.trivial_margin = 2.0 * h + delta - e;
    });
    attempts += batch;
    for (const auto& ev : eval) {
      if (!ev.admissible) continue;
      if (out.triples.size() >= cfg.triples) break;
      const auto& t = ev.triple;
      out.triples.push_back(t);
      rep.record(t.margin);
      worst_relative = std::min(worst_relative, t.margin / (t.bound + delta));
      if (t.margin < 0.0) {
        rep.add_violation({{"p", t.p}, {"q", t.q}, {"x", t.x}, {"e", t.e}, {"h", t.h},
                           {"s", t.s}, {"bound", t.bound}, {"margin", t.margin}});
      }
      if (ev.trivial_margin < 0.0) ++trivial_violations;
    }
  }

  // Lipschitz bound on triples sharing endpoints.
  std::map<std::pair<Index, Index>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < out.triples.size(); ++i) {
    groups[{out.triples[i].p, out.triples[i].q}].push_back(i);
  }
  std::size_t lipschitz_checked = 0;
  std::size_t lipschitz_violations = 0;
  constexpr std::size_t kLipschitzCap = 100000;
  for (const auto& [key, members] : groups) {
    for (std::size_t a = 0; a < members.size() && lipschitz_checked < kLipschitzCap; ++a) {
      for (std::size_t b = a + 1; b < members.size() && lipschitz_checked < kLipschitzCap; ++b) {
        const auto& ta = out.triples[members[a]];
        const auto& tb = out.triples[members[b]];
        if (ta.x == tb.x) continue;
        if (graph && std::find(pool.begin(), pool.end(), tb.x) == pool.end()) continue;
        const double dxy = space.distance(ta.x, tb.x);
        ++lipschitz_checked;
        if (std::abs(ta.e - tb.e) > 2.0 * dxy * (1.0 + 1e-12) + 1e-12) ++lipschitz_violations;
      }
    }
  }

  rep.items_tested = out.triples.size();
  rep.details["attempts"] = attempts;
  rep.details["admissible"] = out.triples.size();
  rep.details["delta_discrete"] = delta;
  rep.details["net_resolution"] = space.net_resolution();
  rep.details["trivial_bound_violations"] = trivial_violations;
  rep.details["lipschitz_pairs_checked"] = lipschitz_checked;
  rep.details["lipschitz_violations"] = lipschitz_violations;
  rep.details["geodesic_choice"] = "shortest path, smallest-index predecessor on ties, rooted at min(p, q)";
  if (std::isfinite(worst_relative)) rep.details["worst_relative_margin"] = worst_relative;
  if (out.triples.size() < cfg.triples) {
    rep.warnings.push_back("found " + std::to_string(out.triples.size()) + " admissible triples of " +
                           std::to_string(cfg.triples) + " requested");
  }
  rep.conclude();
  return out;
}

std::string excess_csv(const std::vector<ExcessTriple>& triples) {
  std::ostringstream out;
  out.precision(17);
  out << "p,q,x,e,h,s,bound,margin\n";
  for (const auto& t : triples) {
    out << t.p << ',' << t.q << ',' << t.x << ',' << t.e << ',' << t.h << ',' << t.s << ','
        << t.bound << ',' << t.margin << '\n';
  }
  return out.str();
}

}  // namespace cglab
