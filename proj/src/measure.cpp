// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cglab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cglab/errors.hpp"
#include "cglab/quadrature.hpp"

namespace cglab {

MeasuredSpace::MeasuredSpace(FiniteMetricSpace base, std::vector<double> weights, int n,
                             std::shared_ptr<const AnalyticSpace> generator, Index basepoint)
    : base_(std::move(base)),
      weights_(std::move(weights)),
      n_(n),
      generator_(std::move(generator)),
      basepoint_(basepoint) {
  if (weights_.size() != base_.size()) throw InputError("weight count does not match point count");
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw InputError("weights must be positive and finite");
  }
  if (n_ < 2) throw InputError("measure dimension must be at least 2");
  if (basepoint_ >= base_.size()) throw InputError("basepoint out of range");
}

double ball_volume(const MeasuredSpace& ms, Index p, double r) {
  const auto row = ms.space().distances_from(p);
  double sum = 0.0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] <= r) sum += ms.weight(static_cast<Index>(i));
  }
  return sum;
}

RadialProfile radial_profile(const MeasuredSpace& ms, Index p, std::size_t bin_count) {
  if (bin_count < 4) throw DomainError("radial_profile needs at least 4 bins");
  const auto row = ms.space().distances_from(p);
  const double outer = 0.8 * *std::max_element(row.begin(), row.end());
  if (!(outer > 0.0)) throw DomainError("radial_profile: all points coincide with the centre");

  RadialProfile prof;
  prof.center = p;
  prof.edges.resize(bin_count + 1);
  for (std::size_t b = 0; b <= bin_count; ++b) {
    prof.edges[b] = outer * static_cast<double>(b) / static_cast<double>(bin_count);
  }
  prof.edges.back() = outer;
  std::vector<double> mass(bin_count, 0.0);
  prof.counts.assign(bin_count, 0);
  std::size_t inside = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    const double d = row[i];
    if (d > outer) continue;
    // Shell b holds (edges[b], edges[b+1]]; shell 0 also holds d = 0.
    auto it = std::lower_bound(prof.edges.begin() + 1, prof.edges.end(), d);
    const auto b = static_cast<std::size_t>(it - (prof.edges.begin() + 1));
    mass[b] += ms.weight(static_cast<Index>(i));
    ++prof.counts[b];
    ++inside;
  }
  prof.a_estimates.resize(bin_count);
  for (std::size_t b = 0; b < bin_count; ++b) prof.a_estimates[b] = mass[b] / prof.width(b);
  prof.sparse = inside < kMinPointsPerBin * bin_count;
  return prof;
}

std::string profile_csv(const RadialProfile& profile, int n) {
  std::ostringstream out;
  out.precision(17);
  out << "r_mid,a_estimate,a_over_r_pow\n";
  for (std::size_t b = 0; b < profile.bin_count(); ++b) {
    const double r = profile.mid(b);
    out << r << ',' << profile.a_estimates[b] << ',' << profile.a_estimates[b] / std::pow(r, n - 1)
        << '\n';
  }
  return out.str();
}

VerificationReport bg_profile_check(const RadialProfile& profile, int n, double tol) {
  VerificationReport rep;
  rep.pipeline = "bg_profile";
  rep.tolerance = tol;
  if (profile.bin_count() == 0) {
    rep.warnings.push_back("empty profile");
    rep.verdict = Verdict::Pass;
    return rep;
  }
  if (profile.sparse) rep.warnings.push_back("fewer than 10 points per bin on average");
  std::vector<double> ratio(profile.bin_count());
  for (std::size_t b = 0; b < ratio.size(); ++b) {
    ratio[b] = profile.a_estimates[b] / std::pow(profile.mid(b), n - 1);
  }
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < ratio.size(); ++i) {
    for (std::size_t j = i + 1; j < ratio.size(); ++j) {
      const double margin =
          ratio[i] > 0.0 ? (ratio[i] * (1.0 + tol) - ratio[j]) / ratio[i]
                         : (ratio[j] > 0.0 ? -std::numeric_limits<double>::infinity() : 0.0);
      rep.record(margin);
      if (margin < 0.0) {
        rep.add_violation({{"bin_i", i},
                           {"bin_j", j},
                           {"r_i", profile.mid(i)},
                           {"r_j", profile.mid(j)},
                           {"ratio_i", ratio[i]},
                           {"ratio_j", ratio[j]},
                           {"margin", margin}});
        if (ratio[i] > 0.0) worst_ratio = std::max(worst_ratio, ratio[j] / ratio[i]);
      }
    }
  }
  rep.details["ratios"] = ratio;
  rep.details["mids"] = [&] {
    std::vector<double> m;
    for (std::size_t b = 0; b < profile.bin_count(); ++b) m.push_back(profile.mid(b));
    return m;
  }();
  if (!rep.violations.empty()) {
    rep.details["first_violation"] = rep.violations.front();
    rep.details["worst_increase_ratio"] = worst_ratio;
  }
  rep.conclude();
  return rep;
}

VerificationReport ball_ratio_check(const MeasuredSpace& ms, Index p, double r1, double r2, int n,
                                    double tol) {
  if (!(r1 > 0.0 && r1 <= r2)) throw DomainError("ball_ratio_check requires 0 < r1 <= r2");
  const double v1 = ball_volume(ms, p, r1);
  const double v2 = ball_volume(ms, p, r2);
  if (!(v2 > 0.0)) throw InputError("ball_ratio_check: empty ball at r2");
  VerificationReport rep;
  rep.pipeline = "ball_ratio";
  rep.tolerance = tol;
  const double ratio = v1 / v2;
  const double model = std::pow(r1 / r2, n);
  const double margin = ratio - (model - tol);
  rep.record(margin);
  rep.details = {{"r1", r1}, {"r2", r2}, {"volume_r1", v1}, {"volume_r2", v2},
                 {"ratio", ratio}, {"model_ratio", model}};
  if (margin < 0.0) rep.add_violation({{"ratio", ratio}, {"model_ratio", model}, {"margin", margin}});
  rep.conclude();
  return rep;
}

double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double volume_growth_ratio(const MeasuredSpace& ms, Index p, double r) {
  if (!(r > 0.0)) throw DomainError("volume_growth_ratio requires r > 0");
  const int n = ms.dimension();
  return ball_volume(ms, p, r) / (unit_ball_volume(n) * std::pow(r, n));
}

double min_volume_growth_ratio(const MeasuredSpace& ms, Index p, std::span<const double> radii) {
  double best = std::numeric_limits<double>::infinity();
  for (double r : radii) best = std::min(best, volume_growth_ratio(ms, p, r));
  return best;
}

IntegrationLemmaResult integration_lemma_check(const AnalyticSpace& space, double R, double tol) {
  if (!(R > 0.0)) throw DomainError("integration_lemma_check requires R > 0");
  const auto lhs = space.ball_volume_exact(R);
  if (!lhs) throw DomainError("integration_lemma_check: no analytic ball volume at this radius");
  const int n = space.dimension();
  auto radial = [&](double psi) {
    const double reach = std::min(R, space.cut(psi));
    return std::pow(reach, n) / n;
  };
  const double total = space.link_measure();
  constexpr int kPieces = 64;
  double rhs = 0.0;
  for (int i = 0; i < kPieces; ++i) {
    rhs += adaptive_simpson(radial, total * i / kPieces, total * (i + 1) / kPieces,
                            {1e-12, 1e-14, 50});
  }
  IntegrationLemmaResult res;
  res.lhs = *lhs;
  res.rhs = rhs;
  res.tolerance = tol;
  res.pass = res.lhs <= res.rhs + tol;
  return res;
}

std::optional<Point> radial_expansion(const AnalyticSpace& space, double t, const Point& x) {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("radial_expansion requires t in (0, 1]");
  const Point base = space.basepoint();
  const double dx = space.distance(base, x);
  if (!(dx > 0.0)) throw DomainError("radial_expansion: x coincides with the basepoint");
  const SpaceSpec& spec = space.spec();
  Point y;
  switch (space.kind()) {
    case SpaceKind::EuclideanBall:
      y = x;
      for (auto& c : y) c /= t;
      if (dx / t > spec.radius) return std::nullopt;
      break;
    case SpaceKind::ConeOverCircle:
      if (x[0] / t > spec.radius) return std::nullopt;
      y = {x[0] / t, x[1]};
      break;
    case SpaceKind::HyperbolicDisk: {
      if (dx / t > spec.radius) return std::nullopt;
      const double k = std::sqrt(-spec.kappa);
      const double norm = std::hypot(x[0], x[1]);
      const double scale = std::tanh(0.5 * k * dx / t) / norm;
      y = {x[0] * scale, x[1] * scale};
      break;
    }
    case SpaceKind::FlatCylinder: {
      const double two_pi = 2.0 * std::numbers::pi;
      double theta = std::fmod(x[0], two_pi);
      if (theta < 0.0) theta += two_pi;
      if (theta > std::numbers::pi) theta -= two_pi;
      const double z = x[1] / t;
      if (std::abs(z) > spec.half_height) return std::nullopt;
      double ty = std::fmod(theta / t, two_pi);
      if (ty < 0.0) ty += two_pi;
      y = {ty, z};
      break;
    }
    case SpaceKind::ParaboloidPatch:
      throw DomainError("radial_expansion: paraboloid geodesics have no closed form");
  }
  const double dy = space.distance(base, y);
  const double dxy = space.distance(x, y);
  const double slack = 1e-9 * std::max(1.0, dx / t);
  if (dx + dxy - dy > slack || std::abs(dy - dx / t) > slack) return std::nullopt;
  return y;
}

std::optional<Index> radial_expansion(const MeasuredSpace& ms, Index p, double t, Index x,
                                      double tol) {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("radial_expansion requires t in (0, 1]");
  if (x == p) throw DomainError("radial_expansion: x coincides with p");
  const auto& space = ms.space();
  const auto from_p = space.distances_from(p);
  const auto from_x = space.distances_from(x);
  const double target = from_p[x] / t;
  std::optional<Index> best;
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < from_p.size(); ++i) {
    const double radial_error = std::abs(from_p[i] - target);
    const double bend = from_p[x] + from_x[i] - from_p[i];
    if (radial_error > tol || bend > tol) continue;
    const double score = std::max(radial_error, bend);
    if (score < best_score) {
      best_score = score;
      best = static_cast<Index>(i);
    }
  }
  return best;
}

}  // namespace cglab
