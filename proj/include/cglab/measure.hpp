// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cglab/generators.hpp"
#include "cglab/measured_space.hpp"
#include "cglab/report.hpp"

namespace cglab {

/// Total weight of the points within distance r (inclusive) of p.
double ball_volume(const MeasuredSpace& ms, Index p, double r);

/// Shell masses about a centre on equal-width bins.
struct RadialProfile {
  Index center = 0;
  std::vector<double> edges;        ///< bin_count + 1 strictly increasing radii, edges[0] = 0
  std::vector<double> a_estimates;  ///< shell mass / bin width
  std::vector<std::size_t> counts;  ///< points per shell
  bool sparse = false;              ///< fewer than 10 points per bin on average

  std::size_t bin_count() const { return a_estimates.size(); }
  double mid(std::size_t bin) const { return 0.5 * (edges[bin] + edges[bin + 1]); }
  double width(std::size_t bin) const { return edges[bin + 1] - edges[bin]; }
};

inline constexpr std::size_t kMinPointsPerBin = 10;

/// Equal-width shells out to 0.8 of the largest distance from p; the first
/// shell includes p itself. Throws DomainError for bin_count < 4.
RadialProfile radial_profile(const MeasuredSpace& ms, Index p, std::size_t bin_count);

/// CSV with columns r_mid, a_estimate, a_over_r_pow (a / r^(n-1)).
std::string profile_csv(const RadialProfile& profile, int n);

/// a(r)/r^(n-1) must be non-increasing across bins up to a relative
/// tolerance: ratio[j] <= ratio[i] (1 + tol) for all i < j. Margins are
/// relative to ratio[i].
VerificationReport bg_profile_check(const RadialProfile& profile, int n, double tol);

/// V(r1)/V(r2) >= (r1/r2)^n - tol. Throws DomainError unless 0 < r1 <= r2
/// and InputError when the ball of radius r2 is empty.
VerificationReport ball_ratio_check(const MeasuredSpace& ms, Index p, double r1, double r2, int n,
                                    double tol = 0.01);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// V(p, r) / (omega_n r^n). Throws DomainError for r <= 0.
double volume_growth_ratio(const MeasuredSpace& ms, Index p, double r);

/// Minimum of volume_growth_ratio over the radii.
double min_volume_growth_ratio(const MeasuredSpace& ms, Index p, std::span<const double> radii);

struct IntegrationLemmaResult {
  double lhs = 0.0;  ///< analytic ball volume
  double rhs = 0.0;  ///< link integral of min(R, cut)^n / n
  double tolerance = 0.0;
  bool pass = false;
};

/// Compares the analytic volume of B(basepoint, R) with the integral over
/// the link of the radial measure truncated at the cut function. Throws
/// DomainError for kinds without an analytic ball volume at R.
IntegrationLemmaResult integration_lemma_check(const AnalyticSpace& space, double R,
                                               double tol = 1e-9);

/// Image of x under the radial expansion about the basepoint with factor t:
/// the point y with x on a minimal geodesic from the basepoint to y and
/// d(p,x) = t d(p,y). Absent when that extension stops minimizing or leaves
/// the model's coordinate domain. Throws DomainError for t outside (0, 1]
/// or x at the basepoint.
std::optional<Point> radial_expansion(const AnalyticSpace& space, double t, const Point& x);

/// Sample version: the sample point y closest to satisfying
/// |d(p,y) - d(p,x)/t| <= tol and d(p,x) + d(x,y) - d(p,y) <= tol.
/// Ties go to the smallest index.
std::optional<Index> radial_expansion(const MeasuredSpace& ms, Index p, double t, Index x,
                                      double tol);

}  // namespace cglab
