// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cglab/measured_space.hpp"
#include "cglab/report.hpp"

namespace cglab {

enum class Criticality { Critical, Regular, Inconclusive };

std::string_view to_string(Criticality c);

struct CriticalityResult {
  Criticality status = Criticality::Inconclusive;
  std::size_t annulus_points = 0;
  double max_angle = 0.0;          ///< largest comparison angle at q over the annulus
  std::optional<Index> witness;    ///< annulus point attaining max_angle
};

inline constexpr std::size_t kMinAnnulusPoints = 8;
inline constexpr double kDefaultCriticalityTolerance = 0.1;

/// Annulus surrogate for the directions at q: q is critical for d(p, .)
/// when every sample x with 0 < d(q,x) <= annulus_radius has comparison
/// angle at q (curvature k, triangle x q p) at most pi/2 + tol. Fewer than
/// 8 annulus points give Inconclusive.
CriticalityResult is_critical(const MeasuredSpace& ms, double k, Index p, Index q,
                              double annulus_radius, double tol = kDefaultCriticalityTolerance);

struct CriticalScanOptions {
  std::optional<double> annulus_radius;  ///< default 5 * net_resolution
  double tol = kDefaultCriticalityTolerance;
  std::optional<double> band;            ///< half width of each shell; default net_resolution
};

struct CriticalPoint {
  Index point = 0;
  double radius = 0.0;     ///< d(p, point)
  double max_angle = 0.0;
};

struct ShellSummary {
  double radius = 0.0;
  std::size_t tested = 0;
  std::size_t critical = 0;
  std::size_t inconclusive = 0;
};

struct CriticalScanReport {
  Index center = 0;
  double kappa = 0.0;
  std::vector<double> radius_grid;
  double annulus_radius = 0.0;
  double tol = 0.0;
  double band = 0.0;
  std::vector<ShellSummary> shells;
  std::vector<CriticalPoint> critical_points;
  std::optional<double> largest_critical_radius;

  /// No critical point at or beyond the given radius among scanned shells.
  bool clear_beyond(double radius) const;
  /// Every shell at or beyond the radius holds at least one critical point.
  bool critical_at_every_shell_beyond(double radius) const;

  std::string summary() const;
  VerificationReport to_report() const;
};

/// Tests every sample point whose distance from p lies within band of a grid
/// radius. Throws DomainError unless the grid is strictly increasing and positive.
CriticalScanReport critical_scan(const MeasuredSpace& ms, double k, Index p,
                                 std::span<const double> radius_grid,
                                 const CriticalScanOptions& options = {});

/// [1 + C^n/eps^n]^-1, or with Cbar the intermediate bound
/// [1 + (1+Cbar)^n C^n / (eps^n (Cbar^n - C^n))]^-1.
/// Throws DomainError unless eps > 0, C > 1, n >= 2 and Cbar > C.
double gamma_threshold(double eps, double C, int n, std::optional<double> Cbar = std::nullopt);

struct TheoremConstants {
  int n = 2;
  double kappa = 1.0;
  double epsilon_max = 0.0;     ///< (ln 2 / (8 kappa))^((n-1)/n)
  double epsilon = 0.0;         ///< the epsilon at which alpha_min is evaluated
  double alpha_min = 0.0;       ///< 1 - (1 + 2^n/epsilon^n)^-1
  double alpha_limit = 0.0;     ///< alpha at epsilon_max, the infimum over admissible epsilon
};

/// Throws DomainError for n < 2, kappa <= 0, or epsilon outside (0, epsilon_max).
/// epsilon defaults to 0.99 epsilon_max.
TheoremConstants theorem_constants(int n, double kappa, std::optional<double> epsilon = std::nullopt);

/// hyperbolic_excess_lower_bound(kappa, R) - 8 eps^(n/(n-1)).
double contradiction_margin(int n, double kappa, double eps, double R);

inline constexpr std::size_t kPlacementPairCap = 100000;

/// For each a with d(p,a) < r, searches targets b with d(p,b) >= C r for one
/// whose geodesic from p passes within eps r of a (minimum over path
/// vertices). Paths come from the shortest-path tree of p. When a full pass
/// would exceed the pair cap, targets are subsampled with the seed.
VerificationReport geodesic_placement_check(const MeasuredSpace& ms, Index p, double C, double eps,
                                            double r, std::uint64_t seed = 0,
                                            std::size_t pair_cap = kPlacementPairCap);

}  // namespace cglab
