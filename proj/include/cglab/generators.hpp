// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "cglab/measured_space.hpp"
#include "cglab/metric_space.hpp"

namespace cglab {

enum class SpaceKind { EuclideanBall, ConeOverCircle, FlatCylinder, HyperbolicDisk, ParaboloidPatch };

std::string_view to_string(SpaceKind kind);

/// Accepts "euclidean", "cone", "cylinder", "hyperbolic", "paraboloid" and
/// the full kind names. Throws InputError otherwise.
SpaceKind parse_space_kind(std::string_view name);

/// Fermi-coordinate tube {|t| <= half_length, |u| <= half_width} around a
/// geodesic through the centre of a hyperbolic disk. Used to sample long
/// thin regions far beyond what a uniform disk sample can resolve.
struct TubeRegion {
  double half_length = 0.0;
  double half_width = 0.0;
};

struct SpaceSpec {
  SpaceKind kind = SpaceKind::EuclideanBall;
  int dimension = 2;         ///< Euclidean ball only; every other kind is a surface
  double radius = 1.0;       ///< truncation radius about the basepoint
  double rho = 1.0;          ///< cone link radius / cylinder radius
  double half_height = 1.0;  ///< cylinder
  double kappa = -1.0;       ///< hyperbolic curvature
  double paraboloid_a = 1.0; ///< z = a (x^2 + y^2)
  std::optional<TubeRegion> tube;
};

/// Model space with closed-form metric and measure data at its basepoint.
///
/// Coordinates by kind:
///   EuclideanBall     Cartesian (x_1..x_n), basepoint the centre
///   ConeOverCircle    (r, theta) with theta in [0, 2 pi rho), basepoint the apex
///   FlatCylinder      (theta, z) with theta in [0, 2 pi), basepoint (0, 0)
///   HyperbolicDisk    Poincare disk (x, y), basepoint the origin
///   ParaboloidPatch   (x, y, a(x^2 + y^2)), basepoint the vertex; no closed-form metric
///
/// Directions at the basepoint of a surface are parameterized by arclength
/// psi in [0, link_measure()) on the link circle. For the cylinder psi is the
/// angle from the +z axis.
class AnalyticSpace : public ExactMetric {
 public:
  /// Throws InputError for out-of-range parameters (rho outside (0, 1] for
  /// cones, kappa >= 0 for the hyperbolic disk, nonpositive radii).
  explicit AnalyticSpace(SpaceSpec spec);

  const SpaceSpec& spec() const { return spec_; }
  SpaceKind kind() const { return spec_.kind; }
  int dimension() const { return spec_.kind == SpaceKind::EuclideanBall ? spec_.dimension : 2; }
  std::size_t coordinate_count() const;
  bool has_exact_metric() const { return spec_.kind != SpaceKind::ParaboloidPatch; }

  /// Throws DomainError for the paraboloid and InputError for coordinates
  /// outside the domain.
  double distance(std::span<const double> x, std::span<const double> y) const override;

  Point basepoint() const;

  /// Point at distance r along direction psi from the basepoint (surfaces),
  /// or along the first axis rotated by psi in the (x_1, x_2) plane.
  Point radial_point(double r, double psi) const;

  double link_measure() const;

  /// Distance along direction psi beyond which the radial geodesic stops
  /// minimizing; +inf when it never does.
  double cut(double psi) const;

  /// Measure of the ball of radius r about the basepoint within the sampled
  /// region, where a closed form exists.
  std::optional<double> ball_volume_exact(double r) const;

  /// Measure of the sampled region.
  double area() const;

  double curvature_lower_bound() const;

  /// Radius of the region trusted to be free of truncation effects: 0.8 of
  /// the truncation radius (cylinder: of the half height; tube: of the half length).
  double trusted_radius() const;

 private:
  SpaceSpec spec_;
};

AnalyticSpace make_space(const SpaceSpec& spec);

/// Seeded sample of n_points points, uniform with respect to area; every
/// weight is area()/n_points. Point 0 is the basepoint and the rest are in
/// random order. Radial positions are stratified (one point per equal-mass
/// shell) and angles Latin-hypercube sampled.
///
/// Throws InputError when n_points < 16.
MeasuredSpace sample(const AnalyticSpace& space, std::size_t n_points, std::uint64_t seed);

inline constexpr std::size_t kParaboloidNeighbors = 12;

}  // namespace cglab
