// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cglab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cglab/errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace cglab {

namespace {

constexpr double kPi = std::numbers::pi;

double unit_ball_volume(int n) {
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

// Circular distance on a circle of circumference period.
double circular_gap(double x, double y, double period) {
  double gap = std::fmod(std::abs(x - y), period);
  return std::min(gap, period - gap);
}

void require(bool ok, const std::string& message) {
  if (!ok) throw InputError(message);
}

std::vector<std::size_t> permutation(std::size_t m, detail::Rng& rng) {
  std::vector<std::size_t> p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = i;
  rng.shuffle(p);
  return p;
}

}  // namespace

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::EuclideanBall: return "euclidean";
    case SpaceKind::ConeOverCircle: return "cone";
    case SpaceKind::FlatCylinder: return "cylinder";
    case SpaceKind::HyperbolicDisk: return "hyperbolic";
    case SpaceKind::ParaboloidPatch: return "paraboloid";
  }
  return "unknown";
}

SpaceKind parse_space_kind(std::string_view name) {
  if (name == "euclidean" || name == "EuclideanBall") return SpaceKind::EuclideanBall;
  if (name == "cone" || name == "ConeOverCircle") return SpaceKind::ConeOverCircle;
  if (name == "cylinder" || name == "FlatCylinder") return SpaceKind::FlatCylinder;
  if (name == "hyperbolic" || name == "HyperbolicDisk") return SpaceKind::HyperbolicDisk;
  if (name == "paraboloid" || name == "ParaboloidPatch") return SpaceKind::ParaboloidPatch;
  throw InputError("unknown space kind '" + std::string(name) + "'");
}

AnalyticSpace::AnalyticSpace(SpaceSpec spec) : spec_(spec) {
  const auto finite_positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  switch (spec_.kind) {
    case SpaceKind::EuclideanBall:
      require(spec_.dimension >= 2 && spec_.dimension <= 16, "euclidean dimension must be in [2, 16]");
      require(finite_positive(spec_.radius), "radius must be positive");
      break;
    case SpaceKind::ConeOverCircle:
      require(finite_positive(spec_.rho) && spec_.rho <= 1.0, "cone rho must lie in (0, 1]");
      require(finite_positive(spec_.radius), "radius must be positive");
      break;
    case SpaceKind::FlatCylinder:
      require(finite_positive(spec_.rho), "cylinder rho must be positive");
      require(finite_positive(spec_.half_height), "cylinder half height must be positive");
      break;
    case SpaceKind::HyperbolicDisk: {
      require(std::isfinite(spec_.kappa) && spec_.kappa < 0.0, "hyperbolic kappa must be negative");
      require(finite_positive(spec_.radius), "radius must be positive");
      if (spec_.tube) {
        const double k = std::sqrt(-spec_.kappa);
        require(finite_positive(spec_.tube->half_length) && finite_positive(spec_.tube->half_width),
                "tube half length and half width must be positive");
        require(std::cosh(k * spec_.tube->half_length) * std::cosh(k * spec_.tube->half_width) <=
                    std::cosh(k * spec_.radius) * (1.0 + 1e-12),
                "tube does not fit inside the disk radius");
      }
      break;
    }
    case SpaceKind::ParaboloidPatch:
      require(finite_positive(spec_.paraboloid_a), "paraboloid coefficient must be positive");
      require(finite_positive(spec_.radius), "radius must be positive");
      break;
  }
  if (spec_.kind != SpaceKind::EuclideanBall) spec_.dimension = 2;
  if (spec_.kind != SpaceKind::HyperbolicDisk) spec_.tube.reset();
}

std::size_t AnalyticSpace::coordinate_count() const {
  switch (spec_.kind) {
    case SpaceKind::EuclideanBall: return static_cast<std::size_t>(spec_.dimension);
    case SpaceKind::ParaboloidPatch: return 3;
    default: return 2;
  }
}

double AnalyticSpace::distance(std::span<const double> x, std::span<const double> y) const {
  if (spec_.kind == SpaceKind::ParaboloidPatch) {
    throw DomainError("paraboloid has no closed-form metric");
  }
  if (x.size() != coordinate_count() || y.size() != coordinate_count()) {
    throw InputError("coordinate tuple has the wrong length");
  }
  switch (spec_.kind) {
    case SpaceKind::EuclideanBall: {
      double sum = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) sum += (x[i] - y[i]) * (x[i] - y[i]);
      return std::sqrt(sum);
    }
    case SpaceKind::ConeOverCircle: {
      const double r1 = x[0];
      const double r2 = y[0];
      if (r1 < 0.0 || r2 < 0.0) throw InputError("cone radial coordinate must be nonnegative");
      const double angle = std::min(circular_gap(x[1], y[1], 2.0 * kPi * spec_.rho), kPi);
      const double half = std::sin(0.5 * angle);
      return std::sqrt((r1 - r2) * (r1 - r2) + 4.0 * r1 * r2 * half * half);
    }
    case SpaceKind::FlatCylinder: {
      const double arc = spec_.rho * circular_gap(x[0], y[0], 2.0 * kPi);
      const double dz = x[1] - y[1];
      return std::hypot(arc, dz);
    }
    case SpaceKind::HyperbolicDisk: {
      const double nx = std::hypot(x[0], x[1]);
      const double ny = std::hypot(y[0], y[1]);
      if (nx >= 1.0 || ny >= 1.0) throw InputError("point outside the Poincare disk");
      const double k = std::sqrt(-spec_.kappa);
      const double gap = std::hypot(x[0] - y[0], x[1] - y[1]);
      const double denom = std::sqrt((1.0 - nx) * (1.0 + nx) * (1.0 - ny) * (1.0 + ny));
      return 2.0 / k * std::asinh(gap / denom);
    }
    case SpaceKind::ParaboloidPatch: break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

Point AnalyticSpace::basepoint() const { return Point(coordinate_count(), 0.0); }

Point AnalyticSpace::radial_point(double r, double psi) const {
  if (r < 0.0) throw DomainError("radial_point: negative radius");
  switch (spec_.kind) {
    case SpaceKind::EuclideanBall: {
      Point p(coordinate_count(), 0.0);
      p[0] = r * std::cos(psi);
      p[1] = r * std::sin(psi);
      return p;
    }
    case SpaceKind::ConeOverCircle: {
      const double period = 2.0 * kPi * spec_.rho;
      double theta = std::fmod(psi, period);
      if (theta < 0.0) theta += period;
      return {r, theta};
    }
    case SpaceKind::FlatCylinder: {
      double theta = std::fmod(r * std::sin(psi) / spec_.rho, 2.0 * kPi);
      if (theta < 0.0) theta += 2.0 * kPi;
      return {theta, r * std::cos(psi)};
    }
    case SpaceKind::HyperbolicDisk: {
      const double k = std::sqrt(-spec_.kappa);
      const double t = std::tanh(0.5 * k * r);
      return {t * std::cos(psi), t * std::sin(psi)};
    }
    case SpaceKind::ParaboloidPatch: break;
  }
  throw DomainError("radial_point: paraboloid geodesics have no closed form");
}

double AnalyticSpace::link_measure() const {
  switch (spec_.kind) {
    case SpaceKind::EuclideanBall: return spec_.dimension * unit_ball_volume(spec_.dimension);
    case SpaceKind::ConeOverCircle: return 2.0 * kPi * spec_.rho;
    default: return 2.0 * kPi;
  }
}

double AnalyticSpace::cut(double psi) const {
  if (spec_.kind == SpaceKind::FlatCylinder) {
    const double s = std::abs(std::sin(psi));
    return s == 0.0 ? std::numeric_limits<double>::infinity() : kPi * spec_.rho / s;
  }
  return std::numeric_limits<double>::infinity();
}

std::optional<double> AnalyticSpace::ball_volume_exact(double r) const {
  if (r < 0.0) return std::nullopt;
  switch (spec_.kind) {
    case SpaceKind::EuclideanBall:
      return unit_ball_volume(spec_.dimension) * std::pow(std::min(r, spec_.radius), spec_.dimension);
    case SpaceKind::ConeOverCircle: {
      const double t = std::min(r, spec_.radius);
      return kPi * spec_.rho * t * t;
    }
    case SpaceKind::FlatCylinder: {
      if (r > spec_.half_height) return std::nullopt;
      const double a = kPi * spec_.rho;
      if (r <= a) return kPi * r * r;
      return 2.0 * (a * std::sqrt(r * r - a * a) + r * r * std::asin(a / r));
    }
    case SpaceKind::HyperbolicDisk: {
      const double k = std::sqrt(-spec_.kappa);
      double t = std::min(r, spec_.radius);
      if (spec_.tube) {
        if (r > spec_.tube->half_width) return std::nullopt;
        t = r;
      }
      return 2.0 * kPi * (std::cosh(k * t) - 1.0) / (k * k);
    }
    case SpaceKind::ParaboloidPatch: return std::nullopt;
  }
  return std::nullopt;
}

double AnalyticSpace::area() const {
  switch (spec_.kind) {
    case SpaceKind::EuclideanBall:
      return unit_ball_volume(spec_.dimension) * std::pow(spec_.radius, spec_.dimension);
    case SpaceKind::ConeOverCircle: return kPi * spec_.rho * spec_.radius * spec_.radius;
    case SpaceKind::FlatCylinder: return 2.0 * kPi * spec_.rho * 2.0 * spec_.half_height;
    case SpaceKind::HyperbolicDisk: {
      const double k = std::sqrt(-spec_.kappa);
      if (spec_.tube) {
        return 2.0 * spec_.tube->half_length * 2.0 * std::sinh(k * spec_.tube->half_width) / k;
      }
      return 2.0 * kPi * (std::cosh(k * spec_.radius) - 1.0) / (k * k);
    }
    case SpaceKind::ParaboloidPatch: {
      const double a = spec_.paraboloid_a;
      const double R = spec_.radius;
      return 2.0 * kPi * (std::pow(1.0 + 4.0 * a * a * R * R, 1.5) - 1.0) / (12.0 * a * a);
    }
  }
  return 0.0;
}

double AnalyticSpace::curvature_lower_bound() const {
  return spec_.kind == SpaceKind::HyperbolicDisk ? spec_.kappa : 0.0;
}

double AnalyticSpace::trusted_radius() const {
  if (spec_.kind == SpaceKind::FlatCylinder) return 0.8 * spec_.half_height;
  if (spec_.tube) return 0.8 * spec_.tube->half_length;
  return 0.8 * spec_.radius;
}

AnalyticSpace make_space(const SpaceSpec& spec) { return AnalyticSpace(spec); }

// -- sampling ---------------------------------------------------------------

namespace {

std::vector<Point> draw_points(const AnalyticSpace& space, std::size_t n_points, detail::Rng& rng) {
  const SpaceSpec& spec = space.spec();
  const std::size_t m = n_points - 1;
  std::vector<Point> pts;
  pts.reserve(n_points);
  pts.push_back(space.basepoint());

  // Radial mass fraction of stratum i: [i/N, (i+1)/N), stratum 0 being the basepoint.
  auto radial_fraction = [&](std::size_t j) {
    return (static_cast<double>(j + 1) + rng.uniform()) / static_cast<double>(n_points);
  };
  const auto angle_perm = permutation(m, rng);
  auto angular_fraction = [&](std::size_t j) {
    return (static_cast<double>(angle_perm[j]) + rng.uniform()) / static_cast<double>(m);
  };

  switch (spec.kind) {
    case SpaceKind::EuclideanBall: {
      const int n = spec.dimension;
      for (std::size_t j = 0; j < m; ++j) {
        const double u = radial_fraction(j);
        Point p(static_cast<std::size_t>(n));
        if (n == 2) {
          const double r = spec.radius * std::sqrt(u);
          const double theta = 2.0 * kPi * angular_fraction(j);
          p = {r * std::cos(theta), r * std::sin(theta)};
        } else {
          const double r = spec.radius * std::pow(u, 1.0 / n);
          double norm = 0.0;
          do {
            norm = 0.0;
            for (auto& c : p) {
              c = rng.normal();
              norm += c * c;
            }
          } while (norm < 1e-24);
          norm = std::sqrt(norm);
          for (auto& c : p) c *= r / norm;
        }
        pts.push_back(std::move(p));
      }
      break;
    }
    case SpaceKind::ConeOverCircle:
      for (std::size_t j = 0; j < m; ++j) {
        const double r = spec.radius * std::sqrt(radial_fraction(j));
        pts.push_back({r, 2.0 * kPi * spec.rho * angular_fraction(j)});
      }
      break;
    case SpaceKind::FlatCylinder: {
      const auto z_perm = permutation(m, rng);
      for (std::size_t j = 0; j < m; ++j) {
        const double theta = 2.0 * kPi * angular_fraction(j);
        const double z = spec.half_height *
                         (2.0 * (static_cast<double>(z_perm[j]) + rng.uniform()) / static_cast<double>(m) - 1.0);
        pts.push_back({theta, z});
      }
      break;
    }
    case SpaceKind::HyperbolicDisk: {
      const double k = std::sqrt(-spec.kappa);
      if (spec.tube) {
        const double sw = std::sinh(k * spec.tube->half_width);
        const auto t_perm = permutation(m, rng);
        for (std::size_t j = 0; j < m; ++j) {
          const double t = spec.tube->half_length *
                           (2.0 * (static_cast<double>(t_perm[j]) + rng.uniform()) / static_cast<double>(m) - 1.0);
          const double u = std::asinh((2.0 * angular_fraction(j) - 1.0) * sw) / k;
          const double x0 = std::cosh(k * t) * std::cosh(k * u);
          const double x1 = std::sinh(k * t) * std::cosh(k * u);
          const double x2 = std::sinh(k * u);
          pts.push_back({x1 / (1.0 + x0), x2 / (1.0 + x0)});
        }
      } else {
        const double span = std::cosh(k * spec.radius) - 1.0;
        for (std::size_t j = 0; j < m; ++j) {
          const double r = std::acosh(1.0 + radial_fraction(j) * span) / k;
          pts.push_back(space.radial_point(r, 2.0 * kPi * angular_fraction(j)));
        }
      }
      break;
    }
    case SpaceKind::ParaboloidPatch: {
      const double a = spec.paraboloid_a;
      const double total = space.area() / (2.0 * kPi);
      for (std::size_t j = 0; j < m; ++j) {
        const double u = radial_fraction(j);
        const double rr = std::sqrt((std::pow(1.0 + 12.0 * a * a * total * u, 2.0 / 3.0) - 1.0) / (4.0 * a * a));
        const double theta = 2.0 * kPi * angular_fraction(j);
        const double x = rr * std::cos(theta);
        const double y = rr * std::sin(theta);
        pts.push_back({x, y, a * (x * x + y * y)});
      }
      break;
    }
  }
  // Index order carries no geometry.
  std::vector<Point> tail(pts.begin() + 1, pts.end());
  rng.shuffle(tail);
  std::copy(tail.begin(), tail.end(), pts.begin() + 1);
  return pts;
}

FiniteMetricSpace chordal_knn_graph(std::vector<Point> pts, std::size_t k, int dimension) {
  const std::size_t n = pts.size();
  k = std::min(k, n - 1);
  std::vector<std::vector<WeightedEdge>> rows(n);
  detail::parallel_for(n, [&](std::size_t i) {
    std::vector<std::pair<double, Index>> row;
    row.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      double s = 0.0;
      for (std::size_t c = 0; c < pts[i].size(); ++c) s += (pts[i][c] - pts[j][c]) * (pts[i][c] - pts[j][c]);
      row.emplace_back(std::sqrt(s), static_cast<Index>(j));
    }
    std::partial_sort(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k), row.end());
    for (std::size_t r = 0; r < k; ++r) {
      rows[i].push_back({static_cast<Index>(i), row[r].second, row[r].first});
    }
  });
  std::vector<WeightedEdge> edges;
  for (auto& row : rows) edges.insert(edges.end(), row.begin(), row.end());
  return FiniteMetricSpace::from_graph(n, edges, dimension, std::move(pts));
}

}  // namespace

MeasuredSpace sample(const AnalyticSpace& space, std::size_t n_points, std::uint64_t seed) {
  if (n_points < 16) throw InputError("sample needs at least 16 points");
  detail::Rng rng(seed, static_cast<std::uint64_t>(space.kind()) + 1);
  auto pts = draw_points(space, n_points, rng);
  auto shared = std::make_shared<const AnalyticSpace>(space);
  const double w = space.area() / static_cast<double>(n_points);
  std::vector<double> weights(n_points, w);
  if (space.has_exact_metric()) {
    auto base = FiniteMetricSpace::from_exact(std::move(pts), shared, space.dimension());
    return MeasuredSpace(std::move(base), std::move(weights), space.dimension(), shared, 0);
  }
  auto base = chordal_knn_graph(std::move(pts), kParaboloidNeighbors, space.dimension());
  return MeasuredSpace(std::move(base), std::move(weights), space.dimension(), shared, 0);
}

}  // namespace cglab
