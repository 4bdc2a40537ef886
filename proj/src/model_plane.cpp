// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cglab/model_plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cglab/errors.hpp"

namespace cglab {
namespace {

constexpr double kSeriesThreshold = 1e-8;
constexpr double kTriangleSlack = 1e-12;

// s_kappa without domain checks; caller guarantees 0 <= r (<= pi/sqrt(kappa)).
double jacobi_unchecked(double kappa, double r) {
  const double x = kappa * r * r;
  if (std::abs(x) < kSeriesThreshold) {
    return r * (1.0 - x / 6.0 + x * x / 120.0);
  }
  if (kappa > 0.0) {
    const double k = std::sqrt(kappa);
    return std::sin(k * r) / k;
  }
  const double k = std::sqrt(-kappa);
  return std::sinh(k * r) / k;
}

bool triangle_ok(double a, double b, double c) {
  const double slack = kTriangleSlack * (a + b + c);
  return c <= a + b + slack && a <= b + c + slack && b <= a + c + slack;
}

}  // namespace

double jacobi_s(double kappa, double r) {
  if (!(r >= 0.0) || !std::isfinite(kappa)) {
    throw DomainError("jacobi_s: r must be >= 0 (got " + std::to_string(r) + ")");
  }
  if (kappa > 0.0 && r > std::numbers::pi / std::sqrt(kappa) * (1.0 + 1e-14)) {
    throw DomainError("jacobi_s: r exceeds pi/sqrt(kappa)");
  }
  return jacobi_unchecked(kappa, r);
}

double ModelPlane::max_side() const {
  return kappa_ > 0.0 ? std::numbers::pi / std::sqrt(kappa_)
                      : std::numeric_limits<double>::infinity();
}

bool ModelPlane::admits(double a, double b, double c) const {
  if (!(a > 0.0) || !(b > 0.0) || !(c >= 0.0)) return false;
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) return false;
  if (!triangle_ok(a, b, c)) return false;
  if (kappa_ > 0.0) {
    const double limit = max_side();
    const double slack = 1.0 + 1e-14;
    if (a > limit * slack || b > limit * slack || c > limit * slack) return false;
    if (a + b + c > 2.0 * limit * slack) return false;
  }
  return true;
}

double comparison_angle(double kappa, double a, double b, double c) {
  const ModelPlane plane(kappa);
  if (!(a > 0.0) || !(b > 0.0) || !(c >= 0.0)) {
    throw DomainError("comparison_angle: sides adjacent to the vertex must be positive");
  }
  if (!triangle_ok(a, b, c)) {
    throw DomainError("comparison_angle: triangle inequality violated");
  }
  if (!plane.admits(a, b, c)) {
    throw DomainError("comparison_angle: triangle too large for curvature kappa > 0");
  }
  const double half_perimeter = 0.5 * (a + b + c);
  const double u = std::max(0.0, 0.5 * (c - a + b));
  const double v = std::max(0.0, 0.5 * (c + a - b));
  const double w = std::max(0.0, 0.5 * (a + b - c));
  // Clamp the semi-perimeter into the domain of s_kappa for kappa > 0.
  const double hp = std::min(half_perimeter, plane.max_side());
  const double num = jacobi_unchecked(kappa, u) * jacobi_unchecked(kappa, v);
  const double den = jacobi_unchecked(kappa, w) * jacobi_unchecked(kappa, hp);
  const double angle = 2.0 * std::atan2(std::sqrt(std::max(0.0, num)), std::sqrt(std::max(0.0, den)));
  return std::clamp(angle, 0.0, std::numbers::pi);
}

double hyperbolic_excess_lower_bound(double kappa, double R) {
  if (!(kappa > 0.0) || !(R > 0.0)) {
    throw DomainError("hyperbolic_excess_lower_bound: kappa and R must be positive");
  }
  if (std::isinf(R)) return std::numbers::ln2 / kappa;
  // ln 2 - ln(1 - e^{-2 kappa R}), with the subtraction done by expm1.
  return (std::numbers::ln2 - std::log(-std::expm1(-2.0 * kappa * R))) / kappa;
}

}  // namespace cglab
