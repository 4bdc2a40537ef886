// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace cglab {

/// Solution of s'' + kappa s = 0 with s(0) = 0, s'(0) = 1:
/// sin(sqrt(k) r)/sqrt(k), r, or sinh(sqrt(-k) r)/sqrt(-k) by the sign of kappa.
/// Evaluated by series when |kappa| r^2 is tiny so the result is continuous at 0.
/// Throws DomainError for r < 0 or, when kappa > 0, r > pi/sqrt(kappa).
double jacobi_s(double kappa, double r);

/// Angle at the vertex joining sides a and b of the triangle with opposite
/// side c in the plane of constant curvature kappa.
///
/// Uses the half-angle form
///   tan^2(g/2) = s((c-a+b)/2) s((c+a-b)/2) / (s((a+b-c)/2) s((a+b+c)/2)),
/// s = jacobi_s(kappa, .), which stays well conditioned for thin and
/// collinear triangles (those return exactly 0 or pi). The triangle
/// inequality is enforced up to a relative slack of 1e-12.
double comparison_angle(double kappa, double a, double b, double c);

/// (1/kappa) ln(2 / (1 - exp(-2 kappa R))): the lower bound on the excess of a
/// triangle with d(p,x) = R, d(p,q) = 2R and angle at x at most pi/2 in
/// curvature -kappa^2. Strictly decreasing in R towards ln(2)/kappa.
double hyperbolic_excess_lower_bound(double kappa, double R);

/// The comparison plane of curvature kappa.
class ModelPlane {
 public:
  explicit ModelPlane(double kappa) : kappa_(kappa) {}

  double kappa() const { return kappa_; }

  /// pi/sqrt(kappa) for kappa > 0, +inf otherwise.
  double max_side() const;

  double jacobi(double r) const { return jacobi_s(kappa_, r); }
  double angle(double a, double b, double c) const { return comparison_angle(kappa_, a, b, c); }

  /// Whether a triangle with these sides exists in this plane.
  bool admits(double a, double b, double c) const;

 private:
  double kappa_;
};

}  // namespace cglab
