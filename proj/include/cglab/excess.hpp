// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cglab/measured_space.hpp"
#include "cglab/quadrature.hpp"
#include "cglab/report.hpp"

namespace cglab {

/// d(x,p) + d(x,q) - d(p,q). Throws DomainError when p == q.
double excess(const FiniteMetricSpace& space, Index p, Index q, Index x);

/// Smallest distance from x to a vertex of the tie-broken geodesic from p to q.
double height(const FiniteMetricSpace& space, Index p, Index q, Index x);

/// 8 (h^n / s)^(1/(n-1)). Throws DomainError for h < 0, s <= 0 or n < 2.
double ag_bound(double h, double s, int n);

enum class PhiMethod { Quadrature, ClosedForm };

/// Double integral over r <= t <= tau <= l of (s_k(tau) / s_k(t))^(n-1),
/// s_k the Jacobi function. Quadrature works for any kappa (kappa > 0 needs
/// l < pi/sqrt(kappa)); the closed form is for kappa = 0 only. Returns
/// exactly 0 when r == l.
///
/// Throws DomainError for r <= 0, r > l, n < 2, or a closed form at kappa != 0.
double phi(int n, double kappa, double r, double l, PhiMethod method = PhiMethod::Quadrature,
           QuadratureTolerance tol = {1e-9, 1e-11, 40});

/// (2(n-1)/s) phi_{n,0}(d, h + eps) using the closed form.
/// Throws DomainError unless 0 < d <= h + eps, s > 0 and eps >= 0.
double g_function(double d, double h, double s, int n, double eps = 0.0);

inline constexpr double kChainBoundTolerance = 1e-12;

/// With c = 2h^n/s, checks 2c + G(c) <= ag_bound(h, s, n) up to 1e-12.
/// Inputs with h > s/2 or c outside (0, h] are reported as Excluded.
VerificationReport chain_bound_check(double h, double s, int n);

struct ExcessTriple {
  Index p = 0;
  Index q = 0;
  Index x = 0;
  double e = 0.0;
  double h = 0.0;
  double s = 0.0;
  double bound = 0.0;
  double margin = 0.0;  ///< bound + delta - e
};

struct ExcessSampleConfig {
  std::size_t triples = 10000;       ///< admissible triples to test
  std::uint64_t seed = 0;
  std::size_t pool = 64;             ///< source vertices with shortest-path trees
  std::size_t max_attempts = 0;      ///< 0 means 50 * triples
  double min_s = 0.0;                ///< extra filter: s >= min_s
  double min_h = 0.0;                ///< extra filter: h >= min_h
  double max_h = 0.0;                ///< extra filter: h <= max_h when positive
  std::optional<double> delta;       ///< defaults to 4 * net_resolution
};

struct ExcessVerification {
  VerificationReport report;
  std::vector<ExcessTriple> triples;
};

/// Tests e <= ag_bound(h, s, n) + delta on seeded triples with h <= s/2 and
/// 2h^(n-1) <= s. Endpoints p, q come from a fixed pool of vertices; x is
/// arbitrary on exact spaces and from the pool on graph spaces. Also counts
/// violations of e <= 2h + delta and of the Lipschitz bound
/// |e(x) - e(y)| <= 2 d(x,y) among triples sharing p and q.
ExcessVerification verify_excess_on_space(const MeasuredSpace& ms, const ExcessSampleConfig& config);

/// Columns p, q, x, e, h, s, bound, margin.
std::string excess_csv(const std::vector<ExcessTriple>& triples);

}  // namespace cglab
