// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cglab/errors.hpp"
#include "cglab/model_plane.hpp"

using namespace cglab;
using std::numbers::pi;

namespace {

// Law of cosines in the constant-curvature plane, written with acos.
double law_of_cosines(double k, double a, double b, double c) {
  if (k == 0.0) return std::acos((a * a + b * b - c * c) / (2 * a * b));
  if (k > 0.0) {
    const double s = std::sqrt(k);
    return std::acos((std::cos(s * c) - std::cos(s * a) * std::cos(s * b)) /
                     (std::sin(s * a) * std::sin(s * b)));
  }
  const double s = std::sqrt(-k);
  return std::acos((std::cosh(s * a) * std::cosh(s * b) - std::cosh(s * c)) /
                   (std::sinh(s * a) * std::sinh(s * b)));
}

}  // namespace

TEST_SUITE("model_plane") {

TEST_CASE("jacobi_s examples") {
  CHECK(jacobi_s(0.0, 2.5) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(jacobi_s(1.0, pi / 2) == doctest::Approx(1.0).epsilon(1e-15));
  // sinh(1) to 17 digits
  CHECK(jacobi_s(-1.0, 1.0) == doctest::Approx(1.1752011936438014).epsilon(1e-15));
  CHECK(jacobi_s(4.0, 0.25) == doctest::Approx(std::sin(0.5) / 2.0).epsilon(1e-15));
  CHECK(jacobi_s(-9.0, 0.5) == doctest::Approx(std::sinh(1.5) / 3.0).epsilon(1e-15));
}

TEST_CASE("jacobi_s domain") {
  CHECK_THROWS_AS(jacobi_s(1.0, pi + 0.01), DomainError);
  CHECK_THROWS_AS(jacobi_s(0.0, -1.0), DomainError);
  CHECK_NOTHROW(jacobi_s(1.0, pi));
  CHECK(jacobi_s(1.0, 0.0) == 0.0);
}

TEST_CASE("jacobi_s is continuous at kappa = 0") {
  for (double r : {0.1, 1.0, 3.0}) {
    for (double k : {1e-12, -1e-12, 1e-10, -1e-10}) {
      CHECK(jacobi_s(k, r) == doctest::Approx(r).epsilon(1e-9));
    }
    // Either side of the series threshold agrees with r - k r^3 / 6.
    const double k = 1e-8 / (r * r);
    for (double kk : {k * 0.999, k * 1.001, -k * 0.999, -k * 1.001}) {
      CHECK(jacobi_s(kk, r) == doctest::Approx(r - kk * r * r * r / 6).epsilon(1e-14));
    }
  }
}

TEST_CASE("jacobi_s solves s'' + kappa s = 0") {
  const double h = 1e-4;
  for (double k : {-1.0, 0.0, 1.0}) {
    for (int i = 1; i <= 40; ++i) {
      const double r = 2.0 * i / 40.0 - (i == 40 ? h : 0.0);
      if (r - h < 0) continue;
      const double second = (jacobi_s(k, r + h) - 2 * jacobi_s(k, r) + jacobi_s(k, r - h)) / (h * h);
      CHECK(std::abs(second + k * jacobi_s(k, r)) < 1e-6);
    }
    CHECK((jacobi_s(k, h) - jacobi_s(k, 0.0)) / h == doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("comparison_angle examples") {
  CHECK(comparison_angle(0.0, 3, 4, 5) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(comparison_angle(0.0, 1, 1, 1) == doctest::Approx(pi / 3).epsilon(1e-15));
  // acosh(cosh(1)^2)
  const double c_star = 1.5133740065965040;
  CHECK(comparison_angle(-1.0, 1, 1, c_star) == doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK(comparison_angle(0.0, 1, 2, 3) == doctest::Approx(pi).epsilon(1e-12));
  CHECK(comparison_angle(0.0, 2, 3, 1) == doctest::Approx(0.0));
}

TEST_CASE("comparison_angle matches the law of cosines") {
  const double sides[][3] = {{1, 1.5, 2}, {0.3, 0.4, 0.2}, {2, 2, 3.5}, {1, 0.7, 0.4}, {0.8, 1.1, 1.3}};
  for (double k : {-2.0, -1.0, -0.1, 0.0, 0.1, 1.0}) {
    for (const auto& s : sides) {
      if (k > 0 && s[0] + s[1] + s[2] >= 2 * pi / std::sqrt(k)) continue;
      CHECK(comparison_angle(k, s[0], s[1], s[2]) ==
            doctest::Approx(law_of_cosines(k, s[0], s[1], s[2])).epsilon(1e-11));
    }
  }
}

TEST_CASE("comparison_angle symmetry and monotonicity") {
  for (double k : {-1.0, 0.0, 0.5}) {
    for (double a : {0.3, 0.9, 1.4}) {
      for (double b : {0.5, 1.2}) {
        const double mid = 0.5 * (std::abs(a - b) + a + b);
        CHECK(comparison_angle(k, a, b, mid) == doctest::Approx(comparison_angle(k, b, a, mid)).epsilon(1e-14));
        double prev = -1.0;
        const double lo = std::abs(a - b) + 1e-3;
        const double hi = a + b - 1e-3;
        for (int i = 0; i <= 20; ++i) {
          const double c = lo + (hi - lo) * i / 20.0;
          const double ang = comparison_angle(k, a, b, c);
          CHECK(ang > prev);
          CHECK(ang >= 0.0);
          CHECK(ang <= pi);
          prev = ang;
        }
      }
    }
  }
}

TEST_CASE("comparison_angle decreases with curvature") {
  // Larger k opens the angle opposite a fixed side.
  for (double c : {0.5, 1.0, 1.6}) {
    double prev = 10.0;
    for (double k : {0.8, 0.3, 0.0, -0.5, -2.0}) {
      const double ang = comparison_angle(k, 1.0, 1.0, c);
      CHECK(ang < prev);
      prev = ang;
    }
  }
}

TEST_CASE("comparison_angle rejects bad triangles") {
  CHECK_THROWS_AS(comparison_angle(0.0, 1, 1, 3), DomainError);
  CHECK_THROWS_AS(comparison_angle(0.0, 0, 1, 1), DomainError);
  CHECK_THROWS_AS(comparison_angle(1.0, 2, 2, 3), DomainError);  // perimeter above 2 pi
  CHECK_THROWS_AS(comparison_angle(1.0, 3.5, 0.5, 3.2), DomainError);
  const ModelPlane plane(1.0);
  CHECK_FALSE(plane.admits(2, 2, 3));
  CHECK(plane.admits(1, 1, 1));
  CHECK(plane.max_side() == doctest::Approx(pi));
}

TEST_CASE("hyperbolic_excess_lower_bound") {
  // ln(2 / (1 - e^-2))
  CHECK(hyperbolic_excess_lower_bound(1.0, 1.0) == doctest::Approx(0.83856063842880437).epsilon(1e-14));
  CHECK(hyperbolic_excess_lower_bound(1.0, INFINITY) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(hyperbolic_excess_lower_bound(1.0, 50.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(hyperbolic_excess_lower_bound(1.0, 1.0) > hyperbolic_excess_lower_bound(1.0, 2.0));
  CHECK(hyperbolic_excess_lower_bound(1.0, 2.0) > std::log(2.0));
  for (double k : {0.1, 1.0, 7.0}) {
    double prev = INFINITY;
    // Beyond k R = 15 the correction falls below double precision.
    for (double R = 0.05; R < 15.0 / k; R *= 1.5) {
      const double v = hyperbolic_excess_lower_bound(k, R);
      CHECK(v > std::log(2.0) / k);
      CHECK(v < prev);
      prev = v;
    }
  }
  CHECK_THROWS_AS(hyperbolic_excess_lower_bound(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(hyperbolic_excess_lower_bound(1.0, 0.0), DomainError);
}

}  // TEST_SUITE
