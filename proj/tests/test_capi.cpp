// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

// Exercises the shared library through its C interface only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "cglab/cglab.h"

namespace {

const char* kCone = R"({"kind": "cone", "params": {"rho": 0.5, "radius": 4}})";

struct Owned {
  char* s = nullptr;
  ~Owned() { cglab_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};

struct Space {
  cglab_space* p = nullptr;
  ~Space() { cglab_space_free(p); }
};

}  // namespace

TEST_CASE("version and errors") {
  CHECK(std::strlen(cglab_version()) > 0);
  double x = 0;
  CHECK(cglab_jacobi_s(-1.0, -1.0, &x) == CGLAB_ERR_DOMAIN);
  CHECK(std::strlen(cglab_last_error()) > 0);
  CHECK(cglab_jacobi_s(-1.0, 1.0, &x) == CGLAB_OK);
  CHECK(std::strlen(cglab_last_error()) == 0);
  CHECK(x == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
  CHECK(cglab_jacobi_s(0.0, 1.0, nullptr) == CGLAB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("scalar functions") {
  double x = 0;
  REQUIRE(cglab_comparison_angle(0.0, 3, 4, 5, &x) == CGLAB_OK);
  CHECK(std::abs(x - M_PI / 2) < 1e-12);
  REQUIRE(cglab_phi(3, 0.0, 0.5, 2.0, 1, &x) == CGLAB_OK);
  CHECK(x == doctest::Approx(3.375).epsilon(1e-12));
  REQUIRE(cglab_phi(3, 0.0, 0.5, 2.0, 0, &x) == CGLAB_OK);
  CHECK(x == doctest::Approx(3.375).epsilon(1e-8));
  REQUIRE(cglab_gamma_threshold(0.1, 2.0, 2, 0, 0.0, &x) == CGLAB_OK);
  CHECK(x == doctest::Approx(1.0 / 401.0).epsilon(1e-14));
  CHECK(cglab_gamma_threshold(0.1, 2.0, 2, 1, 1.5, &x) == CGLAB_ERR_DOMAIN);
  REQUIRE(cglab_contradiction_margin(2, 1.0, 0.2, 10.0, &x) == CGLAB_OK);
  CHECK(x > std::log(2.0) - 0.32);
  REQUIRE(cglab_ag_bound(1.0, 4.0, 2, &x) == CGLAB_OK);
  CHECK(x > 0.0);
}

TEST_CASE("generate, serialize, reload") {
  Space s;
  REQUIRE(cglab_space_generate(kCone, 400, 7, &s.p) == CGLAB_OK);
  size_t n = 0;
  REQUIRE(cglab_space_size(s.p, &n) == CGLAB_OK);
  CHECK(n == 400);

  Owned text;
  REQUIRE(cglab_space_to_json(s.p, &text.s) == CGLAB_OK);
  Space back;
  REQUIRE(cglab_space_from_json(text.s, &back.p) == CGLAB_OK);
  double a = 0, b = 0;
  REQUIRE(cglab_space_distance(s.p, 3, 250, &a) == CGLAB_OK);
  REQUIRE(cglab_space_distance(back.p, 3, 250, &b) == CGLAB_OK);
  CHECK(a == b);
  CHECK(cglab_space_distance(s.p, 3, 400, &a) == CGLAB_ERR_INVALID_ARGUMENT);

  REQUIRE(cglab_space_save(s.p, "capi_space.json") == CGLAB_OK);
  Space loaded;
  REQUIRE(cglab_space_load("capi_space.json", &loaded.p) == CGLAB_OK);
  Owned again;
  REQUIRE(cglab_space_to_json(loaded.p, &again.s) == CGLAB_OK);
  CHECK(again.str() == text.str());
}

TEST_CASE("pipelines") {
  Space s;
  REQUIRE(cglab_space_generate(kCone, 800, 3, &s.p) == CGLAB_OK);
  Owned report, csv;
  cglab_verdict v = CGLAB_VERDICT_FAIL;
  REQUIRE(cglab_run_pipeline(s.p, "check-bg", R"({"bins": 6})", &report.s, &csv.s, &v) == CGLAB_OK);
  CHECK(v == CGLAB_VERDICT_PASS);
  CHECK(report.str().find("\"check-bg\"") != std::string::npos);
  CHECK(csv.str().size() > 0);

  Owned second;
  REQUIRE(cglab_run_pipeline(s.p, "check-bg", R"({"bins": 6})", &second.s, nullptr, nullptr) == CGLAB_OK);
  CHECK(second.str() == report.str());

  REQUIRE(cglab_run_pipeline(s.p, "inspect", nullptr, nullptr, nullptr, &v) == CGLAB_OK);
  CHECK(v == CGLAB_VERDICT_PASS);

  Space h;
  REQUIRE(cglab_space_generate(R"({"kind": "hyperbolic", "params": {"radius": 3}})", 600, 3, &h.p) ==
          CGLAB_OK);
  REQUIRE(cglab_run_pipeline(h.p, "check-curvature", R"({"kappa": 0, "samples": 500})", nullptr, nullptr,
                             &v) == CGLAB_OK);
  CHECK(v == CGLAB_VERDICT_FAIL);

  Owned th;
  REQUIRE(cglab_thresholds(R"({"n": 2, "kappa": 1})", &th.s, &v) == CGLAB_OK);
  CHECK(v == CGLAB_VERDICT_PASS);
  CHECK(th.str().find("alpha_min") != std::string::npos);
}

TEST_CASE("error codes") {
  Space s;
  CHECK(cglab_space_generate("{not json", 100, 1, &s.p) == CGLAB_ERR_INVALID_ARGUMENT);
  CHECK(s.p == nullptr);
  CHECK(cglab_space_generate(R"({"kind": "torus"})", 100, 1, &s.p) == CGLAB_ERR_INVALID_ARGUMENT);
  CHECK(cglab_space_generate(R"({"kind": "cone", "params": {"rho": 1.5}})", 100, 1, &s.p) ==
        CGLAB_ERR_INVALID_ARGUMENT);
  CHECK(cglab_space_generate(kCone, 100, 1, nullptr) == CGLAB_ERR_INVALID_ARGUMENT);
  CHECK(cglab_space_load("no/such/file.json", &s.p) == CGLAB_ERR_IO);
  CHECK(std::string(cglab_last_error()).find("no/such/file.json") != std::string::npos);

  REQUIRE(cglab_space_generate(kCone, 200, 1, &s.p) == CGLAB_OK);
  Owned r;
  CHECK(cglab_run_pipeline(s.p, "nope", nullptr, &r.s, nullptr, nullptr) == CGLAB_ERR_INVALID_ARGUMENT);
  CHECK(r.s == nullptr);
  CHECK(cglab_run_pipeline(s.p, "check-bg", R"({"bogus": 1})", nullptr, nullptr, nullptr) ==
        CGLAB_ERR_INVALID_ARGUMENT);
  CHECK(cglab_run_pipeline(s.p, "check-bg", R"({"r1": -1})", nullptr, nullptr, nullptr) ==
        CGLAB_ERR_DOMAIN);
  CHECK(cglab_run_pipeline(nullptr, "inspect", nullptr, nullptr, nullptr, nullptr) ==
        CGLAB_ERR_INVALID_ARGUMENT);
  CHECK(cglab_thresholds(R"({"kappa": 0})", &r.s, nullptr) == CGLAB_ERR_DOMAIN);
  CHECK(cglab_space_save(s.p, "no/such/dir/x.json") == CGLAB_ERR_IO);
  cglab_space_free(nullptr);
  cglab_string_free(nullptr);
}
