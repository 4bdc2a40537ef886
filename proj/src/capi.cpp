// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cglab/cglab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "cglab/critical.hpp"
#include "cglab/errors.hpp"
#include "cglab/excess.hpp"
#include "cglab/model_plane.hpp"
#include "cglab/pipelines.hpp"
#include "cglab/space_io.hpp"

struct cglab_space {
  cglab::SpaceDocument doc;
};

namespace {

thread_local std::string g_last_error;

cglab_status fail(cglab_status status, const char* message) {
  g_last_error = message;
  return status;
}

template <class F>
cglab_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return CGLAB_OK;
  } catch (const cglab::DomainError& e) {
    return fail(CGLAB_ERR_DOMAIN, e.what());
  } catch (const cglab::InputError& e) {
    return fail(CGLAB_ERR_INVALID_ARGUMENT, e.what());
  } catch (const cglab::IoError& e) {
    return fail(CGLAB_ERR_IO, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(CGLAB_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CGLAB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CGLAB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CGLAB_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require_non_null(const void* p, const char* what) {
  if (!p) throw cglab::InputError(std::string(what) + " is null");
}

cglab::Json parse(const char* text) {
  if (!text || !*text) return cglab::Json::object();
  try {
    return cglab::Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw cglab::InputError(std::string("invalid JSON: ") + e.what());
  }
}

cglab_verdict to_c(cglab::Verdict v) {
  switch (v) {
    case cglab::Verdict::Pass: return CGLAB_VERDICT_PASS;
    case cglab::Verdict::Fail: return CGLAB_VERDICT_FAIL;
    case cglab::Verdict::Inconclusive: return CGLAB_VERDICT_INCONCLUSIVE;
    case cglab::Verdict::Excluded: return CGLAB_VERDICT_EXCLUDED;
  }
  return CGLAB_VERDICT_INCONCLUSIVE;
}

template <class F>
cglab_status scalar(double* out, F&& f) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = f();
  });
}

}  // namespace

extern "C" {

const char* cglab_version(void) { return "0.1.0"; }

const char* cglab_last_error(void) { return g_last_error.c_str(); }

void cglab_string_free(char* s) { std::free(s); }

cglab_status cglab_space_generate(const char* generator_json, size_t n_points, uint64_t seed,
                                  cglab_space** out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = nullptr;
    require_non_null(generator_json, "generator_json");
    auto doc = cglab::generate_space(parse(generator_json), n_points, seed);
    *out = new cglab_space{std::move(doc)};
  });
}

cglab_status cglab_space_from_json(const char* space_json, cglab_space** out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = nullptr;
    require_non_null(space_json, "space_json");
    *out = new cglab_space{cglab::space_from_json(parse(space_json))};
  });
}

cglab_status cglab_space_load(const char* path, cglab_space** out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = nullptr;
    require_non_null(path, "path");
    *out = new cglab_space{cglab::load_space(path)};
  });
}

cglab_status cglab_space_to_json(const cglab_space* space, char** out) {
  return guarded([&] {
    require_non_null(space, "space");
    require_non_null(out, "out");
    *out = copy_string(cglab::dump_report(
        cglab::space_to_json(space->doc.space, space->doc.name, space->doc.seed)));
  });
}

cglab_status cglab_space_save(const cglab_space* space, const char* path) {
  return guarded([&] {
    require_non_null(space, "space");
    require_non_null(path, "path");
    cglab::save_space(path, space->doc.space, space->doc.name, space->doc.seed);
  });
}

void cglab_space_free(cglab_space* space) { delete space; }

cglab_status cglab_space_size(const cglab_space* space, size_t* out) {
  return guarded([&] {
    require_non_null(space, "space");
    require_non_null(out, "out");
    *out = space->doc.space.size();
  });
}

cglab_status cglab_space_distance(const cglab_space* space, size_t i, size_t j, double* out) {
  return guarded([&] {
    require_non_null(space, "space");
    require_non_null(out, "out");
    const auto n = space->doc.space.size();
    if (i >= n || j >= n) throw cglab::InputError("point index out of range");
    *out = space->doc.space.space().distance(static_cast<cglab::Index>(i), static_cast<cglab::Index>(j));
  });
}

cglab_status cglab_run_pipeline(const cglab_space* space, const char* pipeline,
                                const char* config_json, char** report, char** csv,
                                cglab_verdict* verdict) {
  return guarded([&] {
    require_non_null(space, "space");
    require_non_null(pipeline, "pipeline");
    if (report) *report = nullptr;
    if (csv) *csv = nullptr;
    const auto result = cglab::run_pipeline(space->doc.space, pipeline, parse(config_json));
    std::string report_text = cglab::dump_report(result.report.to_json());
    if (report) *report = copy_string(report_text);
    if (csv) {
      try {
        *csv = copy_string(result.csv);
      } catch (...) {
        if (report) {
          std::free(*report);
          *report = nullptr;
        }
        throw;
      }
    }
    if (verdict) *verdict = to_c(result.report.verdict);
  });
}

cglab_status cglab_thresholds(const char* config_json, char** report, cglab_verdict* verdict) {
  return guarded([&] {
    require_non_null(report, "report");
    *report = nullptr;
    const auto rep = cglab::thresholds_report(parse(config_json));
    *report = copy_string(cglab::dump_report(rep.to_json()));
    if (verdict) *verdict = to_c(rep.verdict);
  });
}

cglab_status cglab_jacobi_s(double kappa, double r, double* out) {
  return scalar(out, [&] { return cglab::jacobi_s(kappa, r); });
}

cglab_status cglab_comparison_angle(double kappa, double a, double b, double c, double* out) {
  return scalar(out, [&] { return cglab::comparison_angle(kappa, a, b, c); });
}

cglab_status cglab_phi(int n, double kappa, double r, double l, int closed_form, double* out) {
  return scalar(out, [&] {
    return cglab::phi(n, kappa, r, l,
                      closed_form ? cglab::PhiMethod::ClosedForm : cglab::PhiMethod::Quadrature);
  });
}

cglab_status cglab_ag_bound(double h, double s, int n, double* out) {
  return scalar(out, [&] { return cglab::ag_bound(h, s, n); });
}

cglab_status cglab_gamma_threshold(double eps, double C, int n, int has_cbar, double cbar,
                                   double* out) {
  return scalar(out, [&] {
    return cglab::gamma_threshold(eps, C, n, has_cbar ? std::optional<double>(cbar) : std::nullopt);
  });
}

cglab_status cglab_contradiction_margin(int n, double kappa, double eps, double R, double* out) {
  return scalar(out, [&] { return cglab::contradiction_margin(n, kappa, eps, R); });
}

}  // extern "C"
