// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cglab/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "cglab/critical.hpp"
#include "cglab/errors.hpp"
#include "cglab/excess.hpp"
#include "cglab/generators.hpp"
#include "cglab/measure.hpp"
#include "cglab/metric_space.hpp"
#include "cglab/model_plane.hpp"

namespace cglab {

namespace {

// Reads typed options from a config object, records the effective values
// and rejects keys nobody asked for.
class Options {
 public:
  explicit Options(const Json& cfg) : cfg_(cfg.is_null() ? Json::object() : cfg) {
    if (!cfg_.is_object()) throw InputError("config must be a JSON object");
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    used_.insert(key);
    T value = fallback;
    if (cfg_.contains(key) && !cfg_.at(key).is_null()) {
      try {
        value = cfg_.at(key).get<T>();
      } catch (const Json::exception&) {
        throw InputError("config key '" + key + "' has the wrong type");
      }
    }
    echo_[key] = value;
    return value;
  }

  template <class T>
  std::optional<T> optional(const std::string& key) {
    used_.insert(key);
    if (!cfg_.contains(key) || cfg_.at(key).is_null()) return std::nullopt;
    try {
      T value = cfg_.at(key).get<T>();
      echo_[key] = value;
      return value;
    } catch (const Json::exception&) {
      throw InputError("config key '" + key + "' has the wrong type");
    }
  }

  Json sub(const std::string& key) {
    used_.insert(key);
    if (!cfg_.contains(key) || cfg_.at(key).is_null()) return Json::object();
    if (!cfg_.at(key).is_object()) throw InputError("config key '" + key + "' must be an object");
    return cfg_.at(key);
  }

  void set_echo(const std::string& key, Json value) { echo_[key] = std::move(value); }

  /// Throws for keys not read.
  Json finish(const std::vector<std::string>& also_allowed = {}) const {
    for (auto it = cfg_.begin(); it != cfg_.end(); ++it) {
      if (!used_.count(it.key()) &&
          std::find(also_allowed.begin(), also_allowed.end(), it.key()) == also_allowed.end()) {
        throw InputError("unknown config key '" + it.key() + "'");
      }
    }
    return echo_;
  }

 private:
  Json cfg_;
  Json echo_ = Json::object();
  std::set<std::string> used_;
};

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(what) + " must be positive");
}

Index center_of(const MeasuredSpace& ms, Options& opt) {
  const auto c = opt.get<std::int64_t>("center", ms.basepoint());
  if (c < 0 || static_cast<std::size_t>(c) >= ms.size()) throw DomainError("center out of range");
  return static_cast<Index>(c);
}

double max_distance(const MeasuredSpace& ms, Index p) {
  const auto row = ms.space().distances_from(p);
  return *std::max_element(row.begin(), row.end());
}

// 0.8 of the truncation radius for generated samples centred at the
// basepoint, else 0.8 of the largest distance from the centre.
double trusted_radius(const MeasuredSpace& ms, Index center) {
  if (ms.generator() && center == ms.basepoint()) return ms.generator()->trusted_radius();
  return 0.8 * max_distance(ms, center);
}

std::optional<double> known_curvature_bound(const MeasuredSpace& ms) {
  if (ms.generator()) return ms.generator()->curvature_lower_bound();
  return std::nullopt;
}


// -- pipelines ----------------------------------------------------------------

PipelineResult inspect(const MeasuredSpace& ms, Options& opt) {
  const Index center = center_of(ms, opt);
  const auto& space = ms.space();
  VerificationReport rep;
  rep.pipeline = "inspect";
  rep.seed = opt.get<std::uint64_t>("seed", 0);
  rep.config_echo = opt.finish();
  rep.items_tested = space.size();
  rep.details["points"] = space.size();
  rep.details["dimension"] = ms.dimension();
  rep.details["backing"] = space.backing() == Backing::Exact ? "exact" : "graph";
  rep.details["path_edges"] = space.path_edges().size();
  rep.details["net_resolution"] = space.net_resolution();
  rep.details["default_tolerance"] = space.default_tolerance();
  rep.details["total_weight"] = ms.total_weight();
  rep.details["max_distance_from_center"] = max_distance(ms, center);
  rep.details["trusted_radius"] = trusted_radius(ms, center);
  if (const AnalyticSpace* gen = ms.generator()) {
    rep.details["generator_kind"] = std::string(to_string(gen->kind()));
    rep.details["generator_area"] = gen->area();
    rep.details["link_measure"] = gen->link_measure();
    rep.details["curvature_lower_bound"] = gen->curvature_lower_bound();
  }
  rep.conclude();
  return {rep, {}};
}

PipelineResult check_curvature(const MeasuredSpace& ms, Options& opt) {
  const auto& space = ms.space();
  const auto seed = opt.get<std::uint64_t>("seed", 0);
  const auto samples = opt.get<std::size_t>("samples", 2000);
  const double k_max = opt.get("k_max", 4.0);
  const double tol = opt.get("tolerance", space.default_tolerance());
  if (samples == 0) throw DomainError("samples must be positive");
  require_positive(k_max, "k_max");
  if (!(tol >= 0.0)) throw DomainError("tolerance must be nonnegative");

  const CurvatureEstimate est = estimate_curvature_bound(space, samples, seed, k_max, tol);
  double kappa = 0.0;
  if (auto k = opt.optional<double>("kappa")) {
    kappa = *k;
  } else {
    kappa = known_curvature_bound(ms).value_or(est.bound);
    opt.set_echo("kappa", kappa);
  }

  const auto quads = sample_quadruples(space, samples, seed);
  const QuadrupleTestResult res = test_quadruples(space, kappa, quads, tol);

  VerificationReport rep;
  rep.pipeline = "check-curvature";
  rep.config_echo = opt.finish();
  rep.seed = seed;
  rep.tolerance = tol;
  std::ostringstream csv;
  csv.precision(17);
  csv << "p,a,b,c,defect\n";
  for (const auto& q : quads) {
    const double d = quadruple_defect_or_refuted(kappa, quadruple_distances(space, q));
    rep.record(d + tol);
    csv << q.p << ',' << q.a << ',' << q.b << ',' << q.c << ',' << d << '\n';
  }
  for (const auto& [q, d] : res.examples) {
    rep.add_violation({{"p", q.p}, {"a", q.a}, {"b", q.b}, {"c", q.c}, {"defect", d}});
  }
  rep.violation_count = res.violations;
  rep.details["kappa"] = kappa;
  rep.details["worst_defect"] = std::isfinite(res.worst_defect) ? Json(res.worst_defect) : Json("-inf");
  rep.details["estimate"] = {{"bound", est.bound},
                             {"k_max", est.k_max},
                             {"at_upper_limit", est.at_upper_limit},
                             {"at_lower_limit", est.at_lower_limit},
                             {"quadruples", est.quadruples}};
  rep.conclude();
  rep.details["outcome"] = rep.passed() ? "no violation found" : "violations found";
  return {rep, csv.str()};
}

PipelineResult check_bg(const MeasuredSpace& ms, Options& opt) {
  const auto seed = opt.get<std::uint64_t>("seed", 0);
  const Index center = center_of(ms, opt);
  const int n = ms.dimension();
  const auto bins = opt.get<std::size_t>("bins", 8);
  const double tol = opt.get("tolerance", 0.05);
  const double ratio_tol = opt.get("ratio_tolerance", 0.01);
  const double trusted = trusted_radius(ms, center);
  const double r1 = opt.get("r1", trusted / 3.0);
  const double r2 = opt.get("r2", trusted);
  const auto growth_count = opt.get<std::size_t>("growth_radii", 8);
  require_positive(r1, "r1");
  require_positive(r2, "r2");

  const RadialProfile profile = radial_profile(ms, center, bins);
  std::vector<VerificationReport> parts;
  parts.push_back(bg_profile_check(profile, n, tol));
  parts.push_back(ball_ratio_check(ms, center, r1, r2, n, ratio_tol));

  std::vector<double> radii;
  for (std::size_t i = 0; i < growth_count; ++i) {
    radii.push_back(trusted * (0.2 + 0.8 * static_cast<double>(i) / std::max<std::size_t>(growth_count - 1, 1)));
  }
  Json growth = Json::array();
  for (double r : radii) growth.push_back({{"r", r}, {"ratio", volume_growth_ratio(ms, center, r)}});

  const AnalyticSpace* gen = ms.generator();
  if (gen && center == ms.basepoint() && gen->ball_volume_exact(trusted)) {
    const IntegrationLemmaResult lemma =
        integration_lemma_check(*gen, trusted, 1e-9 * std::max(1.0, *gen->ball_volume_exact(trusted)));
    VerificationReport lr;
    lr.pipeline = "integration_lemma";
    lr.tolerance = lemma.tolerance;
    lr.details = {{"R", trusted}, {"lhs", lemma.lhs}, {"rhs", lemma.rhs}};
    lr.record(lemma.rhs + lemma.tolerance - lemma.lhs);
    if (!lemma.pass) lr.add_violation({{"lhs", lemma.lhs}, {"rhs", lemma.rhs}});
    lr.conclude();
    parts.push_back(lr);
  }

  VerificationReport rep = combine("check-bg", parts);
  rep.config_echo = opt.finish();
  rep.seed = seed;
  rep.tolerance = tol;
  rep.details["volume_growth"] = growth;
  rep.details["min_volume_growth_ratio"] = min_volume_growth_ratio(ms, center, radii);
  return {rep, profile_csv(profile, n)};
}

PipelineResult check_excess(const MeasuredSpace& ms, Options& opt) {
  ExcessSampleConfig cfg;
  cfg.triples = opt.get<std::size_t>("triples", cfg.triples);
  cfg.seed = opt.get<std::uint64_t>("seed", cfg.seed);
  cfg.pool = opt.get<std::size_t>("pool", cfg.pool);
  cfg.max_attempts = opt.get<std::size_t>("max_attempts", cfg.max_attempts);
  cfg.min_s = opt.get("min_s", cfg.min_s);
  cfg.min_h = opt.get("min_h", cfg.min_h);
  cfg.max_h = opt.get("max_h", cfg.max_h);
  cfg.delta = opt.optional<double>("delta");
  if (cfg.triples == 0) throw DomainError("triples must be positive");
  auto out = verify_excess_on_space(ms, cfg);
  out.report.pipeline = "check-excess";
  out.report.config_echo = opt.finish();
  return {out.report, excess_csv(out.triples)};
}

PipelineResult scan_critical(const MeasuredSpace& ms, Options& opt) {
  const auto& space = ms.space();
  const Index center = center_of(ms, opt);
  const auto seed = opt.get<std::uint64_t>("seed", 0);
  double kappa = 0.0;
  if (auto k = opt.optional<double>("kappa")) {
    kappa = *k;
  } else if (auto known = known_curvature_bound(ms)) {
    kappa = *known;
    opt.set_echo("kappa", kappa);
  } else {
    kappa = estimate_curvature_bound(space, 1000, seed).bound;
    opt.set_echo("kappa", kappa);
  }
  CriticalScanOptions so;
  so.tol = opt.get("tolerance", kDefaultCriticalityTolerance);
  so.annulus_radius = opt.get("annulus_radius", 5.0 * space.net_resolution());
  so.band = opt.get("band", space.net_resolution());

  const double trusted = trusted_radius(ms, center);
  std::vector<double> grid;
  if (auto radii = opt.optional<std::vector<double>>("radii")) {
    grid = *radii;
  } else {
    const auto count = opt.get<std::size_t>("radius_count", 8);
    const double lo = opt.get("r_min", std::max(0.25 * trusted, 4.0 * space.net_resolution()));
    const double hi = opt.get("r_max", trusted - *so.annulus_radius);
    if (!(hi > lo) || count < 2) throw DomainError("radius grid is empty");
    for (std::size_t i = 0; i < count; ++i) {
      grid.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    opt.set_echo("radii", grid);
  }
  const CriticalScanReport scan = critical_scan(ms, kappa, center, grid, so);

  Json placement_cfg = opt.sub("placement");
  std::vector<VerificationReport> parts{scan.to_report()};
  if (!placement_cfg.contains("enabled") || placement_cfg.at("enabled").get<bool>()) {
    const double C = placement_cfg.value("C", 2.0);
    const double eps = placement_cfg.value("eps", 0.25);
    const double r = placement_cfg.value("r", trusted / (2.0 * C));
    auto pr = geodesic_placement_check(ms, center, C, eps, r, seed);
    opt.set_echo("placement", {{"C", C}, {"eps", eps}, {"r", r}});
    parts.push_back(std::move(pr));
  }
  VerificationReport rep = combine("scan-critical", parts);
  rep.config_echo = opt.finish();
  rep.seed = seed;
  rep.tolerance = so.tol;
  rep.details["summary"] = scan.summary();

  std::ostringstream csv;
  csv.precision(17);
  csv << "point,radius,max_angle\n";
  for (const auto& c : scan.critical_points) csv << c.point << ',' << c.radius << ',' << c.max_angle << '\n';
  return {rep, csv.str()};
}

PipelineResult verify_all(const MeasuredSpace& ms, Options& opt) {
  const auto seed = opt.get<std::uint64_t>("seed", 0);
  std::vector<VerificationReport> parts;
  Json echo = Json::object();
  for (const char* name : {"check-curvature", "check-bg", "check-excess", "scan-critical"}) {
    Json sub = opt.sub(name);
    if (!sub.contains("seed")) sub["seed"] = seed;
    PipelineResult r = run_pipeline(ms, name, sub);
    echo[name] = r.report.config_echo;
    parts.push_back(std::move(r.report));
  }
  VerificationReport rep = combine("verify-all", parts);
  opt.finish();
  echo["seed"] = seed;
  rep.config_echo = echo;
  rep.seed = seed;
  return {rep, {}};
}

}  // namespace

const std::vector<std::string>& pipeline_names() {
  static const std::vector<std::string> names{"inspect",      "check-curvature", "check-bg",
                                              "check-excess", "scan-critical",   "verify-all"};
  return names;
}

PipelineResult run_pipeline(const MeasuredSpace& ms, std::string_view pipeline, const Json& config) {
  Options opt(config);
  if (pipeline == "inspect") return inspect(ms, opt);
  if (pipeline == "check-curvature") return check_curvature(ms, opt);
  if (pipeline == "check-bg") return check_bg(ms, opt);
  if (pipeline == "check-excess") return check_excess(ms, opt);
  if (pipeline == "scan-critical") return scan_critical(ms, opt);
  if (pipeline == "verify-all") return verify_all(ms, opt);
  throw InputError("unknown pipeline '" + std::string(pipeline) + "'");
}

VerificationReport thresholds_report(const Json& config) {
  Options opt(config);
  const auto seed = opt.get<std::uint64_t>("seed", 0);
  const int n = opt.get("n", 2);
  const double kappa = opt.get("kappa", 1.0);
  const auto eps = opt.optional<double>("eps");
  const double C = opt.get("C", 2.0);
  const auto Cbar = opt.optional<double>("Cbar");
  std::vector<double> radii;
  if (auto r = opt.optional<std::vector<double>>("radii")) {
    radii = *r;
  } else {
    for (int i = 0; i <= 50; ++i) radii.push_back(0.1 * std::pow(1e4, i / 50.0));
  }
  const TheoremConstants tc = theorem_constants(n, kappa, eps);

  VerificationReport rep;
  rep.pipeline = "thresholds";
  rep.config_echo = opt.finish();
  rep.seed = seed;
  rep.tolerance = 0.0;
  rep.details["n"] = n;
  rep.details["kappa"] = kappa;
  rep.details["epsilon_max"] = tc.epsilon_max;
  rep.details["epsilon"] = tc.epsilon;
  rep.details["alpha_min"] = tc.alpha_min;
  rep.details["alpha_limit"] = tc.alpha_limit;
  rep.details["gamma_threshold"] = gamma_threshold(tc.epsilon, C, n);
  if (Cbar) rep.details["gamma_intermediate"] = gamma_threshold(tc.epsilon, C, n, *Cbar);
  rep.details["excess_lower_bound_infimum"] = std::log(2.0) / kappa;
  rep.details["excess_upper_bound"] = 8.0 * std::pow(tc.epsilon, n / (n - 1.0));
  Json margins = Json::array();
  for (double R : radii) {
    const double m = contradiction_margin(n, kappa, tc.epsilon, R);
    rep.record(m);
    margins.push_back({{"R", R}, {"margin", m}});
    if (!(m > 0.0)) rep.add_violation({{"R", R}, {"margin", m}});
  }
  rep.details["contradiction_margins"] = margins;
  rep.conclude();
  return rep;
}

}  // namespace cglab
