// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line driver for the cglab verification pipelines.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cglab/cglab.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitViolations = 1;
constexpr int kExitError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LibraryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(cglab_status status) {
  if (status != CGLAB_OK) throw LibraryError(cglab_last_error());
}

// Owns a string returned by the library.
struct LibString {
  char* ptr = nullptr;
  ~LibString() { cglab_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

struct SpaceDeleter {
  void operator()(cglab_space* s) const { cglab_space_free(s); }
};
using SpaceHandle = std::unique_ptr<cglab_space, SpaceDeleter>;

// Values given on the command line; unset fields fall back to the config file.
struct Flags {
  std::string config_path;
  std::optional<std::string> input;
  std::optional<std::string> out;
  std::optional<std::string> csv;
  std::optional<std::string> space;
  std::optional<std::uint64_t> points;
  std::optional<std::uint64_t> seed;
  std::map<std::string, double> space_params;
  std::map<std::string, double> tube;
  Json options = Json::object();
  std::vector<std::string> assignments;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("invalid JSON in " + path + ": " + e.what());
  }
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
  if (!path || *path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + *path);
  out << text;
  if (!out) throw std::ios_base::failure("write failed for " + *path);
}

// key=value with value parsed as JSON when possible.
void apply_assignment(Json& options, const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value, got '" + text + "'");
  const std::string key = text.substr(0, eq);
  const std::string raw = text.substr(eq + 1);
  Json value;
  try {
    value = Json::parse(raw);
  } catch (const Json::parse_error&) {
    value = raw;
  }
  // Dotted keys address nested objects, e.g. placement.C=3.
  Json* node = &options;
  std::string rest = key;
  for (auto dot = rest.find('.'); dot != std::string::npos; dot = rest.find('.')) {
    Json& child = (*node)[rest.substr(0, dot)];
    if (child.is_null()) child = Json::object();
    if (!child.is_object()) throw UsageError("--set: '" + key + "' crosses a non-object value");
    node = &child;
    rest = rest.substr(dot + 1);
  }
  (*node)[rest] = std::move(value);
}

struct Resolved {
  Json generator;
  std::optional<std::string> input;
  std::uint64_t points = 2000;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  std::optional<std::string> csv;
  Json options = Json::object();
};

std::optional<std::string> string_field(const Json& cfg, const char* key, const std::filesystem::path& base) {
  if (!cfg.contains(key) || cfg.at(key).is_null()) return std::nullopt;
  std::filesystem::path p = cfg.at(key).get<std::string>();
  if (p.is_relative() && !base.empty()) p = base / p;
  return p.string();
}

Resolved resolve(const Flags& flags) {
  Json cfg = Json::object();
  std::filesystem::path base;
  if (!flags.config_path.empty()) {
    cfg = read_json(flags.config_path);
    if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");
    base = std::filesystem::path(flags.config_path).parent_path();
    static const char* const kKnown[] = {"space", "input", "points", "seed", "out", "csv", "options"};
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
      if (std::find(std::begin(kKnown), std::end(kKnown), it.key()) == std::end(kKnown)) {
        throw UsageError("unknown config file key '" + it.key() + "'");
      }
    }
  }
  Resolved r;
  try {
    r.generator = cfg.value("space", Json());
    r.input = string_field(cfg, "input", base);
    r.points = cfg.value("points", r.points);
    r.seed = cfg.value("seed", r.seed);
    r.out = string_field(cfg, "out", base);
    r.csv = string_field(cfg, "csv", base);
    r.options = cfg.value("options", Json::object());
  } catch (const Json::exception& e) {
    throw UsageError(std::string("config file: ") + e.what());
  }
  if (!r.options.is_object()) throw UsageError("config file: options must be an object");

  if (flags.input && flags.space) throw UsageError("give either --input or --space, not both");
  if (flags.input) {
    r.input = flags.input;
    r.generator = Json();
  }
  if (flags.space) r.input.reset();
  if (flags.out) r.out = flags.out;
  if (flags.csv) r.csv = flags.csv;
  if (flags.points) r.points = *flags.points;
  if (flags.seed) r.seed = *flags.seed;

  if (flags.space) {
    if (!r.generator.is_object() || r.generator.value("kind", "") != *flags.space) {
      r.generator = Json{{"kind", *flags.space}, {"params", Json::object()}};
    }
  }
  if (!flags.space_params.empty() || !flags.tube.empty()) {
    if (!r.generator.is_object()) throw UsageError("space parameters given without --space");
    Json& params = r.generator["params"];
    if (params.is_null()) params = Json::object();
    for (const auto& [k, v] : flags.space_params) params[k] = v;
    if (!flags.tube.empty()) {
      Json& tube = params["tube"];
      if (!tube.is_object()) tube = Json::object();
      for (const auto& [k, v] : flags.tube) tube[k] = v;
    }
  }
  for (auto it = flags.options.begin(); it != flags.options.end(); ++it) r.options[it.key()] = it.value();
  for (const auto& a : flags.assignments) apply_assignment(r.options, a);
  return r;
}

SpaceHandle obtain_space(const Resolved& r) {
  cglab_space* raw = nullptr;
  if (r.input) {
    if (r.generator.is_object()) throw UsageError("config gives both a space and an input file");
    check(cglab_space_load(r.input->c_str(), &raw));
  } else {
    if (!r.generator.is_object()) throw UsageError("no space given: use --space or --input");
    check(cglab_space_generate(r.generator.dump().c_str(), r.points, r.seed, &raw));
  }
  return SpaceHandle(raw);
}

int exit_code(cglab_verdict v) {
  if (v == CGLAB_VERDICT_FAIL) return kExitViolations;
  if (v == CGLAB_VERDICT_INCONCLUSIVE || v == CGLAB_VERDICT_EXCLUDED) {
    std::cerr << "note: no violations found, but the result is "
              << (v == CGLAB_VERDICT_EXCLUDED ? "domain-excluded" : "inconclusive") << "\n";
  }
  return kExitPass;
}

int run_generate(const Resolved& r) {
  SpaceHandle space = obtain_space(r);
  LibString text;
  check(cglab_space_to_json(space.get(), &text.ptr));
  write_output(r.out, text.str());
  return kExitPass;
}

int run_pipeline(const std::string& name, const Resolved& r) {
  SpaceHandle space = obtain_space(r);
  Json options = r.options;
  if (!options.contains("seed")) options["seed"] = r.seed;
  LibString report;
  LibString csv;
  cglab_verdict verdict = CGLAB_VERDICT_INCONCLUSIVE;
  check(cglab_run_pipeline(space.get(), name.c_str(), options.dump().c_str(), &report.ptr,
                           &csv.ptr, &verdict));
  write_output(r.out, report.str());
  if (r.csv) write_output(r.csv, csv.str());
  return exit_code(verdict);
}

int run_thresholds(const Resolved& r) {
  if (r.input || r.generator.is_object()) throw UsageError("thresholds takes no space");
  Json options = r.options;
  if (!options.contains("seed")) options["seed"] = r.seed;
  LibString report;
  cglab_verdict verdict = CGLAB_VERDICT_INCONCLUSIVE;
  check(cglab_thresholds(options.dump().c_str(), &report.ptr, &verdict));
  write_output(r.out, report.str());
  return exit_code(verdict);
}

// Adds a numeric flag that lands in a map when given.
CLI::Option* numeric_into(CLI::App* app, const std::string& flag, std::map<std::string, double>& target,
                          const std::string& key, const std::string& help) {
  return app->add_option_function<double>(flag, [&target, key](double v) { target[key] = v; }, help);
}

template <class T>
void option_into(CLI::App* app, const std::string& flag, Json& target, const std::string& key,
                 const std::string& help) {
  app->add_option_function<T>(flag, [&target, key](const T& v) { target[key] = v; }, help);
}

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config_path, "JSON config file supplying defaults")->check(CLI::ExistingFile);
  app->add_option("--out,-o", f.out, "Report or space output path (default: stdout)");
  app->add_option("--seed", f.seed, "Random seed");
  app->add_option("--set", f.assignments, "Extra pipeline option as key=value (repeatable)");
}

void add_space(CLI::App* app, Flags& f) {
  app->add_option("--input,-i", f.input, "Space file in the JSON space format");
  app->add_option("--space", f.space, "Generator: euclidean, cone, cylinder, hyperbolic, paraboloid");
  app->add_option("-N,--points", f.points, "Number of sample points");
  numeric_into(app, "--dimension", f.space_params, "dimension", "Euclidean dimension")
      ->check(CLI::TypeValidator<int>())
      ->type_name("INT");
  numeric_into(app, "--radius", f.space_params, "radius", "Truncation radius R");
  numeric_into(app, "--rho", f.space_params, "rho", "Cone or cylinder parameter");
  numeric_into(app, "--half-height", f.space_params, "half_height", "Cylinder half height");
  numeric_into(app, "--space-kappa", f.space_params, "kappa", "Hyperbolic curvature (< 0)");
  numeric_into(app, "--paraboloid-a", f.space_params, "a", "Paraboloid coefficient");
  numeric_into(app, "--tube-half-length", f.tube, "half_length", "Hyperbolic tube half length");
  numeric_into(app, "--tube-half-width", f.tube, "half_width", "Hyperbolic tube half width");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--radii", "not a number: '" + item + "'");
    }
  }
  return out;
}

void add_radii(CLI::App* app, Flags& f) {
  app->add_option_function<std::string>(
      "--radii", [&f](const std::string& s) { f.options["radii"] = parse_list(s); },
      "Comma-separated radii");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cglab: numerical checks for comparison geometry on sampled metric spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cglab_version()));
  Flags f;

  auto* gen = app.add_subcommand("generate", "Sample a space and write it in the JSON space format");
  add_common(gen, f);
  add_space(gen, f);

  auto* inspect = app.add_subcommand("inspect", "Summarise a space");
  add_common(inspect, f);
  add_space(inspect, f);
  option_into<std::int64_t>(inspect, "--center", f.options, "center", "Centre point index");

  auto* curv = app.add_subcommand("check-curvature", "Quadruple test for a lower curvature bound");
  add_common(curv, f);
  add_space(curv, f);
  option_into<double>(curv, "--kappa", f.options, "kappa", "Curvature bound to test");
  option_into<std::uint64_t>(curv, "--samples", f.options, "samples", "Number of quadruples");
  option_into<double>(curv, "--k-max", f.options, "k_max", "Upper limit of the bound search");
  option_into<double>(curv, "--tolerance", f.options, "tolerance", "Angle-sum tolerance");
  curv->add_option("--csv", f.csv, "CSV dump of violating quadruples");

  auto* bg = app.add_subcommand("check-bg", "Bishop-Gromov volume comparison");
  add_common(bg, f);
  add_space(bg, f);
  option_into<std::int64_t>(bg, "--center", f.options, "center", "Centre point index");
  option_into<std::uint64_t>(bg, "--bins", f.options, "bins", "Number of radial bins");
  option_into<double>(bg, "--tolerance", f.options, "tolerance", "Relative profile tolerance");
  option_into<double>(bg, "--ratio-tolerance", f.options, "ratio_tolerance", "Ball-ratio tolerance");
  option_into<double>(bg, "--r1", f.options, "r1", "Inner ball radius");
  option_into<double>(bg, "--r2", f.options, "r2", "Outer ball radius");
  bg->add_option("--csv", f.csv, "CSV dump of the radial profile");

  auto* ex = app.add_subcommand("check-excess", "Excess estimate on sampled triples");
  add_common(ex, f);
  add_space(ex, f);
  option_into<std::uint64_t>(ex, "--triples", f.options, "triples", "Admissible triples to test");
  option_into<double>(ex, "--min-s", f.options, "min_s", "Minimum s");
  option_into<double>(ex, "--min-h", f.options, "min_h", "Minimum h");
  option_into<double>(ex, "--max-h", f.options, "max_h", "Maximum h (0 = none)");
  option_into<double>(ex, "--delta", f.options, "delta", "Discretisation allowance");
  ex->add_option("--csv", f.csv, "CSV dump of tested triples");

  auto* scan = app.add_subcommand("scan-critical", "Scan for critical points of the distance function");
  add_common(scan, f);
  add_space(scan, f);
  option_into<double>(scan, "--kappa", f.options, "kappa", "Comparison curvature");
  option_into<double>(scan, "--tolerance", f.options, "tolerance", "Criticality tolerance");
  option_into<double>(scan, "--annulus-radius", f.options, "annulus_radius", "Annulus radius");
  option_into<double>(scan, "--band", f.options, "band", "Shell half width");
  add_radii(scan, f);
  scan->add_option("--csv", f.csv, "CSV dump of critical points");

  auto* thr = app.add_subcommand("thresholds", "Theorem constants and contradiction margins");
  add_common(thr, f);
  option_into<int>(thr, "--n", f.options, "n", "Dimension");
  option_into<double>(thr, "--kappa", f.options, "kappa", "Curvature (> 0)");
  option_into<double>(thr, "--eps", f.options, "eps", "Epsilon (default 0.99 of the maximum)");
  option_into<double>(thr, "--C", f.options, "C", "Constant C");
  option_into<double>(thr, "--Cbar", f.options, "Cbar", "Intermediate constant");
  add_radii(thr, f);

  auto* all = app.add_subcommand("verify-all", "Run every space pipeline");
  add_common(all, f);
  add_space(all, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    const Resolved r = resolve(f);
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "generate") return run_generate(r);
    if (name == "thresholds") return run_thresholds(r);
    return run_pipeline(name, r);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
