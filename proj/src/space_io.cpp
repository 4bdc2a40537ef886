// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cglab/space_io.hpp"

#include <fstream>
#include <sstream>

#include "cglab/errors.hpp"

namespace cglab {

namespace {

template <class T>
T get_or(const Json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const Json::exception&) {
    throw InputError(std::string("field '") + key + "' has the wrong type");
  }
}

const Json& require_field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InputError(std::string("missing field '") + key + "'");
  }
  return obj.at(key);
}

}  // namespace

SpaceSpec spec_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("generator must be an object");
  SpaceSpec spec;
  spec.kind = parse_space_kind(require_field(j, "kind").get<std::string>());
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  if (!params.is_object()) throw InputError("generator params must be an object");
  static const char* const kKnown[] = {"dimension", "radius", "rho", "half_height",
                                       "kappa", "a", "tube"};
  for (auto it = params.begin(); it != params.end(); ++it) {
    if (std::find(std::begin(kKnown), std::end(kKnown), it.key()) == std::end(kKnown)) {
      throw InputError("unknown generator parameter '" + it.key() + "'");
    }
  }
  spec.dimension = get_or(params, "dimension", spec.dimension);
  spec.radius = get_or(params, "radius", spec.radius);
  spec.rho = get_or(params, "rho", spec.rho);
  spec.half_height = get_or(params, "half_height", spec.half_height);
  spec.kappa = get_or(params, "kappa", spec.kappa);
  spec.paraboloid_a = get_or(params, "a", spec.paraboloid_a);
  if (params.contains("tube") && !params.at("tube").is_null()) {
    const Json& tube = params.at("tube");
    spec.tube = TubeRegion{get_or(tube, "half_length", 0.0), get_or(tube, "half_width", 0.0)};
  }
  return spec;
}

Json spec_to_json(const SpaceSpec& spec) {
  Json params = Json::object();
  switch (spec.kind) {
    case SpaceKind::EuclideanBall:
      params["dimension"] = spec.dimension;
      params["radius"] = spec.radius;
      break;
    case SpaceKind::ConeOverCircle:
      params["rho"] = spec.rho;
      params["radius"] = spec.radius;
      break;
    case SpaceKind::FlatCylinder:
      params["rho"] = spec.rho;
      params["half_height"] = spec.half_height;
      break;
    case SpaceKind::HyperbolicDisk:
      params["kappa"] = spec.kappa;
      params["radius"] = spec.radius;
      if (spec.tube) {
        params["tube"] = {{"half_length", spec.tube->half_length},
                          {"half_width", spec.tube->half_width}};
      }
      break;
    case SpaceKind::ParaboloidPatch:
      params["a"] = spec.paraboloid_a;
      params["radius"] = spec.radius;
      break;
  }
  return {{"kind", std::string(to_string(spec.kind))}, {"params", params}};
}

Json space_to_json(const MeasuredSpace& ms, const std::string& name,
                   std::optional<std::uint64_t> seed) {
  const auto& space = ms.space();
  Json j;
  j["name"] = name;
  j["n"] = ms.dimension();
  const bool graph = space.backing() == Backing::Graph;
  j["backing"] = graph ? "graph" : "exact";
  j["points"] = space.coordinates();
  if (graph) {
    Json edges = Json::array();
    for (const auto& e : space.path_edges()) edges.push_back(Json::array({e.u, e.v, e.weight}));
    j["edges"] = std::move(edges);
  }
  j["weights"] = ms.weights();
  j["basepoint"] = ms.basepoint();
  if (const AnalyticSpace* gen = ms.generator()) {
    Json g = spec_to_json(gen->spec());
    g["n_points"] = space.size();
    if (seed) g["seed"] = *seed;
    j["generator"] = std::move(g);
  }
  return j;
}

SpaceDocument space_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("space document must be a JSON object");
  try {
    const std::string name = get_or<std::string>(j, "name", "space");
    const int n = get_or(j, "n", 2);
    const std::string backing = require_field(j, "backing").get<std::string>();
    auto points = get_or<std::vector<Point>>(j, "points", {});
    auto weights = require_field(j, "weights").get<std::vector<double>>();
    const Index basepoint = get_or<Index>(j, "basepoint", 0);

    std::shared_ptr<const AnalyticSpace> generator;
    std::optional<std::uint64_t> seed;
    if (j.contains("generator") && !j.at("generator").is_null()) {
      generator = std::make_shared<const AnalyticSpace>(spec_from_json(j.at("generator")));
      if (j.at("generator").contains("seed")) seed = j.at("generator").at("seed").get<std::uint64_t>();
    }

    if (backing == "exact") {
      if (!generator || !generator->has_exact_metric()) {
        throw InputError("exact backing requires a generator with a closed-form metric");
      }
      for (const auto& p : points) {
        if (p.size() != generator->coordinate_count()) throw InputError("point has the wrong dimension");
      }
      auto base = FiniteMetricSpace::from_exact(std::move(points), generator, n);
      return {name, MeasuredSpace(std::move(base), std::move(weights), n, generator, basepoint), seed};
    }
    if (backing == "graph") {
      std::vector<WeightedEdge> edges;
      for (const auto& e : require_field(j, "edges")) {
        if (!e.is_array() || e.size() != 3) throw InputError("edges must be [i, j, w] triples");
        const auto u = e[0].get<std::int64_t>();
        const auto v = e[1].get<std::int64_t>();
        if (u < 0 || v < 0) throw InputError("edge endpoint out of range");
        edges.push_back({static_cast<Index>(u), static_cast<Index>(v), e[2].get<double>()});
      }
      const std::size_t count = weights.size();
      if (!points.empty() && points.size() != count) throw InputError("point and weight counts differ");
      auto base = FiniteMetricSpace::from_graph(count, edges, n, std::move(points));
      return {name, MeasuredSpace(std::move(base), std::move(weights), n, generator, basepoint), seed};
    }
    throw InputError("backing must be \"exact\" or \"graph\"");
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed space document: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw InputError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

SpaceDocument load_space(const std::filesystem::path& path) { return space_from_json(read_json_file(path)); }

void save_space(const std::filesystem::path& path, const MeasuredSpace& ms, const std::string& name,
                std::optional<std::uint64_t> seed) {
  write_text_file(path, dump_report(space_to_json(ms, name, seed)));
}

SpaceDocument generate_space(const Json& generator, std::size_t n_points, std::uint64_t seed) {
  const AnalyticSpace space = make_space(spec_from_json(generator));
  std::string name = std::string(to_string(space.kind()));
  return {name, sample(space, n_points, seed), seed};
}

}  // namespace cglab
