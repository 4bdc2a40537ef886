// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "cglab/generators.hpp"
#include "cglab/measured_space.hpp"
#include "cglab/report.hpp"

namespace cglab {

/// Generator description: {"kind": ..., "params": {...}}. Missing params
/// take SpaceSpec defaults. Throws InputError on unknown kinds or keys of
/// the wrong type.
SpaceSpec spec_from_json(const Json& j);
Json spec_to_json(const SpaceSpec& spec);

/// Space file document:
///   {name, n, backing: "exact"|"graph", points: [[...]], edges: [[i, j, w]] (graph only),
///    weights: [...], generator: {kind, params, n_points, seed} (optional)}
/// Exact backing needs the generator block to recover the metric.
struct SpaceDocument {
  std::string name;
  MeasuredSpace space;
  std::optional<std::uint64_t> seed;
};

Json space_to_json(const MeasuredSpace& ms, const std::string& name,
                   std::optional<std::uint64_t> seed = std::nullopt);

/// Throws InputError for malformed documents.
SpaceDocument space_from_json(const Json& j);

/// Throws IoError when the file cannot be read or written.
SpaceDocument load_space(const std::filesystem::path& path);
void save_space(const std::filesystem::path& path, const MeasuredSpace& ms, const std::string& name,
                std::optional<std::uint64_t> seed = std::nullopt);

/// Generates and names a sample from a generator description.
SpaceDocument generate_space(const Json& generator, std::size_t n_points, std::uint64_t seed);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace cglab
