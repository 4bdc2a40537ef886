// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cglab {

using Json = nlohmann::ordered_json;

enum class Verdict {
  Pass,          ///< every tested item satisfied the inequality
  Fail,          ///< at least one violation
  Inconclusive,  ///< not enough data to decide
  Excluded,      ///< the input lies outside the verified domain
};

std::string_view to_string(Verdict v);

/// Outcome of a batch check.
///
/// Margins are signed: positive means the inequality holds with room to
/// spare, negative means it is violated. worst_margin is the minimum over
/// tested items, absent when nothing was tested.
struct VerificationReport {
  static constexpr std::size_t kMaxListedViolations = 50;

  std::string pipeline;
  Json config_echo = Json::object();
  std::uint64_t seed = 0;
  std::size_t items_tested = 0;
  std::size_t violation_count = 0;
  std::vector<Json> violations;  ///< at most kMaxListedViolations entries
  std::optional<double> worst_margin;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Pass;
  std::vector<std::string> warnings;
  Json details = Json::object();

  bool passed() const { return verdict == Verdict::Pass; }

  /// Counts a tested item with its margin.
  void record(double margin);

  /// Counts a violation; the entry is kept while the list has room.
  void add_violation(Json entry);

  /// Sets the verdict from the counters: Fail with violations, Inconclusive
  /// when nothing was tested, Pass otherwise.
  void conclude();

  Json to_json() const;
};

/// Several reports merged under one pipeline name (verify-all).
VerificationReport combine(std::string pipeline, const std::vector<VerificationReport>& parts);

/// Serialization with keys sorted and numbers printed round-trip exact, so
/// equal reports are byte-identical.
std::string dump_report(const Json& report);

}  // namespace cglab
