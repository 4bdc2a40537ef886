// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cglab/report.hpp"

#include <algorithm>
#include <cmath>

namespace cglab {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Excluded: return "domain-excluded";
  }
  return "unknown";
}

void VerificationReport::record(double margin) {
  ++items_tested;
  if (!worst_margin || margin < *worst_margin) worst_margin = margin;
}

void VerificationReport::add_violation(Json entry) {
  ++violation_count;
  if (violations.size() < kMaxListedViolations) violations.push_back(std::move(entry));
}

void VerificationReport::conclude() {
  if (violation_count > 0) {
    verdict = Verdict::Fail;
  } else if (items_tested == 0) {
    verdict = Verdict::Inconclusive;
  } else {
    verdict = Verdict::Pass;
  }
}

namespace {

// Non-finite numbers have no JSON form.
Json number_or_string(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

Json VerificationReport::to_json() const {
  Json j;
  j["config_echo"] = config_echo;
  j["details"] = details;
  j["items_tested"] = items_tested;
  j["pipeline"] = pipeline;
  j["seed"] = seed;
  j["tolerance"] = number_or_string(tolerance);
  j["verdict"] = std::string(to_string(verdict));
  j["violation_count"] = violation_count;
  j["violations"] = violations;
  j["warnings"] = warnings;
  j["worst_margin"] = worst_margin ? number_or_string(*worst_margin) : Json(nullptr);
  return j;
}

VerificationReport combine(std::string pipeline, const std::vector<VerificationReport>& parts) {
  VerificationReport all;
  all.pipeline = std::move(pipeline);
  Json children = Json::array();
  bool inconclusive = false;
  bool excluded = false;
  for (const auto& r : parts) {
    all.items_tested += r.items_tested;
    all.violation_count += r.violation_count;
    for (const auto& v : r.violations) {
      if (all.violations.size() >= VerificationReport::kMaxListedViolations) break;
      Json tagged = v;
      tagged["pipeline"] = r.pipeline;
      all.violations.push_back(std::move(tagged));
    }
    if (r.worst_margin && (!all.worst_margin || *r.worst_margin < *all.worst_margin)) {
      all.worst_margin = r.worst_margin;
    }
    for (const auto& w : r.warnings) all.warnings.push_back(r.pipeline + ": " + w);
    inconclusive = inconclusive || r.verdict == Verdict::Inconclusive;
    excluded = excluded || r.verdict == Verdict::Excluded;
    all.seed = r.seed;
    children.push_back(r.to_json());
  }
  all.details["reports"] = std::move(children);
  all.conclude();
  if (all.verdict == Verdict::Pass && (inconclusive || excluded)) all.verdict = Verdict::Inconclusive;
  return all;
}

namespace {

Json sorted(const Json& j) {
  if (j.is_object()) {
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    std::sort(keys.begin(), keys.end());
    Json out = Json::object();
    for (const auto& k : keys) out[k] = sorted(j.at(k));
    return out;
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& x : j) out.push_back(sorted(x));
    return out;
  }
  return j;
}

}  // namespace

std::string dump_report(const Json& report) { return sorted(report).dump(2) + "\n"; }

}  // namespace cglab
