// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cglab/measured_space.hpp"
#include "cglab/report.hpp"

namespace cglab {

struct PipelineResult {
  VerificationReport report;
  std::string csv;  ///< empty when the pipeline has no table output
};

/// Names accepted by run_pipeline: inspect, check-curvature, check-bg,
/// check-excess, scan-critical, verify-all.
const std::vector<std::string>& pipeline_names();

/// Runs a named pipeline with a JSON config object (unknown keys are
/// rejected). The effective config, defaults included, is echoed in the
/// report. Throws InputError for unknown pipelines or bad config and
/// DomainError for out-of-domain parameters.
PipelineResult run_pipeline(const MeasuredSpace& ms, std::string_view pipeline, const Json& config);

/// Theorem constants report from {n, kappa, eps?, C?, Cbar?, radii?}.
/// Passes when the contradiction margin is positive on every radius.
VerificationReport thresholds_report(const Json& config);

}  // namespace cglab
