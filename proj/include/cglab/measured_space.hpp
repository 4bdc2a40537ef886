// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <numeric>
#include <vector>

#include "cglab/metric_space.hpp"

namespace cglab {

class AnalyticSpace;

/// A finite metric space with per-point weights standing in for the
/// n-dimensional Hausdorff measure.
class MeasuredSpace {
 public:
  /// Throws InputError when the weight count is wrong, a weight is not
  /// positive, or n < 2.
  MeasuredSpace(FiniteMetricSpace base, std::vector<double> weights, int n,
                std::shared_ptr<const AnalyticSpace> generator = nullptr, Index basepoint = 0);

  const FiniteMetricSpace& space() const { return base_; }
  const std::vector<double>& weights() const { return weights_; }
  int dimension() const { return n_; }
  std::size_t size() const { return base_.size(); }
  double weight(Index i) const { return weights_[i]; }
  double total_weight() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

  /// Generator the sample was drawn from, if any.
  const AnalyticSpace* generator() const { return generator_.get(); }
  std::shared_ptr<const AnalyticSpace> generator_ptr() const { return generator_; }

  /// Index of the generator's distinguished point (0 for generated samples).
  Index basepoint() const { return basepoint_; }

 private:
  FiniteMetricSpace base_;
  std::vector<double> weights_;
  int n_;
  std::shared_ptr<const AnalyticSpace> generator_;
  Index basepoint_;
};

}  // namespace cglab
