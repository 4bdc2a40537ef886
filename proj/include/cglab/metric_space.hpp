// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace cglab {

using Index = std::uint32_t;
using Point = std::vector<double>;

struct WeightedEdge {
  Index u = 0;
  Index v = 0;
  double weight = 0.0;
};

/// A closed-form distance on coordinate tuples.
class ExactMetric {
 public:
  virtual ~ExactMetric() = default;
  virtual double distance(std::span<const double> x, std::span<const double> y) const = 0;
};

enum class Backing { Exact, Graph };

/// Single-source shortest paths over the path graph of a space.
struct ShortestPathTree {
  Index source = 0;
  std::vector<double> dist;
  std::vector<Index> parent;  ///< parent[source] == source
  std::vector<Index> order;   ///< settle order; every parent precedes its children

  /// Vertex sequence source, ..., target.
  std::vector<Index> path_to(Index target) const;
};

/// A distance-realizing vertex path.
struct Geodesic {
  std::vector<Index> vertices;
  double length = 0.0;
};

/// Finite metric space: point set plus an exact closed-form metric or the
/// shortest-path metric of a weighted graph.
///
/// Every space carries a "path graph" used to realize geodesics as vertex
/// sequences. For graph-backed spaces it is the input graph itself, so
/// geodesic lengths equal distances exactly. Exact-backed spaces use a
/// symmetric k-nearest-neighbour graph with exact edge lengths, and
/// geodesics approximate the true ones at the net scale.
///
/// Immutable after construction; copies share state. Shortest-path trees are
/// computed on demand and cached (all rows for spaces up to 4000 points,
/// a bounded FIFO beyond that). All methods are safe to call concurrently.
class FiniteMetricSpace {
 public:
  static constexpr std::size_t kFullCacheLimit = 4000;
  static constexpr std::size_t kDefaultNeighbors = 16;

  /// Shortest-path metric of a connected graph with positive weights.
  /// Throws InputError on bad indices, nonpositive weights or disconnection.
  static FiniteMetricSpace from_graph(std::size_t vertex_count, std::span<const WeightedEdge> edges,
                                      int dimension_hint = 2, std::vector<Point> coordinates = {});

  /// Exact metric on the given coordinates.
  static FiniteMetricSpace from_exact(std::vector<Point> coordinates,
                                      std::shared_ptr<const ExactMetric> metric,
                                      int dimension_hint = 2,
                                      std::size_t neighbor_count = kDefaultNeighbors);

  std::size_t size() const;
  Backing backing() const;
  int dimension_hint() const;
  const std::vector<Point>& coordinates() const;
  const std::vector<WeightedEdge>& path_edges() const;
  const ExactMetric* exact_metric() const;

  double distance(Index i, Index j) const;
  std::vector<double> distances_from(Index i) const;

  std::shared_ptr<const ShortestPathTree> shortest_path_tree(Index source) const;

  /// Distance-realizing path in the path graph; ties go to the smallest
  /// predecessor index. Rooted at min(p, q) so geodesic(p,q) and
  /// geodesic(q,p) traverse the same vertices.
  Geodesic geodesic(Index p, Index q) const;

  /// Mean nearest-neighbour distance: the resolution of the sample.
  double net_resolution() const;

  /// Default tolerance of comparison tests: 1e-6 for exact metrics,
  /// 3 * net_resolution for graph metrics.
  double default_tolerance() const;

 private:
  struct Impl;
  explicit FiniteMetricSpace(std::shared_ptr<Impl> impl);
  std::shared_ptr<Impl> impl_;
};

FiniteMetricSpace build_from_graph(std::size_t vertex_count, std::span<const WeightedEdge> edges,
                                   int dimension_hint = 2);

Geodesic geodesic(const FiniteMetricSpace& space, Index p, Index q);

// -- Alexandrov quadruple condition -----------------------------------------

struct Quadruple {
  Index p = 0;
  Index a = 0;
  Index b = 0;
  Index c = 0;
};

/// The six pairwise distances of a quadruple.
struct QuadrupleDistances {
  double pa, pb, pc, ab, bc, ca;
};

QuadrupleDistances quadruple_distances(const FiniteMetricSpace& space, const Quadruple& q);

/// 2 pi minus the three comparison angles at p. The quadruple passes the
/// curvature >= kappa test when the defect is >= -tolerance.
/// Throws DomainError for coincident points or triangles the kappa-plane
/// cannot hold.
double quadruple_defect(const FiniteMetricSpace& space, double kappa, Index p, Index a, Index b,
                        Index c);
double quadruple_defect(double kappa, const QuadrupleDistances& d);

/// Like quadruple_defect but returns -inf where the kappa-plane has no
/// comparison triangle (kappa > 0 and the triangle is too large): such a
/// quadruple refutes curvature >= kappa.
double quadruple_defect_or_refuted(double kappa, const QuadrupleDistances& d);

/// Seeded quadruples of distinct points. On graph-backed spaces p, a, b come
/// from a pool of 64 hub vertices so only hub rows need shortest paths.
std::vector<Quadruple> sample_quadruples(const FiniteMetricSpace& space, std::size_t count,
                                         std::uint64_t seed);

struct QuadrupleTestResult {
  double kappa = 0.0;
  double tolerance = 0.0;
  std::size_t tested = 0;
  std::size_t violations = 0;
  double worst_defect = 0.0;
  std::optional<Quadruple> worst;
  std::vector<std::pair<Quadruple, double>> examples;  ///< first violating quadruples
};

QuadrupleTestResult test_quadruples(const FiniteMetricSpace& space, double kappa,
                                    std::span<const Quadruple> quadruples, double tolerance);

struct CurvatureEstimate {
  double bound = 0.0;
  double k_max = 0.0;
  double tolerance = 0.0;
  std::size_t quadruples = 0;
  bool at_upper_limit = false;  ///< every quadruple passes at +k_max
  bool at_lower_limit = false;  ///< some quadruple fails even at -k_max
};

/// Largest k in [-k_max, k_max] at which every sampled quadruple passes,
/// found by bisection (defects are monotone in k). Sampling can only refute:
/// the estimate is an upper bound on the true lower curvature bound up to
/// the sample. Throws DomainError for fewer than 4 points.
CurvatureEstimate estimate_curvature_bound(const FiniteMetricSpace& space, std::size_t sample_count,
                                           std::uint64_t seed, double k_max = 4.0,
                                           std::optional<double> tolerance = std::nullopt);

}  // namespace cglab
