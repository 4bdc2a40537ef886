// Copyright 2026 The cglab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cglab/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <mutex>
#include <numbers>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_map>

#include "cglab/errors.hpp"
#include "cglab/model_plane.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace cglab {

using Ticks = std::int64_t;

struct FiniteMetricSpace::Impl {
  Backing backing = Backing::Graph;
  int dimension_hint = 2;
  std::vector<Point> coords;
  std::shared_ptr<const ExactMetric> metric;
  std::vector<WeightedEdge> edges;

  // Path graph in CSR form. Weights are fixed-point ticks so that path sums
  // are exact: the shortest-path metric is exactly symmetric and ties are real.
  std::vector<std::size_t> offsets;
  std::vector<Index> targets;
  std::vector<Ticks> ticks;
  double scale = 1.0;  // ticks per unit length, a power of two

  double net_resolution = 0.0;

  mutable std::mutex cache_mutex;
  mutable std::unordered_map<Index, std::shared_ptr<const ShortestPathTree>> cache;
  mutable std::deque<Index> fifo;
  std::size_t cache_capacity = 0;

  void finalize(std::size_t n);

  std::size_t size() const { return backing == Backing::Exact ? coords.size() : offsets.size() - 1; }

  std::shared_ptr<const ShortestPathTree> cached(Index i) const {
    std::lock_guard lock(cache_mutex);
    auto it = cache.find(i);
    return it == cache.end() ? nullptr : it->second;
  }

  std::shared_ptr<const ShortestPathTree> tree(Index source) const {
    if (auto hit = cached(source)) return hit;
    auto fresh = std::make_shared<const ShortestPathTree>(dijkstra(source));
    std::lock_guard lock(cache_mutex);
    auto [it, inserted] = cache.emplace(source, fresh);
    if (inserted) {
      fifo.push_back(source);
      if (fifo.size() > cache_capacity) {
        cache.erase(fifo.front());
        fifo.pop_front();
      }
    }
    return it->second;
  }

  ShortestPathTree dijkstra(Index source) const {
    const std::size_t n = size();
    constexpr Ticks kInf = std::numeric_limits<Ticks>::max();
    std::vector<Ticks> d(n, kInf);
    std::vector<Index> parent(n, static_cast<Index>(n));
    std::vector<char> settled(n, 0);
    std::vector<Index> order;
    order.reserve(n);
    using Entry = std::pair<Ticks, Index>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    d[source] = 0;
    parent[source] = source;
    heap.emplace(0, source);
    while (!heap.empty()) {
      const auto [du, u] = heap.top();
      heap.pop();
      if (settled[u]) continue;
      settled[u] = 1;
      order.push_back(u);
      for (std::size_t e = offsets[u]; e < offsets[u + 1]; ++e) {
        const Index v = targets[e];
        if (settled[v]) continue;
        const Ticks nd = du + ticks[e];
        if (nd < d[v]) {
          d[v] = nd;
          parent[v] = u;
          heap.emplace(nd, v);
        } else if (nd == d[v] && u < parent[v]) {
          parent[v] = u;
        }
      }
    }
    ShortestPathTree tree;
    tree.source = source;
    tree.dist.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      tree.dist[i] = d[i] == kInf ? std::numeric_limits<double>::infinity()
                                  : static_cast<double>(d[i]) / scale;
    }
    tree.parent = std::move(parent);
    tree.order = std::move(order);
    return tree;
  }

  double distance(Index i, Index j) const {
    if (i == j) return 0.0;
    if (backing == Backing::Exact) {
      const Index lo = std::min(i, j);
      const Index hi = std::max(i, j);
      return metric->distance(coords[lo], coords[hi]);
    }
    if (auto t = cached(i)) return t->dist[j];
    if (auto t = cached(j)) return t->dist[i];
    return tree(std::min(i, j))->dist[std::max(i, j)];
  }
};

std::vector<Index> ShortestPathTree::path_to(Index target) const {
  if (target >= parent.size() || parent[target] >= parent.size()) {
    throw DomainError("geodesic: target unreachable from source");
  }
  std::vector<Index> path{target};
  Index v = target;
  while (v != source) {
    v = parent[v];
    path.push_back(v);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

bool connected(std::size_t n, const std::vector<WeightedEdge>& edges) {
  if (n == 0) return true;
  std::vector<std::vector<Index>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(n, 0);
  std::vector<Index> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const Index u = stack.back();
    stack.pop_back();
    for (Index v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

// Deduplicates undirected edges keeping the lightest copy; drops self loops.
std::vector<WeightedEdge> canonical_edges(std::vector<WeightedEdge> edges) {
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& x, const WeightedEdge& y) {
    return std::tie(x.u, x.v, x.weight) < std::tie(y.u, y.v, y.weight);
  });
  std::vector<WeightedEdge> out;
  out.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u == e.v) continue;
    if (!out.empty() && out.back().u == e.u && out.back().v == e.v) continue;
    out.push_back(e);
  }
  return out;
}

void spot_check_triangles(const FiniteMetricSpace& space, double relative_slack) {
  const std::size_t n = space.size();
  if (n < 3) return;
  detail::Rng rng(0x7a1eULL, n);
  std::vector<Index> hubs(n);
  for (std::size_t i = 0; i < n; ++i) hubs[i] = static_cast<Index>(i);
  rng.shuffle(hubs);
  hubs.resize(std::min<std::size_t>(32, n));
  if (hubs.size() < 2) return;
  const std::size_t trials = 10 * n;
  for (std::size_t t = 0; t < trials; ++t) {
    const Index a = hubs[rng.index(hubs.size())];
    Index b = hubs[rng.index(hubs.size())];
    if (a == b) continue;
    const Index x = static_cast<Index>(rng.index(n));
    if (x == a || x == b) continue;
    const double ab = space.distance(a, b);
    const double ax = space.distance(a, x);
    const double bx = space.distance(b, x);
    const double slack = relative_slack * (ab + ax + bx);
    if (ab > ax + bx + slack || ax > ab + bx + slack || bx > ab + ax + slack) {
      throw InputError("metric violates the triangle inequality at points " + std::to_string(a) +
                       ", " + std::to_string(b) + ", " + std::to_string(x));
    }
    if (ab < 0.0 || ax < 0.0 || bx < 0.0) {
      throw InputError("metric returned a negative distance");
    }
  }
}

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

void FiniteMetricSpace::Impl::finalize(std::size_t n) {
  auto& impl = *this;
  double total = 0.0;
  for (const auto& e : impl.edges) total += e.weight;
  // Largest power of two keeping every path sum below 2^61 ticks.
  const double budget = std::ldexp(1.0, 61);
  int exponent = static_cast<int>(std::floor(std::log2(budget / std::max(total, 1e-300))));
  exponent = std::min(exponent, 1000);
  impl.scale = std::ldexp(1.0, exponent);

  std::vector<std::size_t> degree(n + 1, 0);
  for (const auto& e : impl.edges) {
    ++degree[e.u];
    ++degree[e.v];
  }
  impl.offsets.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) impl.offsets[i + 1] = impl.offsets[i] + degree[i];
  impl.targets.assign(impl.offsets[n], 0);
  impl.ticks.assign(impl.offsets[n], 0);
  std::vector<std::size_t> cursor(impl.offsets.begin(), impl.offsets.end() - 1);
  for (const auto& e : impl.edges) {
    const Ticks t = std::max<Ticks>(1, std::llround(e.weight * impl.scale));
    impl.targets[cursor[e.u]] = e.v;
    impl.ticks[cursor[e.u]++] = t;
    impl.targets[cursor[e.v]] = e.u;
    impl.ticks[cursor[e.v]++] = t;
  }
  // Neighbour lists sorted by index keep relaxation order deterministic.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<Index, Ticks>> row;
    for (std::size_t e = impl.offsets[i]; e < impl.offsets[i + 1]; ++e) {
      row.emplace_back(impl.targets[e], impl.ticks[e]);
    }
    std::sort(row.begin(), row.end());
    for (std::size_t k = 0; k < row.size(); ++k) {
      impl.targets[impl.offsets[i] + k] = row[k].first;
      impl.ticks[impl.offsets[i] + k] = row[k].second;
    }
  }
  impl.cache_capacity = n <= FiniteMetricSpace::kFullCacheLimit ? n : 256;
}

FiniteMetricSpace FiniteMetricSpace::from_graph(std::size_t vertex_count,
                                                std::span<const WeightedEdge> edges,
                                                int dimension_hint,
                                                std::vector<Point> coordinates) {
  if (vertex_count == 0) throw InputError("graph has no vertices");
  if (vertex_count > std::numeric_limits<Index>::max() / 2) throw InputError("graph too large");
  if (dimension_hint < 1) throw InputError("dimension hint must be positive");
  if (!coordinates.empty() && coordinates.size() != vertex_count) {
    throw InputError("coordinate count does not match vertex count");
  }
  for (const auto& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) {
      throw InputError("edge endpoint out of range");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw InputError("edge weights must be positive and finite");
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->backing = Backing::Graph;
  impl->dimension_hint = dimension_hint;
  impl->coords = std::move(coordinates);
  impl->edges = canonical_edges({edges.begin(), edges.end()});
  if (!connected(vertex_count, impl->edges)) throw InputError("graph is disconnected");
  impl->finalize(vertex_count);

  if (vertex_count > 1) {
    std::vector<double> nearest(vertex_count, std::numeric_limits<double>::infinity());
    for (const auto& e : impl->edges) {
      nearest[e.u] = std::min(nearest[e.u], e.weight);
      nearest[e.v] = std::min(nearest[e.v], e.weight);
    }
    double sum = 0.0;
    for (double x : nearest) sum += x;
    impl->net_resolution = sum / static_cast<double>(vertex_count);
  }
  FiniteMetricSpace space(std::move(impl));
  spot_check_triangles(space, 1e-12);
  return space;
}

FiniteMetricSpace FiniteMetricSpace::from_exact(std::vector<Point> coordinates,
                                                std::shared_ptr<const ExactMetric> metric,
                                                int dimension_hint, std::size_t neighbor_count) {
  if (!metric) throw InputError("exact space requires a metric");
  if (coordinates.empty()) throw InputError("space has no points");
  if (dimension_hint < 1) throw InputError("dimension hint must be positive");
  const std::size_t n = coordinates.size();
  if (n > std::numeric_limits<Index>::max() / 2) throw InputError("space too large");

  auto impl = std::make_shared<Impl>();
  impl->backing = Backing::Exact;
  impl->dimension_hint = dimension_hint;
  impl->coords = std::move(coordinates);
  impl->metric = std::move(metric);

  // Neighbour rows: (distance, index) sorted, computed once.
  std::size_t k = std::min(std::max<std::size_t>(neighbor_count, 1), n - 1);
  std::vector<std::vector<std::pair<double, Index>>> rows(n);
  const std::size_t keep = std::min(n - 1, std::max<std::size_t>(4 * k, 64));
  detail::parallel_for(n, [&](std::size_t i) {
    std::vector<std::pair<double, Index>> row;
    row.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      row.emplace_back(impl->distance(static_cast<Index>(i), static_cast<Index>(j)),
                       static_cast<Index>(j));
    }
    if (keep < row.size()) {
      std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(keep), row.end());
      row.resize(keep);
    }
    std::sort(row.begin(), row.end());
    rows[i] = std::move(row);
  });

  if (n > 1) {
    double sum = 0.0;
    for (const auto& row : rows) {
      if (!(row.front().first > 0.0)) throw InputError("space contains coincident points");
      sum += row.front().first;
    }
    impl->net_resolution = sum / static_cast<double>(n);
  }

  // Grow k until the k-nearest-neighbour graph is connected.
  while (true) {
    std::vector<WeightedEdge> edges;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t r = 0; r < std::min(k, rows[i].size()); ++r) {
        edges.push_back({static_cast<Index>(i), rows[i][r].second, rows[i][r].first});
      }
    }
    edges = canonical_edges(std::move(edges));
    if (connected(n, edges) || k >= n - 1) {
      if (!connected(n, edges)) {
        // Rows were truncated; fall back to the complete graph.
        edges.clear();
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = i + 1; j < n; ++j) {
            edges.push_back({static_cast<Index>(i), static_cast<Index>(j),
                             impl->distance(static_cast<Index>(i), static_cast<Index>(j))});
          }
        }
      }
      impl->edges = std::move(edges);
      break;
    }
    if (2 * k > keep) {
      // Recompute longer rows.
      k = std::min(2 * k, n - 1);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::pair<double, Index>> row;
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) {
            row.emplace_back(impl->distance(static_cast<Index>(i), static_cast<Index>(j)),
                             static_cast<Index>(j));
          }
        }
        std::sort(row.begin(), row.end());
        rows[i] = std::move(row);
      }
    } else {
      k = std::min(2 * k, n - 1);
    }
  }
  impl->finalize(n);
  FiniteMetricSpace space(std::move(impl));
  spot_check_triangles(space, 1e-9);
  return space;
}

std::size_t FiniteMetricSpace::size() const { return impl_->size(); }
Backing FiniteMetricSpace::backing() const { return impl_->backing; }
int FiniteMetricSpace::dimension_hint() const { return impl_->dimension_hint; }
const std::vector<Point>& FiniteMetricSpace::coordinates() const { return impl_->coords; }
const std::vector<WeightedEdge>& FiniteMetricSpace::path_edges() const { return impl_->edges; }
const ExactMetric* FiniteMetricSpace::exact_metric() const { return impl_->metric.get(); }
double FiniteMetricSpace::net_resolution() const { return impl_->net_resolution; }

double FiniteMetricSpace::default_tolerance() const {
  return impl_->backing == Backing::Exact ? 1e-6 : 3.0 * impl_->net_resolution;
}

double FiniteMetricSpace::distance(Index i, Index j) const {
  if (i >= size() || j >= size()) throw InputError("point index out of range");
  return impl_->distance(i, j);
}

std::vector<double> FiniteMetricSpace::distances_from(Index i) const {
  if (i >= size()) throw InputError("point index out of range");
  if (impl_->backing == Backing::Graph) return impl_->tree(i)->dist;
  std::vector<double> row(size());
  for (std::size_t j = 0; j < size(); ++j) row[j] = impl_->distance(i, static_cast<Index>(j));
  return row;
}

std::shared_ptr<const ShortestPathTree> FiniteMetricSpace::shortest_path_tree(Index source) const {
  if (source >= size()) throw InputError("point index out of range");
  return impl_->tree(source);
}

Geodesic FiniteMetricSpace::geodesic(Index p, Index q) const {
  if (p >= size() || q >= size()) throw InputError("point index out of range");
  if (p == q) return Geodesic{{p}, 0.0};
  const Index root = std::min(p, q);
  const Index other = std::max(p, q);
  const auto tree = impl_->tree(root);
  Geodesic g;
  g.vertices = tree->path_to(other);
  g.length = tree->dist[other];
  if (root != p) std::reverse(g.vertices.begin(), g.vertices.end());
  return g;
}

FiniteMetricSpace build_from_graph(std::size_t vertex_count, std::span<const WeightedEdge> edges,
                                   int dimension_hint) {
  return FiniteMetricSpace::from_graph(vertex_count, edges, dimension_hint);
}

Geodesic geodesic(const FiniteMetricSpace& space, Index p, Index q) { return space.geodesic(p, q); }

// -- quadruples -------------------------------------------------------------

QuadrupleDistances quadruple_distances(const FiniteMetricSpace& space, const Quadruple& q) {
  return {space.distance(q.p, q.a), space.distance(q.p, q.b), space.distance(q.p, q.c),
          space.distance(q.a, q.b), space.distance(q.b, q.c), space.distance(q.c, q.a)};
}

double quadruple_defect(double kappa, const QuadrupleDistances& d) {
  if (!(d.pa > 0.0 && d.pb > 0.0 && d.pc > 0.0 && d.ab > 0.0 && d.bc > 0.0 && d.ca > 0.0)) {
    throw DomainError("quadruple_defect: points must be distinct");
  }
  const double apb = comparison_angle(kappa, d.pa, d.pb, d.ab);
  const double bpc = comparison_angle(kappa, d.pb, d.pc, d.bc);
  const double cpa = comparison_angle(kappa, d.pc, d.pa, d.ca);
  return 2.0 * std::numbers::pi - (apb + bpc + cpa);
}

double quadruple_defect_or_refuted(double kappa, const QuadrupleDistances& d) {
  const ModelPlane plane(kappa);
  if (!plane.admits(d.pa, d.pb, d.ab) || !plane.admits(d.pb, d.pc, d.bc) ||
      !plane.admits(d.pc, d.pa, d.ca)) {
    return -std::numeric_limits<double>::infinity();
  }
  return quadruple_defect(kappa, d);
}

double quadruple_defect(const FiniteMetricSpace& space, double kappa, Index p, Index a, Index b,
                        Index c) {
  if (p == a || p == b || p == c || a == b || b == c || a == c) {
    throw DomainError("quadruple_defect: points must be distinct");
  }
  return quadruple_defect(kappa, quadruple_distances(space, {p, a, b, c}));
}

std::vector<Quadruple> sample_quadruples(const FiniteMetricSpace& space, std::size_t count,
                                         std::uint64_t seed) {
  const std::size_t n = space.size();
  if (n < 4) throw DomainError("quadruple sampling needs at least 4 points");
  detail::Rng rng(seed, 0x9a4dULL);
  std::vector<Index> hubs;
  if (space.backing() == Backing::Graph) {
    std::vector<Index> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Index>(i);
    rng.shuffle(all);
    hubs.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(64, n)));
  }
  auto pick = [&](bool hub) -> Index {
    if (hub && !hubs.empty()) return hubs[rng.index(hubs.size())];
    return static_cast<Index>(rng.index(n));
  };
  std::vector<Quadruple> out;
  out.reserve(count);
  const bool small_pool = space.backing() == Backing::Graph && hubs.size() < 3;
  while (out.size() < count) {
    Quadruple q{pick(!small_pool), pick(!small_pool), pick(!small_pool), pick(false)};
    if (q.p == q.a || q.p == q.b || q.p == q.c || q.a == q.b || q.a == q.c || q.b == q.c) continue;
    out.push_back(q);
  }
  return out;
}

QuadrupleTestResult test_quadruples(const FiniteMetricSpace& space, double kappa,
                                    std::span<const Quadruple> quadruples, double tolerance) {
  std::vector<double> defects(quadruples.size());
  detail::parallel_for(quadruples.size(), [&](std::size_t i) {
    defects[i] = quadruple_defect_or_refuted(kappa, quadruple_distances(space, quadruples[i]));
  });
  QuadrupleTestResult r;
  r.kappa = kappa;
  r.tolerance = tolerance;
  r.tested = quadruples.size();
  r.worst_defect = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < defects.size(); ++i) {
    if (defects[i] < r.worst_defect) {
      r.worst_defect = defects[i];
      r.worst = quadruples[i];
    }
    if (defects[i] < -tolerance) {
      ++r.violations;
      if (r.examples.size() < 20) r.examples.emplace_back(quadruples[i], defects[i]);
    }
  }
  return r;
}

CurvatureEstimate estimate_curvature_bound(const FiniteMetricSpace& space, std::size_t sample_count,
                                           std::uint64_t seed, double k_max,
                                           std::optional<double> tolerance) {
  if (space.size() < 4) throw DomainError("curvature estimate needs at least 4 points");
  if (!(k_max > 0.0)) throw DomainError("k_max must be positive");
  const double tol = tolerance.value_or(space.default_tolerance());
  const auto quads = sample_quadruples(space, std::max<std::size_t>(sample_count, 1), seed);
  std::vector<QuadrupleDistances> dists(quads.size());
  detail::parallel_for(quads.size(),
                       [&](std::size_t i) { dists[i] = quadruple_distances(space, quads[i]); });
  auto passes = [&](double k) {
    for (const auto& d : dists) {
      if (quadruple_defect_or_refuted(k, d) < -tol) return false;
    }
    return true;
  };
  CurvatureEstimate est;
  est.k_max = k_max;
  est.tolerance = tol;
  est.quadruples = quads.size();
  if (passes(k_max)) {
    est.bound = k_max;
    est.at_upper_limit = true;
    return est;
  }
  if (!passes(-k_max)) {
    est.bound = -k_max;
    est.at_lower_limit = true;
    return est;
  }
  double lo = -k_max;  // passes
  double hi = k_max;   // fails
  for (int it = 0; it < 60 && hi - lo > 1e-9 * k_max; ++it) {
    const double mid = 0.5 * (lo + hi);
    (passes(mid) ? lo : hi) = mid;
  }
  est.bound = lo;
  return est;
}

}  // namespace cglab
