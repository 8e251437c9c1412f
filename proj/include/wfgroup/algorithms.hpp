#pragma once

// Single-application clustering steps: Girvan-Newman edge removal until the
// graph splits, Fiedler-vector bisection, and metric-gated average-linkage
// agglomeration.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "wfgroup/error.hpp"
#include "wfgroup/graph.hpp"
#include "wfgroup/metrics.hpp"

namespace wfgroup {

/// How shortest-path lengths are derived from edges.
enum class PathLength {
  InverseWeight,  // length = 1 / weight, so heavier edges are closer
  Hops,           // every edge has length 1
};

struct EdgeScore {
  std::size_t source;
  std::size_t target;
  double value;
};

namespace detail {

inline bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

struct OutArc {
  std::size_t target;
  double length;
  std::size_t edge;
};

}  // namespace detail

/// Directed edge betweenness (Brandes accumulation over Dijkstra DAGs). For
/// every ordered pair (s, t), each of the k shortest s-t paths contributes
/// 1/k to every edge it uses. Scores follow g.edges() order.
inline std::vector<EdgeScore> edge_betweenness(const WeightedDigraph& g,
                                               PathLength mode = PathLength::InverseWeight) {
  const std::size_t n = g.vertex_count();
  const auto edges = g.edges();
  std::vector<std::vector<detail::OutArc>> arcs(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    const double len = mode == PathLength::Hops ? 1.0 : 1.0 / e.weight;
    arcs[e.source].push_back({e.target, len, i});
  }

  std::vector<double> score(edges.size(), 0.0);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<char> settled(n);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> preds(n);  // (vertex, edge)
  std::vector<std::size_t> order;
  using Entry = std::pair<double, std::size_t>;

  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(settled.begin(), settled.end(), 0);
    for (auto& p : preds) p.clear();
    order.clear();

    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    dist[s] = 0.0;
    sigma[s] = 1.0;
    queue.emplace(0.0, s);
    while (!queue.empty()) {
      const auto [d, v] = queue.top();
      queue.pop();
      if (settled[v]) continue;
      settled[v] = 1;
      order.push_back(v);
      for (const auto& arc : arcs[v]) {
        const auto w = arc.target;
        if (settled[w]) continue;
        const double nd = d + arc.length;
        if (dist[w] == kInf || (nd < dist[w] && !detail::nearly_equal(nd, dist[w]))) {
          dist[w] = nd;
          sigma[w] = sigma[v];
          preds[w].assign(1, {v, arc.edge});
          queue.emplace(nd, w);
        } else if (detail::nearly_equal(nd, dist[w])) {
          sigma[w] += sigma[v];
          preds[w].emplace_back(v, arc.edge);
        }
      }
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto w = *it;
      for (const auto& [v, edge] : preds[w]) {
        const double c = sigma[v] / sigma[w] * (1.0 + delta[w]);
        score[edge] += c;
        delta[v] += c;
      }
    }
  }

  std::vector<EdgeScore> out;
  out.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out.push_back({edges[i].source, edges[i].target, score[i]});
  }
  return out;
}

struct BetweennessStepResult {
  Clustering clusters;
  std::size_t removed_edges = 0;
};

/// Removes maximum-betweenness edges one at a time until the number of weak
/// components grows. Clusters are induced subgraphs of the input, so edges
/// removed inside a surviving component are restored.
inline BetweennessStepResult edge_betweenness_split(const WeightedDigraph& g,
                                                    PathLength mode = PathLength::InverseWeight) {
  BetweennessStepResult result;
  if (g.vertex_count() == 0) return result;
  const std::size_t initial = weak_component_count(g);
  if (initial > 1 || g.vertex_count() == 1) {
    result.clusters = weakly_connected_components(g);
    return result;
  }

  WeightedDigraph work = g;
  std::size_t components = initial;
  while (components <= initial && work.edge_count() > 0) {
    const auto scores = edge_betweenness(work, mode);
    double best = -1.0;
    for (const auto& s : scores) best = std::max(best, s.value);
    const double slack = 1e-9 * std::max(1.0, best);
    const EdgeScore* pick = nullptr;
    for (const auto& s : scores) {
      if (s.value < best - slack) continue;
      if (!pick || std::tie(work.id(s.source), work.id(s.target)) <
                       std::tie(work.id(pick->source), work.id(pick->target))) {
        pick = &s;
      }
    }
    work.remove_edge(pick->source, pick->target);
    ++result.removed_edges;
    components = weak_component_count(work);
  }

  std::size_t count = 0;
  const auto labels = weak_component_labels(work, &count);
  result.clusters = partition_by_labels(g, labels, count);
  return result;
}

inline Clustering edge_betweenness_step(const WeightedDigraph& g,
                                        PathLength mode = PathLength::InverseWeight) {
  return edge_betweenness_split(g, mode).clusters;
}

/// Weighted Laplacian D - W of the undirected view.
inline Eigen::MatrixXd laplacian(const WeightedDigraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  const auto view = undirected_view(g);
  for (std::size_t v = 0; v < view.size(); ++v) {
    const auto i = static_cast<Eigen::Index>(v);
    for (const auto& [u, w] : view[v]) {
      lap(i, static_cast<Eigen::Index>(u)) -= w;
      lap(i, i) += w;
    }
  }
  return lap;
}

struct FiedlerPair {
  double eigenvalue;
  Eigen::VectorXd vector;  // first entry with magnitude above tolerance is positive
};

inline constexpr double kEigenTolerance = 1e-8;

inline FiedlerPair fiedler(const WeightedDigraph& g) {
  if (g.vertex_count() < 2) {
    throw Error(ErrorKind::DegenerateInput, "Fiedler vector needs at least two vertices");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(g));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::DegenerateInput, "eigen decomposition did not converge");
  }
  FiedlerPair out{solver.eigenvalues()(1), solver.eigenvectors().col(1)};
  for (Eigen::Index i = 0; i < out.vector.size(); ++i) {
    if (std::abs(out.vector(i)) > kEigenTolerance) {
      if (out.vector(i) < 0.0) out.vector = -out.vector;
      break;
    }
  }
  return out;
}

/// Bisection by the sign of the Fiedler vector. Near-zero entries go to the
/// non-positive side; a one-sided vector is split at its median instead.
inline Clustering spectral_bisection_step(const WeightedDigraph& g) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw Error(ErrorKind::DegenerateInput, "bisection needs at least two vertices");
  if (weak_component_count(g) > 1) return weakly_connected_components(g);

  const auto f = fiedler(g);
  std::vector<std::size_t> side(n, 1);
  std::size_t positive = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (f.vector(static_cast<Eigen::Index>(v)) > kEigenTolerance) {
      side[v] = 0;
      ++positive;
    }
  }
  if (positive == 0 || positive == n) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return f.vector(static_cast<Eigen::Index>(a)) > f.vector(static_cast<Eigen::Index>(b));
    });
    for (std::size_t i = 0; i < n; ++i) side[order[i]] = i < (n + 1) / 2 ? 0 : 1;
  }
  return partition_by_labels(g, side, 2);
}

/// Bottom-up average-linkage clustering. The input is read as a distance
/// graph: a path's length is the sum of its edge weights, and the distance
/// between two clusters is the mean shortest-path length over all cross
/// pairs (unreachable pairs never merge). The closest pair is merged unless
/// the merged cluster scores below `cutoff` under `metric`; the gate scores
/// clusters on the reciprocal graph, where high weight means close.
inline Clustering agglomerative_cluster(const WeightedDigraph& g, MetricKind metric, Cutoff cutoff) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return {};
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // All-pairs shortest paths.
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, kInf));
  using Entry = std::pair<double, std::size_t>;
  for (std::size_t s = 0; s < n; ++s) {
    auto& d = dist[s];
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    d[s] = 0.0;
    queue.emplace(0.0, s);
    while (!queue.empty()) {
      const auto [du, u] = queue.top();
      queue.pop();
      if (du > d[u]) continue;
      for (const auto& [v, w] : g.out_edges(u)) {
        if (du + w < d[v]) {
          d[v] = du + w;
          queue.emplace(d[v], v);
        }
      }
    }
  }

  // Slots start as singletons; a merge folds slot b into slot a.
  std::vector<std::vector<std::size_t>> members(n);
  std::vector<std::string> representative(n);
  std::vector<std::size_t> version(n, 0);
  std::vector<char> alive(n, 1);
  std::vector<std::vector<double>> linkage(n, std::vector<double>(n, 0.0));  // summed distances
  for (std::size_t v = 0; v < n; ++v) {
    members[v] = {v};
    representative[v] = g.id(v);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double dab = dist[a][b];
      const double dba = dist[b][a];
      linkage[a][b] = (dab == kInf || dba == kInf) ? kInf : 0.5 * (dab + dba);
    }
  }

  struct Candidate {
    double distance;
    std::string low;
    std::string high;
    std::size_t a, b;
    std::size_t version_a, version_b;
    bool operator>(const Candidate& o) const {
      return std::tie(distance, low, high) > std::tie(o.distance, o.low, o.high);
    }
  };
  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> queue;
  auto push = [&](std::size_t a, std::size_t b) {
    const double total = linkage[a][b];
    if (total == kInf) return;
    const double mean =
        total / (static_cast<double>(members[a].size()) * static_cast<double>(members[b].size()));
    const auto& ra = representative[a];
    const auto& rb = representative[b];
    queue.push({mean, std::min(ra, rb), std::max(ra, rb), a, b, version[a], version[b]});
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) push(a, b);
  }

  const WeightedDigraph gate_graph = reciprocal(g);
  while (!queue.empty()) {
    const Candidate c = queue.top();
    queue.pop();
    if (!alive[c.a] || !alive[c.b] || version[c.a] != c.version_a || version[c.b] != c.version_b) {
      continue;
    }
    std::vector<std::size_t> merged = members[c.a];
    merged.insert(merged.end(), members[c.b].begin(), members[c.b].end());
    std::sort(merged.begin(), merged.end());
    const auto candidate = induced_subgraph(gate_graph, std::span<const std::size_t>(merged));
    if (evaluate(metric, gate_graph, candidate) < cutoff.value()) continue;

    members[c.a] = std::move(merged);
    representative[c.a] = std::min(representative[c.a], representative[c.b]);
    alive[c.b] = 0;
    ++version[c.a];
    for (std::size_t o = 0; o < n; ++o) {
      if (!alive[o] || o == c.a) continue;
      linkage[c.a][o] += linkage[c.b][o];
      linkage[o][c.a] = linkage[c.a][o];
    }
    for (std::size_t o = 0; o < n; ++o) {
      if (alive[o] && o != c.a) push(std::min(c.a, o), std::max(c.a, o));
    }
  }

  std::vector<std::size_t> label(n, 0);
  for (std::size_t slot = 0; slot < n; ++slot) {
    if (!alive[slot]) continue;
    for (auto v : members[slot]) label[v] = slot;
  }
  return partition_by_labels(g, label, n);
}

}  // namespace wfgroup
