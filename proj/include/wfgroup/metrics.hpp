#pragma once

// Cohesion metrics used as stopping criteria. All of them read the
// undirected simple view of their input and score in [0, 1].

#include <algorithm>
#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "wfgroup/error.hpp"
#include "wfgroup/graph.hpp"

namespace wfgroup {

enum class MetricKind { ClusterDensity, GlobalClusteringCoefficient, LocalClusteringCoefficient, Modularity };

inline constexpr std::array<MetricKind, 4> kAllMetrics{
    MetricKind::ClusterDensity, MetricKind::GlobalClusteringCoefficient,
    MetricKind::LocalClusteringCoefficient, MetricKind::Modularity};

inline std::string_view to_string(MetricKind k) {
  switch (k) {
    case MetricKind::ClusterDensity: return "density";
    case MetricKind::GlobalClusteringCoefficient: return "global-cc";
    case MetricKind::LocalClusteringCoefficient: return "local-cc";
    case MetricKind::Modularity: return "modularity";
  }
  return {};
}

/// A threshold in [0, 1].
class Cutoff {
 public:
  constexpr Cutoff() = default;
  explicit Cutoff(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw Error(ErrorKind::IncompatibleConfig, "cutoff must lie in [0, 1]");
    }
  }
  constexpr double value() const noexcept { return value_; }
  bool operator==(const Cutoff&) const = default;

 private:
  double value_ = 0.0;
};

inline const std::array<double, 4> kDefaultCutoffs{0.2, 0.4, 0.6, 0.8};

namespace detail {

// Adjacency bitmap of the undirected simple view.
inline std::vector<std::vector<char>> linked_pairs(const WeightedDigraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& e : g.edges()) {
    adj[e.source][e.target] = 1;
    adj[e.target][e.source] = 1;
  }
  return adj;
}

}  // namespace detail

inline double cluster_density(const WeightedDigraph& g) {
  const std::size_t n = g.vertex_count();
  if (n <= 1) return 1.0;
  const auto view = undirected_view(g);
  std::size_t degree_sum = 0;
  for (const auto& row : view) degree_sum += row.size();
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return (static_cast<double>(degree_sum) / 2.0) / pairs;
}

/// Transitivity: 3 * triangles / connected triples.
inline double global_clustering_coefficient(const WeightedDigraph& g) {
  const std::size_t n = g.vertex_count();
  if (n <= 1) return 1.0;
  const auto adj = detail::linked_pairs(g);
  const auto view = undirected_view(g);
  double triples = 0.0;
  double closed = 0.0;  // each triangle is seen once per center vertex
  for (std::size_t v = 0; v < n; ++v) {
    const auto& nb = view[v];
    const double k = static_cast<double>(nb.size());
    triples += k * (k - 1.0) / 2.0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (adj[nb[i].first][nb[j].first]) closed += 1.0;
      }
    }
  }
  return triples == 0.0 ? 0.0 : closed / triples;
}

/// Mean of per-vertex clustering coefficients; degree < 2 contributes 0.
inline double local_clustering_coefficient(const WeightedDigraph& g) {
  const std::size_t n = g.vertex_count();
  if (n <= 1) return 1.0;
  const auto adj = detail::linked_pairs(g);
  const auto view = undirected_view(g);
  double total = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    const auto& nb = view[v];
    if (nb.size() < 2) continue;
    double links = 0.0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (adj[nb[i].first][nb[j].first]) links += 1.0;
      }
    }
    const double k = static_cast<double>(nb.size());
    total += links / (k * (k - 1.0) / 2.0);
  }
  return total / static_cast<double>(n);
}

/// Weighted Newman modularity on the undirected view of a parent graph.
/// Cluster membership is given per parent vertex.
class ModularityContext {
 public:
  explicit ModularityContext(const WeightedDigraph& parent) : parent_(&parent) {
    const auto view = undirected_view(parent);
    degree_.assign(parent.vertex_count(), 0.0);
    for (std::size_t v = 0; v < view.size(); ++v) {
      for (const auto& [u, w] : view[v]) {
        degree_[v] += w;
        total_ += w;
      }
    }
    total_ /= 2.0;
    view_ = std::move(view);
  }

  double total_weight() const noexcept { return total_; }

  /// W_in(c)/W - (W_deg(c) / 2W)^2, unclamped. Zero when the parent has no
  /// edges.
  double addend(std::span<const std::size_t> members) const {
    if (total_ <= 0.0) return 0.0;
    std::vector<char> in(view_.size(), 0);
    for (auto v : members) in.at(v) = 1;
    double inner = 0.0;
    double degree = 0.0;
    for (auto v : members) {
      degree += degree_[v];
      for (const auto& [u, w] : view_[v]) {
        if (in[u]) inner += w;
      }
    }
    inner /= 2.0;
    const double share = degree / (2.0 * total_);
    return inner / total_ - share * share;
  }

  double addend(const WeightedDigraph& cluster) const {
    return addend(std::span<const std::size_t>(members_of(cluster)));
  }

  std::vector<std::size_t> members_of(const WeightedDigraph& cluster) const {
    std::vector<std::size_t> members;
    members.reserve(cluster.vertex_count());
    for (const auto& id : cluster.vertices()) {
      auto v = parent_->index_of(id);
      if (!v) throw Error(ErrorKind::InvalidClustering, "'" + id + "' is not in the parent graph");
      members.push_back(*v);
    }
    return members;
  }

 private:
  const WeightedDigraph* parent_;
  UndirectedView view_;
  std::vector<double> degree_;
  double total_ = 0.0;
};

inline double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

/// Unclamped Q of a clustering.
inline double modularity_q(const WeightedDigraph& parent, const Clustering& clustering) {
  if (!is_valid_clustering(parent, clustering)) {
    throw Error(ErrorKind::InvalidClustering, "clusters do not partition the parent graph");
  }
  const ModularityContext ctx(parent);
  double q = 0.0;
  for (const auto& c : clustering) q += ctx.addend(c);
  return q;
}

/// Q clamped to [0, 1].
inline double modularity(const WeightedDigraph& parent, const Clustering& clustering) {
  return clamp_unit(modularity_q(parent, clustering));
}

/// Per-cluster modularity score: the cluster's addend clamped to [0, 1].
inline double modularity_addend_score(const WeightedDigraph& parent, const WeightedDigraph& cluster) {
  return clamp_unit(ModularityContext(parent).addend(cluster));
}

/// Scores one cluster. Only modularity consults `parent`.
inline double evaluate(MetricKind kind, const WeightedDigraph& parent, const WeightedDigraph& cluster) {
  switch (kind) {
    case MetricKind::ClusterDensity: return cluster_density(cluster);
    case MetricKind::GlobalClusteringCoefficient: return global_clustering_coefficient(cluster);
    case MetricKind::LocalClusteringCoefficient: return local_clustering_coefficient(cluster);
    case MetricKind::Modularity: return modularity_addend_score(parent, cluster);
  }
  return 0.0;
}

}  // namespace wfgroup
