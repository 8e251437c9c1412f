#pragma once

// Weighted directed graph value type and the graph-level transforms the
// clustering pipeline is built from: reciprocal weights, the naive and
// bibliometric symmetrizations, induced subgraphs and weak components.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wfgroup/error.hpp"

namespace wfgroup {

inline constexpr double kWeightTolerance = 1e-9;

struct Edge {
  std::size_t source;
  std::size_t target;
  double weight;
};

/// Directed graph over string-keyed vertices with strictly positive edge
/// weights and no self-loops. Vertices are addressed by their position in
/// insertion order, which is also the iteration and tie-breaking order.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;

  explicit WeightedDigraph(std::span<const std::string> ids) {
    for (const auto& id : ids) add_vertex(id);
  }

  std::size_t add_vertex(std::string id) {
    auto [it, inserted] = index_.try_emplace(id, ids_.size());
    if (!inserted) {
      throw Error(ErrorKind::InvalidArgument, "duplicate vertex '" + id + "'");
    }
    ids_.push_back(std::move(id));
    out_.emplace_back();
    return ids_.size() - 1;
  }

  /// Inserts or overwrites edge (s, t).
  void set_edge(std::size_t s, std::size_t t, double weight) {
    check_index(s);
    check_index(t);
    if (s == t) throw Error(ErrorKind::InvalidArgument, "self-loop on '" + ids_[s] + "'");
    if (!(weight > 0.0) || !std::isfinite(weight)) {
      throw Error(ErrorKind::InvalidArgument, "edge weight must be positive and finite");
    }
    out_[s][t] = weight;
  }

  void set_edge(std::string_view s, std::string_view t, double weight) {
    set_edge(index_of_or_throw(s), index_of_or_throw(t), weight);
  }

  void remove_edge(std::size_t s, std::size_t t) {
    check_index(s);
    out_[s].erase(t);
  }

  std::size_t vertex_count() const noexcept { return ids_.size(); }

  std::size_t edge_count() const noexcept {
    std::size_t n = 0;
    for (const auto& row : out_) n += row.size();
    return n;
  }

  const std::vector<std::string>& vertices() const noexcept { return ids_; }
  const std::string& id(std::size_t v) const { return ids_.at(v); }

  std::optional<std::size_t> index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of_or_throw(std::string_view id) const {
    if (auto v = index_of(id)) return *v;
    throw Error(ErrorKind::UnknownVertex, "'" + std::string(id) + "'");
  }

  bool contains(std::string_view id) const { return index_of(id).has_value(); }

  bool has_edge(std::size_t s, std::size_t t) const { return out_.at(s).contains(t); }

  /// w_0: the edge weight, or 0 when the edge is absent.
  double weight(std::size_t s, std::size_t t) const {
    const auto& row = out_.at(s);
    auto it = row.find(t);
    return it == row.end() ? 0.0 : it->second;
  }

  const std::map<std::size_t, double>& out_edges(std::size_t s) const { return out_.at(s); }

  /// All edges ordered by (source, target) vertex position.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t s = 0; s < out_.size(); ++s) {
      for (const auto& [t, w] : out_[s]) out.push_back({s, t, w});
    }
    return out;
  }

 private:
  void check_index(std::size_t v) const {
    if (v >= ids_.size()) throw Error(ErrorKind::UnknownVertex, "index " + std::to_string(v));
  }

  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::map<std::size_t, double>> out_;
};

/// A partition of a graph's vertices into induced subgraphs.
using Clustering = std::vector<WeightedDigraph>;

/// Same vertex order, same edge support, weights equal within `tol`.
inline bool approx_equal(const WeightedDigraph& a, const WeightedDigraph& b,
                         double tol = kWeightTolerance) {
  if (a.vertices() != b.vertices()) return false;
  for (std::size_t s = 0; s < a.vertex_count(); ++s) {
    const auto& ra = a.out_edges(s);
    const auto& rb = b.out_edges(s);
    if (ra.size() != rb.size()) return false;
    for (auto ia = ra.begin(), ib = rb.begin(); ia != ra.end(); ++ia, ++ib) {
      if (ia->first != ib->first || std::abs(ia->second - ib->second) > tol) return false;
    }
  }
  return true;
}

using AdjacencyMatrix = Eigen::MatrixXd;

inline AdjacencyMatrix adjacency_matrix(const WeightedDigraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  AdjacencyMatrix a = AdjacencyMatrix::Zero(n, n);
  for (const auto& e : g.edges()) {
    a(static_cast<Eigen::Index>(e.source), static_cast<Eigen::Index>(e.target)) = e.weight;
  }
  return a;
}

/// The graph of a square matrix over the given vertex ids. The diagonal and
/// zero entries produce no edge.
inline WeightedDigraph graph_from_matrix(std::span<const std::string> ids,
                                         const AdjacencyMatrix& m) {
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != ids.size()) {
    throw Error(ErrorKind::InvalidArgument, "matrix shape does not match vertex count");
  }
  WeightedDigraph g(ids);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j && m(i, j) > 0.0) {
        g.set_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(j), m(i, j));
      }
    }
  }
  return g;
}

inline WeightedDigraph reciprocal(const WeightedDigraph& g) {
  WeightedDigraph out(g.vertices());
  for (const auto& e : g.edges()) out.set_edge(e.source, e.target, 1.0 / e.weight);
  return out;
}

/// w'(u,v) = w_0(u,v) + w_0(v,u) on both directions of every linked pair.
inline WeightedDigraph naive_symmetrize(const WeightedDigraph& g) {
  WeightedDigraph out(g.vertices());
  for (const auto& e : g.edges()) {
    const double w = e.weight + g.weight(e.target, e.source);
    out.set_edge(e.source, e.target, w);
    out.set_edge(e.target, e.source, w);
  }
  return out;
}

/// Graph of (A+I)(A+I)^T + (A+I)^T(A+I) with raw weights in A; the diagonal
/// is dropped.
inline WeightedDigraph bibliometric_symmetrize(const WeightedDigraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  const AdjacencyMatrix shifted = adjacency_matrix(g) + AdjacencyMatrix::Identity(n, n);
  AdjacencyMatrix m = shifted * shifted.transpose() + shifted.transpose() * shifted;
  // The two products are mirror images of each other; average them so the
  // result is bit-for-bit symmetric regardless of summation order.
  m = (0.5 * (m + m.transpose())).eval();
  return graph_from_matrix(g.vertices(), m);
}

/// Subgraph on the vertices at the given positions, kept in parent order.
inline WeightedDigraph induced_subgraph(const WeightedDigraph& g,
                                        std::span<const std::size_t> members) {
  std::vector<char> keep(g.vertex_count(), 0);
  for (auto v : members) {
    if (v >= g.vertex_count()) throw Error(ErrorKind::UnknownVertex, "index " + std::to_string(v));
    keep[v] = 1;
  }
  std::vector<std::size_t> remap(g.vertex_count(), 0);
  WeightedDigraph out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (keep[v]) remap[v] = out.add_vertex(g.id(v));
  }
  for (const auto& e : g.edges()) {
    if (keep[e.source] && keep[e.target]) {
      out.set_edge(remap[e.source], remap[e.target], e.weight);
    }
  }
  return out;
}

inline WeightedDigraph induced_subgraph(const WeightedDigraph& g,
                                        std::span<const std::string> ids) {
  std::vector<std::size_t> members;
  members.reserve(ids.size());
  for (const auto& id : ids) members.push_back(g.index_of_or_throw(id));
  return induced_subgraph(g, std::span<const std::size_t>(members));
}

/// Component label per vertex, ignoring edge direction. Labels are numbered
/// by the first vertex (in vertex order) of each component.
inline std::vector<std::size_t> weak_component_labels(const WeightedDigraph& g,
                                                      std::size_t* count = nullptr) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const auto& e : g.edges()) {
    auto a = find(e.source);
    auto b = find(e.target);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> label(n);
  std::vector<std::size_t> root_label(n, n);
  std::size_t next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto r = find(v);
    if (root_label[r] == n) root_label[r] = next++;
    label[v] = root_label[r];
  }
  if (count) *count = next;
  return label;
}

inline std::size_t weak_component_count(const WeightedDigraph& g) {
  std::size_t count = 0;
  weak_component_labels(g, &count);
  return count;
}

/// Splits `g` into induced subgraphs according to a per-vertex group label in
/// [0, group_count). Empty groups are skipped.
inline Clustering partition_by_labels(const WeightedDigraph& g,
                                      std::span<const std::size_t> labels,
                                      std::size_t group_count) {
  std::vector<std::vector<std::size_t>> members(group_count);
  for (std::size_t v = 0; v < labels.size(); ++v) members.at(labels[v]).push_back(v);
  Clustering out;
  for (const auto& m : members) {
    if (!m.empty()) out.push_back(induced_subgraph(g, std::span<const std::size_t>(m)));
  }
  return out;
}

inline Clustering weakly_connected_components(const WeightedDigraph& g) {
  std::size_t count = 0;
  const auto labels = weak_component_labels(g, &count);
  return partition_by_labels(g, labels, count);
}

/// True when `clustering` is a disjoint vertex cover of `parent` made of
/// induced subgraphs with parent weights.
inline bool is_valid_clustering(const WeightedDigraph& parent, const Clustering& clustering) {
  std::vector<char> covered(parent.vertex_count(), 0);
  std::size_t total = 0;
  for (const auto& cluster : clustering) {
    std::vector<std::size_t> members;
    for (const auto& id : cluster.vertices()) {
      auto v = parent.index_of(id);
      if (!v || covered[*v]) return false;
      covered[*v] = 1;
      members.push_back(*v);
      ++total;
    }
    std::sort(members.begin(), members.end());
    const auto expected = induced_subgraph(parent, std::span<const std::size_t>(members));
    // Compare as sets of vertex ids: the cluster may list members in another order.
    if (expected.edge_count() != cluster.edge_count()) return false;
    for (const auto& e : cluster.edges()) {
      const auto s = expected.index_of_or_throw(cluster.id(e.source));
      const auto t = expected.index_of_or_throw(cluster.id(e.target));
      if (std::abs(expected.weight(s, t) - e.weight) > kWeightTolerance) return false;
    }
  }
  return total == parent.vertex_count();
}

/// Undirected simple view: pair {u,v} is linked iff either direction exists,
/// with pair weight w_0(u,v) + w_0(v,u). Row v lists (neighbor, pair weight)
/// in vertex order.
using UndirectedView = std::vector<std::vector<std::pair<std::size_t, double>>>;

inline UndirectedView undirected_view(const WeightedDigraph& g) {
  std::vector<std::map<std::size_t, double>> pairs(g.vertex_count());
  for (const auto& e : g.edges()) {
    pairs[e.source][e.target] += e.weight;
    pairs[e.target][e.source] += e.weight;
  }
  UndirectedView view(g.vertex_count());
  for (std::size_t v = 0; v < pairs.size(); ++v) {
    view[v].assign(pairs[v].begin(), pairs[v].end());
  }
  return view;
}

}  // namespace wfgroup
