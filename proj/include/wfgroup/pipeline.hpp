#pragma once

// The iterative grouping driver: build the workflow graph, optionally
// symmetrize it, and re-apply a clustering step to every cluster that scores
// below the cutoff.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "wfgroup/algorithms.hpp"
#include "wfgroup/error.hpp"
#include "wfgroup/graph.hpp"
#include "wfgroup/graph_build.hpp"
#include "wfgroup/metrics.hpp"
#include "wfgroup/workflow.hpp"

namespace wfgroup {

enum class AlgorithmKind { EdgeBetweenness, Agglomerative, SpectralBisection };
enum class SymmetrizationKind { None, Naive, Bibliometric };
enum class Termination { MetricSatisfied, Singleton, NoProgress };

inline constexpr std::array<AlgorithmKind, 3> kAllAlgorithms{
    AlgorithmKind::EdgeBetweenness, AlgorithmKind::Agglomerative, AlgorithmKind::SpectralBisection};
inline constexpr std::array<SymmetrizationKind, 3> kAllSymmetrizations{
    SymmetrizationKind::None, SymmetrizationKind::Naive, SymmetrizationKind::Bibliometric};

inline std::string_view to_string(AlgorithmKind k) {
  switch (k) {
    case AlgorithmKind::EdgeBetweenness: return "betweenness";
    case AlgorithmKind::Agglomerative: return "agglomerative";
    case AlgorithmKind::SpectralBisection: return "spectral";
  }
  return {};
}

inline std::string_view to_string(SymmetrizationKind k) {
  switch (k) {
    case SymmetrizationKind::None: return "none";
    case SymmetrizationKind::Naive: return "naive";
    case SymmetrizationKind::Bibliometric: return "bibliometric";
  }
  return {};
}

inline std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::MetricSatisfied: return "metricSatisfied";
    case Termination::Singleton: return "singleton";
    case Termination::NoProgress: return "noProgress";
  }
  return {};
}

namespace detail {

template <typename E, std::size_t N>
E parse_named(std::string_view token, const std::array<E, N>& values, std::string_view what) {
  for (auto v : values) {
    if (to_string(v) == token) return v;
  }
  throw Error(ErrorKind::UnknownEnumValue, std::string(what) + " '" + std::string(token) + "'");
}

}  // namespace detail

inline WeightingKind parse_weighting(std::string_view s) {
  return detail::parse_named(s, kAllWeightings, "weighting");
}
inline SymmetrizationKind parse_symmetrization(std::string_view s) {
  return detail::parse_named(s, kAllSymmetrizations, "symmetrization");
}
inline AlgorithmKind parse_algorithm(std::string_view s) {
  return detail::parse_named(s, kAllAlgorithms, "algorithm");
}
inline MetricKind parse_metric(std::string_view s) { return detail::parse_named(s, kAllMetrics, "metric"); }
inline Termination parse_termination(std::string_view s) {
  constexpr std::array<Termination, 3> all{Termination::MetricSatisfied, Termination::Singleton,
                                           Termination::NoProgress};
  return detail::parse_named(s, all, "termination");
}

struct ClusterConfig {
  WeightingKind weighting = WeightingKind::DataDriven;
  SymmetrizationKind symmetrization = SymmetrizationKind::None;
  AlgorithmKind algorithm = AlgorithmKind::EdgeBetweenness;
  MetricKind metric = MetricKind::Modularity;
  Cutoff cutoff{};
  bool hop_paths = false;  // betweenness only: count hops instead of 1/weight

  bool operator==(const ClusterConfig&) const = default;
};

/// Only edge betweenness can run on the directed graph.
inline bool is_compatible(SymmetrizationKind s, AlgorithmKind a) {
  return s != SymmetrizationKind::None || a == AlgorithmKind::EdgeBetweenness;
}

inline bool is_compatible(const ClusterConfig& c) { return is_compatible(c.symmetrization, c.algorithm); }

inline std::string fingerprint(const ClusterConfig& c) {
  std::ostringstream os;
  os << to_string(c.weighting) << '/' << to_string(c.symmetrization) << '/' << to_string(c.algorithm)
     << '/' << to_string(c.metric) << '/' << c.cutoff.value();
  if (c.hop_paths) os << "/hops";
  return os.str();
}

struct ReportCluster {
  std::vector<std::string> instances;  // workflow declaration order
  double metric_score = 0.0;
  Termination termination = Termination::MetricSatisfied;

  bool operator==(const ReportCluster&) const = default;
};

struct ClusterReport {
  ClusterConfig config;
  std::size_t iterations = 0;  // clustering-step applications
  std::vector<ReportCluster> clusters;
  std::optional<std::string> error;  // set by grid_sweep when the run failed

  // Longest chain of nested step applications. Not serialized.
  std::size_t max_depth = 0;
};

inline WeightedDigraph symmetrize(const WeightedDigraph& g, SymmetrizationKind kind) {
  switch (kind) {
    case SymmetrizationKind::None: return g;
    case SymmetrizationKind::Naive: return naive_symmetrize(g);
    case SymmetrizationKind::Bibliometric: return bibliometric_symmetrize(g);
  }
  return g;
}

namespace detail {

struct Finalized {
  WeightedDigraph cluster;
  double score;
  Termination termination;
};

class RecursiveDriver {
 public:
  explicit RecursiveDriver(const ClusterConfig& config) : config_(config) {}

  void run(const WeightedDigraph& graph) {
    if (graph.vertex_count() == 0) return;
    if (graph.vertex_count() == 1) {
      done_.push_back({graph, evaluate(config_.metric, graph, graph), Termination::Singleton});
      return;
    }
    descend(graph, 1);
  }

  std::vector<Finalized>& finalized() { return done_; }
  std::size_t iterations() const { return iterations_; }
  std::size_t max_depth() const { return max_depth_; }

 private:
  Clustering step(const WeightedDigraph& g) {
    ++iterations_;
    if (config_.algorithm == AlgorithmKind::SpectralBisection) return spectral_bisection_step(g);
    return edge_betweenness_step(g, config_.hop_paths ? PathLength::Hops : PathLength::InverseWeight);
  }

  void descend(const WeightedDigraph& g, std::size_t depth) {
    max_depth_ = std::max(max_depth_, depth);
    Clustering parts = step(g);
    if (parts.size() == 1 && parts.front().vertex_count() == g.vertex_count()) {
      done_.push_back({g, evaluate(config_.metric, g, g), Termination::NoProgress});
      return;
    }
    for (auto& part : parts) {
      const double score = evaluate(config_.metric, g, part);
      if (part.vertex_count() <= 1) {
        done_.push_back({std::move(part), score, Termination::Singleton});
      } else if (score >= config_.cutoff.value()) {
        done_.push_back({std::move(part), score, Termination::MetricSatisfied});
      } else {
        descend(part, depth + 1);
      }
    }
  }

  ClusterConfig config_;
  std::vector<Finalized> done_;
  std::size_t iterations_ = 0;
  std::size_t max_depth_ = 0;
};

}  // namespace detail

/// Runs one configuration end to end and maps the final clusters back to
/// instance ids. Throws IncompatibleConfig for an undirected algorithm
/// without symmetrization.
inline ClusterReport run_pipeline(const Workflow& wf, const ClusterConfig& config) {
  if (!is_compatible(config)) {
    throw Error(ErrorKind::IncompatibleConfig, std::string(to_string(config.algorithm)) +
                                                   " needs a symmetrization other than 'none'");
  }
  const WeightedDigraph base = build_graph(wf, config.weighting);
  const WeightedDigraph graph = symmetrize(base, config.symmetrization);

  ClusterReport report;
  report.config = config;
  std::vector<detail::Finalized> finalized;

  if (config.algorithm == AlgorithmKind::Agglomerative) {
    if (graph.vertex_count() > 0) {
      report.iterations = 1;
      report.max_depth = 1;
      // The agglomerative step keeps light edges together; hand it reciprocal
      // weights and read the clusters back on the original graph.
      const auto parts = agglomerative_cluster(reciprocal(graph), config.metric, config.cutoff);
      for (const auto& part : parts) {
        const auto restored = induced_subgraph(graph, std::span<const std::string>(part.vertices()));
        const double score = evaluate(config.metric, graph, restored);
        const auto reason =
            restored.vertex_count() <= 1 ? Termination::Singleton : Termination::MetricSatisfied;
        finalized.push_back({restored, score, reason});
      }
    }
  } else {
    detail::RecursiveDriver driver(config);
    driver.run(graph);
    report.iterations = driver.iterations();
    report.max_depth = driver.max_depth();
    finalized = std::move(driver.finalized());
  }

  // Stable presentation: members and clusters in declaration order.
  for (auto& f : finalized) {
    std::vector<std::size_t> members;
    for (const auto& id : f.cluster.vertices()) members.push_back(graph.index_of_or_throw(id));
    std::sort(members.begin(), members.end());
    ReportCluster rc;
    for (auto v : members) rc.instances.push_back(graph.id(v));
    rc.metric_score = f.score;
    rc.termination = f.termination;
    report.clusters.push_back(std::move(rc));
  }
  std::sort(report.clusters.begin(), report.clusters.end(),
            [&](const ReportCluster& a, const ReportCluster& b) {
              return graph.index_of_or_throw(a.instances.front()) <
                     graph.index_of_or_throw(b.instances.front());
            });
  return report;
}

/// Every compatible weighting x symmetrization x algorithm x metric x cutoff
/// combination, in that nesting order.
inline std::vector<ClusterConfig> default_grid(std::span<const double> cutoffs = kDefaultCutoffs) {
  std::vector<ClusterConfig> out;
  for (auto w : kAllWeightings) {
    for (auto s : kAllSymmetrizations) {
      for (auto a : kAllAlgorithms) {
        if (!is_compatible(s, a)) continue;
        for (auto m : kAllMetrics) {
          for (double c : cutoffs) out.push_back({w, s, a, m, Cutoff(c), false});
        }
      }
    }
  }
  return out;
}

/// Runs every configuration. Failures are recorded on the matching report.
/// Reports come back in config order regardless of `threads`.
/// When `wall_ms` is given it receives the wall time of each run.
inline std::vector<ClusterReport> grid_sweep(const Workflow& wf, std::span<const ClusterConfig> configs,
                                             unsigned threads = 1,
                                             std::vector<double>* wall_ms = nullptr) {
  std::vector<ClusterReport> out(configs.size());
  if (wall_ms) wall_ms->assign(configs.size(), 0.0);
  auto run_one = [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    struct Timer {
      std::vector<double>* sink;
      std::size_t index;
      std::chrono::steady_clock::time_point start;
      ~Timer() {
        if (sink) {
          (*sink)[index] =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
      }
    } timer{wall_ms, i, start};
    try {
      out[i] = run_pipeline(wf, configs[i]);
    } catch (const std::exception& e) {
      out[i] = ClusterReport{};
      out[i].config = configs[i];
      out[i].error = e.what();
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(configs.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < configs.size(); ++i) run_one(i);
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < configs.size(); i += threads) run_one(i);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace wfgroup
