#pragma once

// Serialization of reports and graphs: report JSON (round-trippable), graph
// JSON, and Graphviz DOT with one cluster box per group.

#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wfgroup/graph.hpp"
#include "wfgroup/pipeline.hpp"

namespace wfgroup {

inline nlohmann::ordered_json to_json(const ClusterConfig& c) {
  nlohmann::ordered_json j;
  j["weighting"] = std::string(to_string(c.weighting));
  j["symmetrization"] = std::string(to_string(c.symmetrization));
  j["algorithm"] = std::string(to_string(c.algorithm));
  j["metric"] = std::string(to_string(c.metric));
  j["cutoff"] = c.cutoff.value();
  j["hopPaths"] = c.hop_paths;
  return j;
}

inline nlohmann::ordered_json to_json(const ClusterReport& r) {
  nlohmann::ordered_json j;
  j["config"] = to_json(r.config);
  j["iterations"] = r.iterations;
  auto clusters = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.clusters.size(); ++i) {
    const auto& c = r.clusters[i];
    nlohmann::ordered_json cj;
    cj["id"] = i;
    cj["instances"] = c.instances;
    cj["metricScore"] = c.metric_score;
    cj["termination"] = std::string(to_string(c.termination));
    clusters.push_back(std::move(cj));
  }
  j["clusters"] = std::move(clusters);
  if (r.error) j["error"] = *r.error;
  return j;
}

inline std::string report_to_string(const ClusterReport& r) { return to_json(r).dump(2) + "\n"; }

inline ClusterConfig config_from_json(const nlohmann::json& j) {
  ClusterConfig c;
  try {
    c.weighting = parse_weighting(j.at("weighting").get<std::string>());
    c.symmetrization = parse_symmetrization(j.at("symmetrization").get<std::string>());
    c.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    c.metric = parse_metric(j.at("metric").get<std::string>());
    c.cutoff = Cutoff(j.at("cutoff").get<double>());
    c.hop_paths = j.value("hopPaths", false);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedDocument, e.what());
  }
  return c;
}

inline ClusterReport report_from_json(const nlohmann::json& j) {
  ClusterReport r;
  try {
    r.config = config_from_json(j.at("config"));
    r.iterations = j.at("iterations").get<std::size_t>();
    for (const auto& cj : j.at("clusters")) {
      ReportCluster c;
      c.instances = cj.at("instances").get<std::vector<std::string>>();
      c.metric_score = cj.at("metricScore").get<double>();
      c.termination = parse_termination(cj.at("termination").get<std::string>());
      r.clusters.push_back(std::move(c));
    }
    if (j.contains("error")) r.error = j.at("error").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedDocument, e.what());
  }
  return r;
}

inline ClusterReport parse_report(std::string_view text) {
  try {
    return report_from_json(nlohmann::json::parse(text.begin(), text.end()));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::MalformedDocument, e.what());
  }
}

inline nlohmann::ordered_json graph_to_json(const WeightedDigraph& g) {
  nlohmann::ordered_json j;
  j["vertices"] = g.vertices();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) {
    nlohmann::ordered_json ej;
    ej["source"] = g.id(e.source);
    ej["target"] = g.id(e.target);
    ej["weight"] = e.weight;
    edges.push_back(std::move(ej));
  }
  j["edges"] = std::move(edges);
  return j;
}

namespace detail {

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  out += '"';
  return out;
}

inline std::string format_weight(double w) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", w);
  return buf;
}

}  // namespace detail

/// DOT digraph with edge weights as labels. When `groups` is non-empty each
/// group is drawn as a `cluster_<i>` subgraph.
inline std::string to_dot(const WeightedDigraph& g, std::string_view name,
                          const std::vector<ReportCluster>& groups = {}) {
  std::ostringstream os;
  os << "digraph " << detail::dot_quote(name) << " {\n";
  std::vector<char> placed(g.vertex_count(), 0);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    os << "  subgraph cluster_" << i << " {\n";
    os << "    label=" << detail::dot_quote("group " + std::to_string(i)) << ";\n";
    for (const auto& id : groups[i].instances) {
      os << "    " << detail::dot_quote(id) << ";\n";
      if (auto v = g.index_of(id)) placed[*v] = 1;
    }
    os << "  }\n";
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!placed[v]) os << "  " << detail::dot_quote(g.id(v)) << ";\n";
  }
  for (const auto& e : g.edges()) {
    os << "  " << detail::dot_quote(g.id(e.source)) << " -> " << detail::dot_quote(g.id(e.target))
       << " [label=" << detail::dot_quote(detail::format_weight(e.weight)) << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace wfgroup
