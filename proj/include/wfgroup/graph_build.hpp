#pragma once

#include <array>
#include <map>
#include <string_view>
#include <utility>

#include "wfgroup/graph.hpp"
#include "wfgroup/workflow.hpp"

namespace wfgroup {

enum class WeightingKind { DataDriven, ReciprocalDataDriven, Unit };

inline constexpr std::array<WeightingKind, 3> kAllWeightings{
    WeightingKind::DataDriven, WeightingKind::ReciprocalDataDriven, WeightingKind::Unit};

inline std::string_view to_string(WeightingKind k) {
  switch (k) {
    case WeightingKind::DataDriven: return "data";
    case WeightingKind::ReciprocalDataDriven: return "reciprocal";
    case WeightingKind::Unit: return "unit";
  }
  return {};
}

// Larger payload types weigh more.
constexpr int type_weight(DataType dt) {
  switch (dt) {
    case DataType::Bool: return 12;
    case DataType::Int: return 13;
    case DataType::Float: return 14;
    case DataType::Vector: return 15;
    case DataType::Dir: return 16;
    case DataType::String: return 17;
    case DataType::SmallTable: return 18;
    case DataType::Matrix: return 19;
    case DataType::File: return 20;
  }
  return 0;
}

constexpr int constraint_weight(InputConstraint c) {
  switch (c) {
    case InputConstraint::None: return 0;
    case InputConstraint::NotRequired: return 3;
    case InputConstraint::RequiredIfConnected: return 4;
    case InputConstraint::Required: return 5;
  }
  return 0;
}

/// Data handling does not contribute.
constexpr int connection_weight(const Connection& cn) {
  return type_weight(cn.data_type) + constraint_weight(cn.constraint);
}

/// One vertex per instance (declaration order), one edge per ordered pair of
/// distinct instances joined by at least one connection. Self-loop
/// connections are dropped.
inline WeightedDigraph build_graph(const Workflow& wf, WeightingKind kind) {
  WeightedDigraph g;
  for (const auto& inst : wf.instances) g.add_vertex(inst.id);

  std::map<std::pair<std::size_t, std::size_t>, long> summed;
  for (const auto& cn : wf.connections) {
    const auto s = g.index_of_or_throw(cn.source);
    const auto t = g.index_of_or_throw(cn.target);
    if (s == t) continue;
    summed[{s, t}] += connection_weight(cn);
  }
  for (const auto& [pair, total] : summed) {
    double w = 1.0;
    switch (kind) {
      case WeightingKind::DataDriven: w = static_cast<double>(total); break;
      case WeightingKind::ReciprocalDataDriven: w = 1.0 / static_cast<double>(total); break;
      case WeightingKind::Unit: w = 1.0; break;
    }
    g.set_edge(pair.first, pair.second, w);
  }
  return g;
}

}  // namespace wfgroup
