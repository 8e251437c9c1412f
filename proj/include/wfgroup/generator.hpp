#pragma once

// Seeded synthetic workflows with planted groups: each group is a main tool
// plus helpers, weakly connected by a random spanning tree, with extra links
// drawn per ordered pair. Ground-truth group names go into instance labels.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wfgroup/error.hpp"
#include "wfgroup/workflow.hpp"

namespace wfgroup {

struct SyntheticSpec {
  std::size_t groups = 40;
  std::size_t min_group_size = 6;
  std::size_t max_group_size = 7;
  double intra_probability = 0.03;   // extra link per ordered pair inside a group
  double inter_probability = 0.0008; // link per ordered pair across groups
  std::size_t min_connections_per_link = 1;
  std::size_t max_connections_per_link = 4;
  std::uint64_t seed = 1;
  std::string name = "synthetic";
};

inline void validate(const SyntheticSpec& s) {
  auto fail = [](const std::string& m) { throw Error(ErrorKind::InvalidSpec, m); };
  if (s.groups < 1) fail("groups must be >= 1");
  if (s.min_group_size < 1 || s.max_group_size < s.min_group_size) {
    fail("group size range must satisfy 1 <= min <= max");
  }
  if (!(s.intra_probability >= 0.0 && s.intra_probability <= 1.0)) fail("intra probability outside [0,1]");
  if (!(s.inter_probability >= 0.0 && s.inter_probability <= 1.0)) fail("inter probability outside [0,1]");
  if (s.min_connections_per_link < 1 || s.max_connections_per_link < s.min_connections_per_link) {
    fail("connections-per-link range must satisfy 1 <= min <= max");
  }
}

inline Workflow generate_workflow(const SyntheticSpec& spec) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  auto chance = [&](double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; };

  Workflow wf;
  wf.name = spec.name;
  std::vector<std::size_t> group_of;
  std::vector<std::vector<std::size_t>> groups(spec.groups);
  for (std::size_t g = 0; g < spec.groups; ++g) {
    const std::size_t size = uniform(spec.min_group_size, spec.max_group_size);
    for (std::size_t k = 0; k < size; ++k) {
      ToolInstance inst;
      inst.id = "g" + std::to_string(g) + "_t" + std::to_string(k);
      inst.tool = k == 0 ? "Solver" + std::to_string(g) : "Helper" + std::to_string(k);
      inst.label = "group" + std::to_string(g);
      groups[g].push_back(wf.instances.size());
      group_of.push_back(g);
      wf.instances.push_back(std::move(inst));
    }
  }

  auto link = [&](std::size_t s, std::size_t t) {
    const std::size_t count = uniform(spec.min_connections_per_link, spec.max_connections_per_link);
    for (std::size_t i = 0; i < count; ++i) {
      Connection cn;
      cn.source = wf.instances[s].id;
      cn.target = wf.instances[t].id;
      cn.data_type = kAllDataTypes[uniform(0, kAllDataTypes.size() - 1)];
      cn.constraint = kAllConstraints[uniform(0, kAllConstraints.size() - 1)];
      cn.handling = kAllHandlings[uniform(0, kAllHandlings.size() - 1)];
      wf.connections.push_back(std::move(cn));
    }
  };

  for (const auto& members : groups) {
    for (std::size_t k = 1; k < members.size(); ++k) {
      const auto other = members[uniform(0, k - 1)];
      if (chance(0.5)) {
        link(other, members[k]);
      } else {
        link(members[k], other);
      }
    }
  }
  const std::size_t n = wf.instances.size();
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (s == t) continue;
      const double p = group_of[s] == group_of[t] ? spec.intra_probability : spec.inter_probability;
      if (p > 0.0 && chance(p)) link(s, t);
    }
  }
  return wf;
}

}  // namespace wfgroup
