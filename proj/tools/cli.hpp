#pragma once

// `wfgroup` command-line front end. Exit codes: 0 success, 1 internal error,
// 2 input error (unreadable or invalid workflow, bad arguments), 3 config
// error (incompatible symmetrization/algorithm, cutoff out of range).

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wfgroup/generator.hpp"
#include "wfgroup/graph_build.hpp"
#include "wfgroup/pipeline.hpp"
#include "wfgroup/report.hpp"
#include "wfgroup/workflow.hpp"

namespace wfgroup::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kInputError = 2, kConfigError = 3 };

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IncompatibleConfig: return kConfigError;
    case ErrorKind::MalformedDocument:
    case ErrorKind::UnknownEnumValue:
    case ErrorKind::DanglingEndpoint:
    case ErrorKind::DuplicateInstanceId:
    case ErrorKind::InvalidSpec:
    case ErrorKind::InvalidArgument: return kInputError;
    default: return kInternal;
  }
}

inline Workflow load_workflow(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read '" + path + "'");
  return parse_workflow(in);
}

struct ConfigFlags {
  std::string weighting = "data";
  std::optional<std::string> symmetrization;
  std::string algorithm = "betweenness";
  std::string metric = "modularity";
  double cutoff = 0.2;
  bool hop_paths = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--weighting", weighting, "Edge weighting")
        ->check(CLI::IsMember({"data", "reciprocal", "unit"}));
    cmd.add_option("--symmetrization", symmetrization,
                   "Symmetrization (default: none for betweenness, naive otherwise)")
        ->check(CLI::IsMember({"none", "naive", "bibliometric"}));
    cmd.add_option("--algorithm", algorithm, "Clustering algorithm")
        ->check(CLI::IsMember({"betweenness", "agglomerative", "spectral"}));
    cmd.add_option("--metric", metric, "Stopping metric")
        ->check(CLI::IsMember({"density", "global-cc", "local-cc", "modularity"}));
    cmd.add_option("--cutoff", cutoff, "Stopping cutoff in [0,1]");
    cmd.add_flag("--hop-paths", hop_paths, "Betweenness counts hops instead of 1/weight");
  }

  ClusterConfig resolve() const {
    ClusterConfig c;
    c.weighting = parse_weighting(weighting);
    c.algorithm = parse_algorithm(algorithm);
    c.symmetrization = symmetrization ? parse_symmetrization(*symmetrization)
                       : c.algorithm == AlgorithmKind::EdgeBetweenness ? SymmetrizationKind::None
                                                                       : SymmetrizationKind::Naive;
    c.metric = parse_metric(metric);
    c.cutoff = Cutoff(cutoff);
    c.hop_paths = hop_paths;
    if (!is_compatible(c)) {
      throw Error(ErrorKind::IncompatibleConfig,
                  algorithm + " is undirected and needs --symmetrization naive|bibliometric");
    }
    return c;
  }
};

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Emitter {
 public:
  Emitter(std::ostream& out, std::string path) : out_(out), path_(std::move(path)) {}

  void write(const std::string& text) {
    if (path_.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(path_, std::ios::binary);
    if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path_ + "'");
    file << text;
  }

 private:
  std::ostream& out_;
  std::string path_;
};

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group semantically related tool instances in workflow graphs", "wfgroup"};
  app.require_subcommand(1);

  std::string workflow_path;
  std::string output_path;
  std::string format = "json";
  ConfigFlags flags;

  auto* cluster = app.add_subcommand("cluster", "Cluster one workflow with one configuration");
  cluster->add_option("workflow", workflow_path, "Workflow JSON file")->required();
  flags.attach(*cluster);
  cluster->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "dot"}));
  cluster->add_option("-o,--output", output_path, "Write to file instead of stdout");

  std::string weightings = "data,reciprocal,unit";
  std::string symmetrizations = "none,naive,bibliometric";
  std::string algorithms = "betweenness,agglomerative,spectral";
  std::string metrics = "density,global-cc,local-cc,modularity";
  std::string cutoffs = "0.2,0.4,0.6,0.8";
  std::string sweep_format = "table";
  unsigned threads = 1;
  bool sweep_hops = false;
  auto* sweep = app.add_subcommand("sweep", "Run a grid of configurations");
  sweep->add_option("workflow", workflow_path, "Workflow JSON file")->required();
  sweep->add_option("--weightings", weightings, "Comma-separated weightings");
  sweep->add_option("--symmetrizations", symmetrizations, "Comma-separated symmetrizations");
  sweep->add_option("--algorithms", algorithms, "Comma-separated algorithms");
  sweep->add_option("--metrics", metrics, "Comma-separated metrics");
  sweep->add_option("--cutoffs", cutoffs, "Comma-separated cutoffs");
  sweep->add_option("--format", sweep_format, "table or json")->check(CLI::IsMember({"table", "json"}));
  sweep->add_option("--threads", threads, "Worker threads");
  sweep->add_flag("--hop-paths", sweep_hops, "Betweenness counts hops instead of 1/weight");
  sweep->add_option("-o,--output", output_path, "Write to file instead of stdout");

  std::string export_weighting = "data";
  std::string export_symmetrization = "none";
  auto* export_graph = app.add_subcommand("export-graph", "Write the workflow graph");
  export_graph->add_option("workflow", workflow_path, "Workflow JSON file")->required();
  export_graph->add_option("--weighting", export_weighting, "Edge weighting")
      ->check(CLI::IsMember({"data", "reciprocal", "unit"}));
  export_graph->add_option("--symmetrization", export_symmetrization, "Symmetrization")
      ->check(CLI::IsMember({"none", "naive", "bibliometric"}));
  export_graph->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "dot"}));
  export_graph->add_option("-o,--output", output_path, "Write to file instead of stdout");

  SyntheticSpec spec;
  auto* generate = app.add_subcommand("generate", "Emit a seeded synthetic workflow");
  generate->add_option("--groups", spec.groups, "Number of planted groups");
  generate->add_option("--min-size", spec.min_group_size, "Smallest group size");
  generate->add_option("--max-size", spec.max_group_size, "Largest group size");
  generate->add_option("--p-intra", spec.intra_probability, "Extra link probability inside a group");
  generate->add_option("--p-inter", spec.inter_probability, "Link probability across groups");
  generate->add_option("--min-links", spec.min_connections_per_link, "Fewest connections per link");
  generate->add_option("--max-links", spec.max_connections_per_link, "Most connections per link");
  generate->add_option("--seed", spec.seed, "Random seed");
  generate->add_option("--name", spec.name, "Workflow name");
  generate->add_option("-o,--output", output_path, "Write to file instead of stdout");

  int repetitions = 5;
  auto* bench = app.add_subcommand("bench", "Time the pipeline for one configuration");
  bench->add_option("workflow", workflow_path, "Workflow JSON file")->required();
  flags.attach(*bench);
  bench->add_option("--repetitions", repetitions, "Number of timed runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    Emitter emit(out, output_path);

    if (*cluster) {
      const auto config = flags.resolve();
      const auto wf = load_workflow(workflow_path);
      const auto report = run_pipeline(wf, config);
      if (format == "dot") {
        emit.write(to_dot(build_graph(wf, config.weighting), wf.name, report.clusters));
      } else {
        emit.write(report_to_string(report));
      }
      return kOk;
    }

    if (*sweep) {
      const auto wf = load_workflow(workflow_path);
      std::vector<double> cut_values;
      for (const auto& c : split_list(cutoffs)) {
        try {
          cut_values.push_back(std::stod(c));
        } catch (const std::exception&) {
          throw Error(ErrorKind::InvalidArgument, "bad cutoff '" + c + "'");
        }
      }
      std::vector<ClusterConfig> configs;
      for (const auto& w : split_list(weightings)) {
        for (const auto& s : split_list(symmetrizations)) {
          for (const auto& a : split_list(algorithms)) {
            const auto sk = parse_symmetrization(s);
            const auto ak = parse_algorithm(a);
            if (!is_compatible(sk, ak)) continue;
            for (const auto& m : split_list(metrics)) {
              for (double c : cut_values) {
                configs.push_back({parse_weighting(w), sk, ak, parse_metric(m), Cutoff(c), sweep_hops});
              }
            }
          }
        }
      }
      if (configs.empty()) err << "warning: the requested grid contains no compatible configuration\n";

      std::vector<double> wall_ms;
      const auto reports = grid_sweep(wf, configs, threads, &wall_ms);
      std::ostringstream os;
      if (sweep_format == "json") {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : reports) arr.push_back(to_json(r));
        os << arr.dump(2) << "\n";
      } else {
        os << "# config\tclusters\tmeanScore\twallMs\n";
        for (std::size_t i = 0; i < reports.size(); ++i) {
          const auto& r = reports[i];
          os << fingerprint(r.config) << '\t';
          if (r.error) {
            os << "ERROR\t-\t" << wall_ms[i] << '\t' << *r.error << '\n';
            continue;
          }
          double mean = 0.0;
          for (const auto& c : r.clusters) mean += c.metric_score;
          if (!r.clusters.empty()) mean /= static_cast<double>(r.clusters.size());
          os << r.clusters.size() << '\t' << mean << '\t' << wall_ms[i] << '\n';
        }
      }
      emit.write(os.str());
      const bool all_failed = !reports.empty() && std::all_of(reports.begin(), reports.end(),
                                                              [](const auto& r) { return r.error.has_value(); });
      return all_failed ? kInternal : kOk;
    }

    if (*export_graph) {
      const auto wf = load_workflow(workflow_path);
      const auto g = symmetrize(build_graph(wf, parse_weighting(export_weighting)),
                                parse_symmetrization(export_symmetrization));
      emit.write(format == "dot" ? to_dot(g, wf.name) : graph_to_json(g).dump(2) + "\n");
      return kOk;
    }

    if (*generate) {
      emit.write(serialize_workflow(generate_workflow(spec)));
      return kOk;
    }

    if (*bench) {
      if (repetitions < 1) throw Error(ErrorKind::InvalidArgument, "--repetitions must be >= 1");
      const auto config = flags.resolve();
      const auto wf = load_workflow(workflow_path);
      std::vector<double> times;
      for (int i = 0; i < repetitions; ++i) {
        const auto start = std::chrono::steady_clock::now();
        const auto report = run_pipeline(wf, config);
        times.push_back(
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
      }
      nlohmann::ordered_json j;
      j["config"] = to_json(config);
      j["repetitions"] = repetitions;
      j["meanMs"] = std::accumulate(times.begin(), times.end(), 0.0) / static_cast<double>(times.size());
      j["minMs"] = *std::min_element(times.begin(), times.end());
      j["maxMs"] = *std::max_element(times.begin(), times.end());
      out << j.dump(2) << "\n";
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

}  // namespace wfgroup::cli
