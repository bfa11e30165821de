#pragma once

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "voterct/dynamics.hpp"
#include "voterct/report.hpp"
#include "voterct/stats.hpp"
#include "voterct/sweep.hpp"

namespace voterct {

namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
}

inline std::vector<Rational> parse_densities(const std::string& spec) {
  std::vector<Rational> densities;
  std::istringstream fields(spec);
  std::string field;
  while (std::getline(fields, field, ','))
    densities.push_back(rational_from_string(field));
  if (densities.empty()) throw std::invalid_argument("empty density list");
  return densities;
}

inline std::pair<int, int> parse_range(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("range must be lo:hi, got " + spec);
  return {std::stoi(spec.substr(0, colon)), std::stoi(spec.substr(colon + 1))};
}

struct GraphOptions {
  std::string family;
  std::string graph_file;
  int f = 0, b = 0, r = 0, d_dim = 0;

  OpinionGraph build() const {
    if (family.empty() == graph_file.empty())
      throw std::invalid_argument("need exactly one of --graph / --graph-file");
    if (!graph_file.empty()) return load_graph(read_file(graph_file));
    GraphParams params;
    params.f = f;
    params.b = b;
    params.r = r;
    params.d_dim = d_dim;
    return build_named_graph(family, params);
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--graph", family,
                    "family: path|star|cycle|hypercube|tetrahedron|cube|"
                    "octahedron|dodecahedron|icosahedron");
    cmd->add_option("--graph-file", graph_file, "edge-list file ('u v' per line)");
    cmd->add_option("--F", f, "vertex count (path, cycle)");
    cmd->add_option("--b", b, "star branch count");
    cmd->add_option("--r", r, "star branch length");
    cmd->add_option("--d-dim", d_dim, "hypercube dimension");
  }
};

struct SpatialOptions {
  int ring_length = 0;
  int complete_n = 0;
  std::string spatial_file;

  SpatialGraph build() const {
    const int sources = (ring_length > 0) + (complete_n > 0) + !spatial_file.empty();
    if (sources > 1)
      throw std::invalid_argument(
          "need at most one of --ring-L / --complete-n / --spatial-file");
    if (sources == 0) return SpatialGraph::ring(1000);  // default stand-in for Z
    if (ring_length > 0) return SpatialGraph::ring(ring_length);
    if (complete_n > 0) return SpatialGraph::complete(complete_n);
    return SpatialGraph::from_edge_list(read_file(spatial_file));
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--ring-L", ring_length,
                    "ring circumference (stand-in for Z; default 1000)");
    cmd->add_option("--complete-n", complete_n, "complete spatial graph size");
    cmd->add_option("--spatial-file", spatial_file, "spatial edge-list file");
  }
};

inline std::string format_double(double value) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << value;
  return out.str();
}

inline std::string trajectory_csv(const TrajectoryStats& stats) {
  std::ostringstream out;
  out << "time,mean_pile,frozen_fraction,flips\n";
  for (const auto& row : stats.series)
    out << format_double(row.time) << ',' << format_double(row.mean_pile) << ','
        << format_double(row.frozen_fraction) << ',' << row.flips << '\n';
  return out.str();
}

inline std::string collisions_csv(const std::vector<CollisionSample>& samples) {
  std::ostringstream out;
  out << "s_minus,s_plus,s\n";
  for (const auto& c : samples)
    out << c.s_minus << ',' << c.s_plus << ',' << c.s << '\n';
  return out.str();
}

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv) {
  using namespace cli_detail;
  CLI::App app{"Exact criteria and simulation for voter models with a confidence threshold"};
  app.require_subcommand(1);

  // Shared state filled by whichever subcommand runs.
  GraphOptions graph_options;
  SpatialOptions spatial_options;
  std::string densities_spec;
  std::string out_path, collisions_path;
  int tau = -1;
  std::uint64_t seed = 0;
  int replicas = 1000;
  double horizon = 100.0;
  long event_cap = 100000000L;
  int sample_points = 100;

  auto* analyze = app.add_subcommand(
      "analyze", "exact fluctuation/fixation criteria for one model");
  graph_options.attach(analyze);
  analyze->add_option("--tau", tau, "confidence threshold")->required();
  analyze->add_option("--densities", densities_spec,
                      "comma-separated rationals (default: uniform)");
  analyze->add_option("--out", out_path, "also write the JSON report here");

  auto* simulate = app.add_subcommand(
      "simulate", "event-driven trajectory with pile statistics");
  graph_options.attach(simulate);
  spatial_options.attach(simulate);
  simulate->add_option("--tau", tau)->required();
  simulate->add_option("--densities", densities_spec);
  simulate->add_option("--seed", seed)->required();
  simulate->add_option("--horizon", horizon, "time horizon (default 100)");
  simulate->add_option("--sample-points", sample_points, "CSV rows (default 100)");
  simulate->add_option("--out", out_path, "trajectory CSV path")->required();
  simulate->add_option("--collisions-out", collisions_path,
                       "also log collision triples to this CSV");

  auto* consensus = app.add_subcommand(
      "consensus", "Monte Carlo consensus probability vs the center bound");
  graph_options.attach(consensus);
  spatial_options.attach(consensus);
  consensus->add_option("--tau", tau)->required();
  consensus->add_option("--densities", densities_spec);
  consensus->add_option("--seed", seed)->required();
  consensus->add_option("--replicas", replicas, "default 1000");
  consensus->add_option("--event-cap", event_cap, "per-replica event cap");
  consensus->add_option("--out", out_path, "also write the JSON document here");

  auto* sweep = app.add_subcommand(
      "sweep", "verdict table over a parameter range, or the summary preset");
  std::string sweep_family_name, param_range, tau_range, preset;
  int sweep_b = 3;
  sweep->add_option("--family", sweep_family_name, "path|cycle|star|hypercube");
  sweep->add_option("--param-range", param_range, "lo:hi for F, r, or d");
  sweep->add_option("--tau-range", tau_range, "lo:hi");
  sweep->add_option("--b", sweep_b, "star branches (default 3)");
  sweep->add_option("--preset", preset,
                    "'table1': re-derive the summary table of known regions");
  sweep->add_option("--out", out_path, "also write the JSON table here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    auto densities = [&]() -> std::optional<std::vector<Rational>> {
      if (densities_spec.empty() || densities_spec == "uniform")
        return std::nullopt;
      return parse_densities(densities_spec);
    };

    if (analyze->parsed()) {
      const ThresholdModel model(graph_options.build(), tau, densities());
      const auto report = classify(model);
      const std::string doc = to_json(report).dump(2);
      std::cout << doc << "\n";
      std::cout << report.graph_name << " tau=" << tau << ": "
                << verdict_name(report.verdict) << " (" << report.verdict_reason
                << ")\n";
      if (!out_path.empty()) write_file(out_path, doc + "\n");
      return 0;
    }

    if (simulate->parsed()) {
      const ThresholdModel model(graph_options.build(), tau, densities());
      const auto spatial = spatial_options.build();
      TrajectoryOptions options;
      options.sample_points = sample_points;
      options.record_collisions = !collisions_path.empty();
      const auto stats = run_trajectory(model, spatial, horizon, seed, 0, options);
      write_file(out_path, trajectory_csv(stats));
      if (!collisions_path.empty())
        write_file(collisions_path, collisions_csv(stats.collisions));
      std::cout << "final mean pile " << format_double(stats.final_mean_pile)
                << ", frozen fraction "
                << format_double(stats.final_frozen_fraction)
                << ", quiet fraction " << format_double(stats.quiet_fraction)
                << "\n";
      return 0;
    }

    if (consensus->parsed()) {
      const ThresholdModel model(graph_options.build(), tau, densities());
      const auto spatial = spatial_options.build();
      const auto estimate =
          estimate_consensus_probability(model, spatial, replicas, seed, event_cap);
      Json doc;
      doc["graph"] = model.graph.name();
      doc["tau"] = tau;
      doc["replicas"] = estimate.replica_count;
      doc["seed"] = estimate.seed;
      doc["consensus_probability"] = estimate.mean;
      doc["standard_error"] = estimate.standard_error;
      doc["absorbed"] = estimate.absorbed_count;
      doc["rho_cent"] = rational_to_string(estimate.rho_cent);
      doc["within_band"] = estimate.within_band;
      const std::string text = doc.dump(2);
      std::cout << text << "\n";
      if (!out_path.empty()) write_file(out_path, text + "\n");
      return 0;
    }

    // sweep
    Json doc;
    if (preset == "table1") {
      doc = to_json(run_table1_preset());
    } else if (!preset.empty()) {
      throw std::invalid_argument("unknown preset: " + preset);
    } else {
      if (sweep_family_name.empty() || param_range.empty() || tau_range.empty())
        throw std::invalid_argument(
            "sweep needs --family/--param-range/--tau-range or --preset table1");
      const auto [plo, phi] = parse_range(param_range);
      const auto [tlo, thi] = parse_range(tau_range);
      doc = to_json(sweep_family(sweep_family_name, plo, phi, tlo, thi, sweep_b));
    }
    const std::string text = doc.dump(2);
    std::cout << text << "\n";
    if (!out_path.empty()) write_file(out_path, text + "\n");
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace voterct
