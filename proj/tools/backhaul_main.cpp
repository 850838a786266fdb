#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "backhaul/baselines.hpp"
#include "backhaul/experiments.hpp"
#include "backhaul/records.hpp"
#include "backhaul/validate.hpp"

namespace {

using namespace backhaul;

struct WeightsOption {
  std::string text;

  CostWeights parse_or_default() const {
    CostWeights weights;
    if (text.empty()) return weights;
    const auto first = text.find(',');
    const auto second = text.find(',', first + 1);
    if (first == std::string::npos || second == std::string::npos) {
      throw std::invalid_argument("--weights expects wg,wa,wl");
    }
    weights.w_g = parse_double(text.substr(0, first));
    weights.w_a = parse_double(text.substr(first + 1, second - first - 1));
    weights.w_l = parse_double(text.substr(second + 1));
    weights.validate();
    return weights;
  }
};

struct ThresholdsOption {
  std::string text;

  PrioritizationThresholds parse_or_default() const {
    PrioritizationThresholds thresholds;
    if (text.empty()) return thresholds;
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("--thresholds expects tv,th");
    }
    thresholds.t_v = parse_double(text.substr(0, comma));
    thresholds.t_h = parse_double(text.substr(comma + 1));
    thresholds.validate();
    return thresholds;
  }
};

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

int cmd_generate(const std::string& config_path, const std::string& out_path,
                 std::optional<std::uint64_t> seed) {
  ScenarioParams params = ScenarioParams::from_config_file(config_path);
  if (seed) params.seed = *seed;
  const Scenario scenario = generate_scenario(params);
  if (out_path.empty()) {
    write_scenario(std::cout, scenario);
  } else {
    auto out = open_output(out_path);
    write_scenario(out, scenario);
  }
  return 0;
}

int cmd_place(const std::string& scenario_path, const std::string& out_path,
              const std::string& variant_name_arg, const WeightsOption& weights_opt,
              const ThresholdsOption& thresholds_opt, int fixed_root, int static_wavelength,
              bool strict) {
  const Scenario scenario = read_scenario_file(scenario_path);
  const CostWeights weights = weights_opt.parse_or_default();
  const PrioritizationThresholds thresholds = thresholds_opt.parse_or_default();
  const Variant variant = parse_variant(variant_name_arg);
  const int root = fixed_root >= 0 ? fixed_root : centroid_vertex(scenario.graph);

  if (variant == Variant::static_backhaul) {
    const auto report = static_backhaul(scenario.graph, scenario.cbs, root, static_wavelength);
    if (out_path.empty()) {
      report.write_csv(std::cout, scenario.graph);
    } else {
      auto out = open_output(out_path);
      report.write_csv(out, scenario.graph);
    }
    return 0;
  }

  BackhaulGraph graph = scenario.graph;
  HeuristicResult result;
  switch (variant) {
    case Variant::prioritized:
      result = run_heuristic(graph, scenario.cbs, thresholds, weights);
      break;
    case Variant::unprioritized:
      result = place_in_order(graph, scenario.cbs, weights);
      break;
    case Variant::static_reconfiguration:
      result = static_reconfiguration(graph, scenario.cbs, root, thresholds, weights);
      break;
    case Variant::static_backhaul:
      break;  // handled above
  }

  if (out_path.empty()) {
    write_placement_records(std::cout, result);
  } else {
    auto out = open_output(out_path);
    write_placement_records(out, result);
  }
  std::cerr << "placed " << result.placements.size() << "/" << scenario.cbs.size()
            << " CBSs\n";
  return strict && !result.infeasible.empty() ? 1 : 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_override,
              std::optional<std::uint64_t> seed, int jobs) {
  ExperimentConfig config = ExperimentConfig::from_config_file(config_path);
  if (seed) config.base_seed = *seed;
  if (!out_override.empty()) config.output = out_override;
  if (config.output.empty()) {
    throw std::invalid_argument("no output path (config `output =` or --out)");
  }
  // fail on unwritable output before any computation
  open_output(config.output);
  open_output(config.output + ".meta");

  const auto rows = run_sweep(config, jobs);
  emit_csv(rows, config.output);
  emit_meta(config, config.output);
  std::cerr << "wrote " << rows.size() << " rows to " << config.output << '\n';
  return 0;
}

int cmd_oracle_check(const std::string& scenario_path, const WeightsOption& weights_opt,
                     const ThresholdsOption& thresholds_opt, int max_hops) {
  const Scenario scenario = read_scenario_file(scenario_path);
  BackhaulGraph graph = scenario.graph;
  const int hops = max_hops > 0 ? max_hops : graph.vertex_count() - 1;
  const auto report = oracle_check(graph, scenario.cbs, thresholds_opt.parse_or_default(),
                                   weights_opt.parse_or_default(), hops);
  for (const OracleCheckRow& row : report.rows) {
    std::cout << "cbs " << row.cbs_id << ": heuristic "
              << (row.heuristic_feasible ? "feasible n=" + format_double(row.heuristic_n)
                                         : std::string("infeasible"))
              << ", oracle "
              << (row.oracle_feasible ? "feasible n=" + format_double(row.oracle_n)
                                      : std::string("infeasible"))
              << (row.violation ? "  VIOLATION" : "") << '\n';
  }
  std::cout << (report.violations == 0 ? "PASS" : "FAIL") << ": " << report.violations
            << " violations over " << report.rows.size() << " CBSs\n";
  return report.violations == 0 ? 0 : 1;
}

int cmd_validate(const std::string& scenario_path, const std::string& placements_path,
                 const WeightsOption& weights_opt) {
  const Scenario scenario = read_scenario_file(scenario_path);
  const HeuristicResult result = read_placement_records_file(placements_path);
  const auto report = validate_placements(scenario.graph, scenario.cbs, result.placements,
                                          result.infeasible, weights_opt.parse_or_default());
  for (const std::string& issue : report.issues) std::cerr << "violation: " << issue << '\n';
  std::cout << (report.ok() ? "PASS" : "FAIL") << ": " << report.issues.size()
            << " violations over " << report.placements_checked << " placements\n";
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BBU/controller placement and WDM backhaul wavelength allocation"};
  app.require_subcommand(1);
  app.footer(
      "Scenario config keys (key = value, # comments):\n"
      "  grid_side, mean_spacing, jitter_sigma, mesh_factor, K,\n"
      "  wavelength_capacity, cbs_count, hotspot_fraction, hotspot_sigma,\n"
      "  cbs_radius_factor, demand, rtt_budget, seed\n"
      "Experiment config adds:\n"
      "  cbs_counts, demands, hotspot_fractions, variants (comma lists),\n"
      "  replications, base_seed, output, t_v, t_h, w_g, w_a, w_l,\n"
      "  fixed_root, static_wavelength\n"
      "Rates are multiples of 1/16 Gb/s (0.625, 1.25, 2.5, ...).");

  std::string config_path, scenario_path, placements_path, out_path;
  std::string variant = "prioritized";
  WeightsOption weights;
  ThresholdsOption thresholds;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  int fixed_root = -1;
  int static_wavelength = 0;
  int max_hops = 0;
  bool strict = false;

  auto* generate = app.add_subcommand("generate", "Generate a scenario from a config file");
  generate->add_option("--config", config_path, "scenario config (key = value)")->required();
  generate->add_option("--out", out_path, "output scenario file (default stdout)");
  generate->add_option("--seed", seed, "override the config seed");

  auto* place = app.add_subcommand("place", "Run a placement variant on a scenario file");
  place->add_option("--scenario", scenario_path, "scenario file")->required();
  place->add_option("--out", out_path, "output records file (default stdout)");
  place->add_option("--variant", variant,
                    "prioritized | unprioritized | static_reconfiguration | static_backhaul");
  place->add_option("--weights", weights.text, "cost weights wg,wa,wl (default 1,1,1)");
  place->add_option("--thresholds", thresholds.text, "prioritization tv,th (default 0.1,0.9)");
  place->add_option("--fixed-root", fixed_root,
                    "controller vertex for the static variants (default: centroid)");
  place->add_option("--static-wavelength", static_wavelength,
                    "wavelength index for static_backhaul (default 0)");
  place->add_flag("--strict", strict, "exit 1 when any CBS is infeasible");

  auto* sweep = app.add_subcommand("sweep", "Run an experiment sweep to CSV");
  sweep->add_option("--config", config_path, "experiment config")->required();
  sweep->add_option("--out", out_path, "override the config output path");
  sweep->add_option("--seed", seed, "override the config base seed");
  sweep->add_option("--jobs", jobs, "worker threads (output is independent of this)");

  auto* oracle = app.add_subcommand("oracle-check",
                                    "Compare the heuristic against the brute-force oracle");
  oracle->add_option("--scenario", scenario_path, "small scenario file")->required();
  oracle->add_option("--weights", weights.text, "cost weights wg,wa,wl");
  oracle->add_option("--thresholds", thresholds.text, "prioritization tv,th");
  oracle->add_option("--max-hops", max_hops, "path hop bound (default |V|-1)");

  auto* validate = app.add_subcommand("validate", "Check placement records against a scenario");
  validate->add_option("--scenario", scenario_path, "scenario file")->required();
  validate->add_option("--placements", placements_path, "placement records file")->required();
  validate->add_option("--weights", weights.text, "cost weights used for the run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (generate->parsed()) return cmd_generate(config_path, out_path, seed);
    if (place->parsed()) {
      return cmd_place(scenario_path, out_path, variant, weights, thresholds, fixed_root,
                       static_wavelength, strict);
    }
    if (sweep->parsed()) return cmd_sweep(config_path, out_path, seed, jobs);
    if (oracle->parsed()) return cmd_oracle_check(scenario_path, weights, thresholds, max_hops);
    if (validate->parsed()) return cmd_validate(scenario_path, placements_path, weights);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
