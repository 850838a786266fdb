#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "backhaul/baselines.hpp"
#include "backhaul/placement.hpp"

namespace backhaul {

enum class Variant {
  prioritized,            // full heuristic with the prioritization step
  unprioritized,          // reference: CBSs processed in input order
  static_reconfiguration, // fixed controller, routing + assignment only
  static_backhaul,        // fixed controller, static wavelength, no admission
};

std::string_view variant_name(Variant variant);
Variant parse_variant(std::string_view name);

struct MetricsRow {
  std::uint64_t seed = 0;
  int cbs_count = 0;
  Gbps demand;
  double hotspot_fraction = 0;
  Variant variant = Variant::prioritized;
  bool prioritized = false;
  double feasibility = 1.0;
  int wavelengths_total = 0;
  double wavelengths_per_link_mean = 0;
  int wavelengths_per_link_max = 0;
  double runtime_s = 0;             // wall clock, excluded from determinism
  std::uint64_t scenario_hash = 0;  // pins paired-seed discipline; not in the CSV
};

// Feasibility and wavelength-usage metrics after a committed run (0/0
// feasibility defined as 1).
MetricsRow evaluate(const BackhaulGraph& graph, std::span<const CBSSpec> cbs_set,
                    const HeuristicResult& result);

struct ExperimentConfig {
  ScenarioParams base;
  std::vector<int> cbs_counts;
  std::vector<Gbps> demands;
  std::vector<double> hotspot_fractions;
  std::vector<Variant> variants;
  int replications = 1;
  std::uint64_t base_seed = 1;
  std::string output;
  PrioritizationThresholds thresholds;
  CostWeights weights;
  int fixed_root = -1;  // -1: vertex nearest the BS centroid
  int static_wavelength = 0;

  void validate() const;

  // Flat `key = value` config: scenario keys plus cbs_counts, demands,
  // hotspot_fractions, variants (comma lists), replications, base_seed,
  // output, t_v, t_h, w_g, w_a, w_l, fixed_root, static_wavelength.
  static ExperimentConfig from_config(std::istream& in);
  static ExperimentConfig from_config_file(const std::string& path);
};

// splitmix64 of base_seed + replication index; the per-replication
// scenario seed shared by every variant at a sweep point.
std::uint64_t replication_seed(std::uint64_t base_seed, int replication);

// Every sweep point x replication generates one scenario; every variant
// runs on its own copy. Rows ordered by (cbs_count, demand, h, replication,
// variant) regardless of the worker count.
std::vector<MetricsRow> run_sweep(const ExperimentConfig& config, int jobs = 1);

// Header: seed,cbs_count,demand_gbps,h,variant,prioritized,feasibility,
// wl_total,wl_per_link_mean,wl_per_link_max,runtime_s
std::string csv_string(std::span<const MetricsRow> rows);
void emit_csv(std::span<const MetricsRow> rows, const std::string& path);

// The resolved config, written next to the CSV as <csv_path>.meta.
std::string meta_string(const ExperimentConfig& config);
void emit_meta(const ExperimentConfig& config, const std::string& csv_path);

}  // namespace backhaul
