#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "backhaul/topology.hpp"

namespace backhaul {

// Uniform/normal draws built directly on mt19937_64 so that scenarios are
// bit-identical across standard library implementations. Each normal()
// consumes exactly two raw draws (Box-Muller, second value discarded).
class ScenarioRng {
 public:
  explicit ScenarioRng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);  // [lo, hi)
  double normal(double mean, double sigma);

 private:
  double unit();  // [0, 1)
  std::mt19937_64 engine_;
};

struct ScenarioParams {
  int grid_side = 10;
  double mean_spacing = 1000.0;        // s-bar, meters
  double jitter_sigma = 125.0;         // s-bar / 8
  double mesh_factor = 1.5;
  int wavelengths_per_link = 4;        // K
  Gbps wavelength_capacity = Gbps::from_sixteenths(40);  // 2.5 Gb/s
  int cbs_count = 100;
  double hotspot_fraction = 0.0;       // h
  double hotspot_sigma = 250.0;        // s-bar / 4
  double cbs_radius_factor = 1.5;      // r
  Gbps demand = Gbps::from_sixteenths(20);  // 1.25 Gb/s per BS
  double rtt_budget = 5e-4;            // seconds
  std::uint64_t seed = 1;

  void validate() const;

  // Flat `key = value` config text, keys matching the field names
  // (grid_side, mean_spacing, jitter_sigma, mesh_factor, K,
  // wavelength_capacity, cbs_count, hotspot_fraction, hotspot_sigma,
  // cbs_radius_factor, demand, rtt_budget, seed). `#` comments.
  static ScenarioParams from_config(std::istream& in);
  static ScenarioParams from_config_file(const std::string& path);
};

struct CBSSpec {
  int id = 0;
  std::vector<int> members;  // sorted ascending, non-empty
  Gbps demand_per_bs;
  double rtt_budget = 0;  // round-trip seconds
  bool hotspot_generated = false;
};

struct Scenario {
  BackhaulGraph graph;
  std::vector<CBSSpec> cbs;
};

// Grid placement with per-vertex jitter; consumes two normal draws per
// vertex in id order.
std::vector<Vertex> place_base_stations(const ScenarioParams& params, ScenarioRng& rng);

// Link (u,v) iff euclidean distance <= mesh_factor * mean_spacing.
BackhaulGraph generate_mesh(std::span<const Vertex> vertices, const ScenarioParams& params);

// Hotspot center, then one center draw per CBS (hotspot-flagged slots from
// the normal distribution, the rest uniform over the BS bounding box);
// empty CBSs are redrawn from the same stream.
std::vector<CBSSpec> generate_cbs_set(const BackhaulGraph& graph, const ScenarioParams& params,
                                      ScenarioRng& rng);

// The full fixed-order generation: placement jitter, hotspot center, CBS centers.
Scenario generate_scenario(const ScenarioParams& params);

// Scenario text = topology lines plus `C <id> <demand> <rtt_budget> <members...>`.
void write_scenario(std::ostream& out, const Scenario& scenario);
Scenario read_scenario(std::istream& in);
Scenario read_scenario_file(const std::string& path);

// FNV-1a over the serialized scenario; used to pin paired-seed discipline.
std::uint64_t scenario_hash(const Scenario& scenario);

}  // namespace backhaul
