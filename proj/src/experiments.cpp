#include "backhaul/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace backhaul {

std::string_view variant_name(Variant variant) {
  switch (variant) {
    case Variant::prioritized: return "prioritized";
    case Variant::unprioritized: return "unprioritized";
    case Variant::static_reconfiguration: return "static_reconfiguration";
    case Variant::static_backhaul: return "static_backhaul";
  }
  throw std::logic_error("unreachable");
}

Variant parse_variant(std::string_view name) {
  for (Variant v : {Variant::prioritized, Variant::unprioritized,
                    Variant::static_reconfiguration, Variant::static_backhaul}) {
    if (variant_name(v) == name) return v;
  }
  throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

MetricsRow evaluate(const BackhaulGraph& graph, std::span<const CBSSpec> cbs_set,
                    const HeuristicResult& result) {
  MetricsRow row;
  const std::size_t total = cbs_set.size();
  row.feasibility = total == 0 ? 1.0 : static_cast<double>(result.placements.size()) / total;
  row.wavelengths_total = graph.active_wavelength_count();
  int max_per_link = 0;
  for (int link = 0; link < graph.link_count(); ++link) {
    max_per_link = std::max(max_per_link, graph.active_on_link(link));
  }
  row.wavelengths_per_link_max = max_per_link;
  row.wavelengths_per_link_mean =
      graph.link_count() == 0 ? 0.0
                              : static_cast<double>(row.wavelengths_total) / graph.link_count();
  return row;
}

void ExperimentConfig::validate() const {
  base.validate();
  thresholds.validate();
  weights.validate();
  if (cbs_counts.empty()) throw std::invalid_argument("cbs_counts must be non-empty");
  if (demands.empty()) throw std::invalid_argument("demands must be non-empty");
  if (hotspot_fractions.empty()) throw std::invalid_argument("hotspot_fractions must be non-empty");
  if (variants.empty()) throw std::invalid_argument("variants must be non-empty");
  if (replications < 1) throw std::invalid_argument("replications must be >= 1");
  for (int c : cbs_counts) {
    if (c < 1) throw std::invalid_argument("cbs_count values must be >= 1");
  }
  for (double h : hotspot_fractions) {
    if (h < 0 || h > 1) throw std::invalid_argument("hotspot_fraction values must be in [0, 1]");
  }
  for (Gbps d : demands) {
    if (d <= kZeroGbps) throw std::invalid_argument("demand values must be positive");
  }
}

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    items.push_back(item.substr(b, e - b + 1));
  }
  if (items.empty()) throw std::invalid_argument("empty list: '" + text + "'");
  return items;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_config(std::istream& in) {
  // reuse the scenario parser for shared keys by splitting the config text
  std::stringstream scenario_part, rest;
  std::string line;
  std::vector<std::pair<std::string, std::string>> sweep_keys;
  while (std::getline(in, line)) {
    std::string stripped = line;
    auto hash = stripped.find('#');
    if (hash != std::string::npos) stripped.erase(hash);
    auto eq = stripped.find('=');
    std::string key;
    if (eq != std::string::npos) {
      key = stripped.substr(0, eq);
      auto b = key.find_first_not_of(" \t");
      auto e = key.find_last_not_of(" \t");
      key = b == std::string::npos ? std::string() : key.substr(b, e - b + 1);
    }
    static const char* scenario_keys[] = {"grid_side", "mean_spacing", "jitter_sigma",
                                          "mesh_factor", "K", "wavelength_capacity",
                                          "hotspot_sigma", "cbs_radius_factor", "rtt_budget"};
    bool is_scenario = false;
    for (const char* sk : scenario_keys) is_scenario = is_scenario || key == sk;
    if (is_scenario) {
      scenario_part << stripped << '\n';
    } else if (!key.empty()) {
      auto b = stripped.find_first_not_of(" \t", eq + 1);
      auto e = stripped.find_last_not_of(" \t\r");
      sweep_keys.emplace_back(key, b == std::string::npos || b > e
                                       ? std::string()
                                       : stripped.substr(b, e - b + 1));
    }
  }

  ExperimentConfig config;
  config.base = ScenarioParams::from_config(scenario_part);

  for (const auto& [key, value] : sweep_keys) {
    if (value.empty()) throw std::invalid_argument("empty value for key '" + key + "'");
    if (key == "cbs_counts") {
      config.cbs_counts.clear();
      for (const auto& item : split_list(value)) {
        config.cbs_counts.push_back(static_cast<int>(parse_double(item)));
      }
    } else if (key == "demands") {
      config.demands.clear();
      for (const auto& item : split_list(value)) config.demands.push_back(Gbps::parse(item));
    } else if (key == "hotspot_fractions") {
      config.hotspot_fractions.clear();
      for (const auto& item : split_list(value)) {
        config.hotspot_fractions.push_back(parse_double(item));
      }
    } else if (key == "variants") {
      config.variants.clear();
      for (const auto& item : split_list(value)) config.variants.push_back(parse_variant(item));
    } else if (key == "replications") {
      config.replications = static_cast<int>(parse_double(value));
    } else if (key == "base_seed") {
      config.base_seed = static_cast<std::uint64_t>(std::stoull(value));
    } else if (key == "output") {
      config.output = value;
    } else if (key == "t_v") {
      config.thresholds.t_v = parse_double(value);
    } else if (key == "t_h") {
      config.thresholds.t_h = parse_double(value);
    } else if (key == "w_g") {
      config.weights.w_g = parse_double(value);
    } else if (key == "w_a") {
      config.weights.w_a = parse_double(value);
    } else if (key == "w_l") {
      config.weights.w_l = parse_double(value);
    } else if (key == "fixed_root") {
      config.fixed_root = static_cast<int>(parse_double(value));
    } else if (key == "static_wavelength") {
      config.static_wavelength = static_cast<int>(parse_double(value));
    } else {
      throw std::invalid_argument("unknown experiment config key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

ExperimentConfig ExperimentConfig::from_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return from_config(in);
}

std::uint64_t replication_seed(std::uint64_t base_seed, int replication) {
  std::uint64_t z = base_seed + static_cast<std::uint64_t>(replication) + 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace {

MetricsRow run_variant(const Scenario& scenario, Variant variant,
                       const ExperimentConfig& config) {
  MetricsRow row;
  const auto started = std::chrono::steady_clock::now();
  const int root =
      config.fixed_root >= 0 ? config.fixed_root : centroid_vertex(scenario.graph);

  switch (variant) {
    case Variant::prioritized: {
      BackhaulGraph graph = scenario.graph;
      const auto result = run_heuristic(graph, scenario.cbs, config.thresholds, config.weights);
      row = evaluate(graph, scenario.cbs, result);
      break;
    }
    case Variant::unprioritized: {
      BackhaulGraph graph = scenario.graph;
      const auto result = place_in_order(graph, scenario.cbs, config.weights);
      row = evaluate(graph, scenario.cbs, result);
      break;
    }
    case Variant::static_reconfiguration: {
      BackhaulGraph graph = scenario.graph;
      const auto result =
          static_reconfiguration(graph, scenario.cbs, root, config.thresholds, config.weights);
      row = evaluate(graph, scenario.cbs, result);
      break;
    }
    case Variant::static_backhaul: {
      const auto report =
          static_backhaul(scenario.graph, scenario.cbs, root, config.static_wavelength);
      row.feasibility = 1.0;  // no a-priori admission control
      row.wavelengths_total = static_cast<int>(report.pairs.size());
      row.wavelengths_per_link_mean =
          scenario.graph.link_count() == 0
              ? 0.0
              : static_cast<double>(report.pairs.size()) / scenario.graph.link_count();
      row.wavelengths_per_link_max = report.pairs.empty() ? 0 : 1;
      break;
    }
  }
  row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  row.variant = variant;
  row.prioritized =
      variant == Variant::prioritized || variant == Variant::static_reconfiguration;
  return row;
}

}  // namespace

std::vector<MetricsRow> run_sweep(const ExperimentConfig& config, int jobs) {
  config.validate();
  if (jobs < 1) jobs = 1;

  struct Task {
    int cbs_count;
    Gbps demand;
    double hotspot_fraction;
    int replication;
  };
  std::vector<Task> tasks;
  for (int cbs_count : config.cbs_counts) {
    for (Gbps demand : config.demands) {
      for (double h : config.hotspot_fractions) {
        for (int r = 0; r < config.replications; ++r) {
          tasks.push_back({cbs_count, demand, h, r});
        }
      }
    }
  }

  std::vector<MetricsRow> rows(tasks.size() * config.variants.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (std::size_t t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1)) {
      const Task& task = tasks[t];
      ScenarioParams params = config.base;
      params.cbs_count = task.cbs_count;
      params.demand = task.demand;
      params.hotspot_fraction = task.hotspot_fraction;
      params.seed = replication_seed(config.base_seed, task.replication);
      const Scenario scenario = generate_scenario(params);
      const std::uint64_t hash = scenario_hash(scenario);
      for (std::size_t v = 0; v < config.variants.size(); ++v) {
        MetricsRow row = run_variant(scenario, config.variants[v], config);
        row.seed = params.seed;
        row.cbs_count = task.cbs_count;
        row.demand = task.demand;
        row.hotspot_fraction = task.hotspot_fraction;
        row.scenario_hash = hash;
        rows[t * config.variants.size() + v] = std::move(row);
      }
    }
  };

  if (jobs == 1 || tasks.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const int count = std::min<std::size_t>(jobs, tasks.size());
    pool.reserve(count);
    for (int i = 0; i < count; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  return rows;
}

std::string csv_string(std::span<const MetricsRow> rows) {
  std::ostringstream out;
  out << "seed,cbs_count,demand_gbps,h,variant,prioritized,feasibility,wl_total,"
         "wl_per_link_mean,wl_per_link_max,runtime_s\n";
  char buf[256];
  for (const MetricsRow& row : rows) {
    std::snprintf(buf, sizeof(buf), "%llu,%d,%.4f,%.4f,%s,%d,%.4f,%d,%.4f,%d,%.3f\n",
                  static_cast<unsigned long long>(row.seed), row.cbs_count, row.demand.gbps(),
                  row.hotspot_fraction, std::string(variant_name(row.variant)).c_str(),
                  row.prioritized ? 1 : 0, row.feasibility, row.wavelengths_total,
                  row.wavelengths_per_link_mean, row.wavelengths_per_link_max, row.runtime_s);
    out << buf;
  }
  return out.str();
}

std::string meta_string(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "artifact = backhaul 1.0\n";
  out << "grid_side = " << config.base.grid_side << '\n';
  out << "mean_spacing = " << format_double(config.base.mean_spacing) << '\n';
  out << "jitter_sigma = " << format_double(config.base.jitter_sigma) << '\n';
  out << "mesh_factor = " << format_double(config.base.mesh_factor) << '\n';
  out << "K = " << config.base.wavelengths_per_link << '\n';
  out << "wavelength_capacity = " << config.base.wavelength_capacity.str() << '\n';
  out << "hotspot_sigma = " << format_double(config.base.hotspot_sigma) << '\n';
  out << "cbs_radius_factor = " << format_double(config.base.cbs_radius_factor) << '\n';
  out << "rtt_budget = " << format_double(config.base.rtt_budget) << '\n';
  out << "cbs_counts =";
  for (std::size_t i = 0; i < config.cbs_counts.size(); ++i) {
    out << (i ? "," : " ") << config.cbs_counts[i];
  }
  out << '\n' << "demands =";
  for (std::size_t i = 0; i < config.demands.size(); ++i) {
    out << (i ? "," : " ") << config.demands[i].str();
  }
  out << '\n' << "hotspot_fractions =";
  for (std::size_t i = 0; i < config.hotspot_fractions.size(); ++i) {
    out << (i ? "," : " ") << format_double(config.hotspot_fractions[i]);
  }
  out << '\n' << "variants =";
  for (std::size_t i = 0; i < config.variants.size(); ++i) {
    out << (i ? "," : " ") << variant_name(config.variants[i]);
  }
  out << '\n';
  out << "replications = " << config.replications << '\n';
  out << "base_seed = " << config.base_seed << '\n';
  out << "output = " << config.output << '\n';
  out << "t_v = " << format_double(config.thresholds.t_v) << '\n';
  out << "t_h = " << format_double(config.thresholds.t_h) << '\n';
  out << "w_g = " << format_double(config.weights.w_g) << '\n';
  out << "w_a = " << format_double(config.weights.w_a) << '\n';
  out << "w_l = " << format_double(config.weights.w_l) << '\n';
  out << "fixed_root = " << config.fixed_root << '\n';
  out << "static_wavelength = " << config.static_wavelength << '\n';
  return out.str();
}

void emit_csv(std::span<const MetricsRow> rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << csv_string(rows);
  if (!out) throw std::runtime_error("write failed: " + path);
}

void emit_meta(const ExperimentConfig& config, const std::string& csv_path) {
  const std::string path = csv_path + ".meta";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << meta_string(config);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace backhaul
