#include "backhaul/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

namespace backhaul {

double ScenarioRng::unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double ScenarioRng::uniform(double lo, double hi) { return lo + unit() * (hi - lo); }

double ScenarioRng::normal(double mean, double sigma) {
  const double u1 = 1.0 - unit();  // (0, 1]
  const double u2 = unit();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  return mean + sigma * mag * std::cos(2.0 * std::numbers::pi * u2);
}

void ScenarioParams::validate() const {
  if (grid_side < 1) throw std::invalid_argument("grid_side must be >= 1");
  if (!(mean_spacing > 0)) throw std::invalid_argument("mean_spacing must be positive");
  if (!(jitter_sigma >= 0)) throw std::invalid_argument("jitter_sigma must be non-negative");
  if (!(mesh_factor > 0)) throw std::invalid_argument("mesh_factor must be positive");
  if (wavelengths_per_link < 1) throw std::invalid_argument("K must be >= 1");
  if (wavelength_capacity <= kZeroGbps) {
    throw std::invalid_argument("wavelength_capacity must be positive");
  }
  if (cbs_count < 0) throw std::invalid_argument("cbs_count must be non-negative");
  if (hotspot_fraction < 0 || hotspot_fraction > 1) {
    throw std::invalid_argument("hotspot_fraction must be in [0, 1]");
  }
  if (!(hotspot_sigma >= 0)) throw std::invalid_argument("hotspot_sigma must be non-negative");
  if (!(cbs_radius_factor > 0)) throw std::invalid_argument("cbs_radius_factor must be positive");
  if (demand <= kZeroGbps) throw std::invalid_argument("demand must be positive");
  if (!(rtt_budget > 0)) throw std::invalid_argument("rtt_budget must be positive");
}

namespace {

std::map<std::string, std::string> parse_flat_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto strip = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (strip(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": empty key or value");
    }
    if (!kv.emplace(key, value).second) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": duplicate key '" +
                                  key + "'");
    }
  }
  return kv;
}

}  // namespace

ScenarioParams ScenarioParams::from_config(std::istream& in) {
  auto kv = parse_flat_config(in);
  ScenarioParams p;
  bool jitter_given = false, hotspot_sigma_given = false;
  for (const auto& [key, value] : kv) {
    if (key == "grid_side") p.grid_side = static_cast<int>(parse_double(value));
    else if (key == "mean_spacing") p.mean_spacing = parse_double(value);
    else if (key == "jitter_sigma") { p.jitter_sigma = parse_double(value); jitter_given = true; }
    else if (key == "mesh_factor") p.mesh_factor = parse_double(value);
    else if (key == "K") p.wavelengths_per_link = static_cast<int>(parse_double(value));
    else if (key == "wavelength_capacity") p.wavelength_capacity = Gbps::parse(value);
    else if (key == "cbs_count") p.cbs_count = static_cast<int>(parse_double(value));
    else if (key == "hotspot_fraction") p.hotspot_fraction = parse_double(value);
    else if (key == "hotspot_sigma") { p.hotspot_sigma = parse_double(value); hotspot_sigma_given = true; }
    else if (key == "cbs_radius_factor") p.cbs_radius_factor = parse_double(value);
    else if (key == "demand") p.demand = Gbps::parse(value);
    else if (key == "rtt_budget") p.rtt_budget = parse_double(value);
    else if (key == "seed") p.seed = static_cast<std::uint64_t>(std::stoull(value));
    else throw std::invalid_argument("unknown scenario config key '" + key + "'");
  }
  // defaults tied to the spacing unless overridden
  if (!jitter_given) p.jitter_sigma = p.mean_spacing / 8.0;
  if (!hotspot_sigma_given) p.hotspot_sigma = p.mean_spacing / 4.0;
  p.validate();
  return p;
}

ScenarioParams ScenarioParams::from_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return from_config(in);
}

std::vector<Vertex> place_base_stations(const ScenarioParams& params, ScenarioRng& rng) {
  params.validate();
  std::vector<Vertex> vertices;
  vertices.reserve(static_cast<std::size_t>(params.grid_side) * params.grid_side);
  for (int i = 0; i < params.grid_side; ++i) {
    for (int j = 0; j < params.grid_side; ++j) {
      // draws happen even for sigma = 0 (exact zeros) to keep the stream layout fixed
      const double dx = rng.normal(0.0, params.jitter_sigma);
      const double dy = rng.normal(0.0, params.jitter_sigma);
      const int id = static_cast<int>(vertices.size());
      vertices.push_back({id, i * params.mean_spacing + dx, j * params.mean_spacing + dy});
    }
  }
  return vertices;
}

BackhaulGraph generate_mesh(std::span<const Vertex> vertices, const ScenarioParams& params) {
  BackhaulGraph g;
  for (const Vertex& v : vertices) g.add_vertex(v.x, v.y);
  const double reach = params.mesh_factor * params.mean_spacing;
  for (int u = 0; u < g.vertex_count(); ++u) {
    for (int v = u + 1; v < g.vertex_count(); ++v) {
      const double dx = g.vertex(u).x - g.vertex(v).x;
      const double dy = g.vertex(u).y - g.vertex(v).y;
      const double dist = std::hypot(dx, dy);
      if (dist <= reach) {
        g.add_link(u, v, dist, params.wavelengths_per_link, params.wavelength_capacity);
      }
    }
  }
  return g;
}

namespace {

std::vector<int> members_within(const BackhaulGraph& graph, double cx, double cy, double radius) {
  std::vector<int> members;
  for (const Vertex& v : graph.vertices()) {
    if (std::hypot(v.x - cx, v.y - cy) <= radius) members.push_back(v.id);
  }
  return members;
}

}  // namespace

std::vector<CBSSpec> generate_cbs_set(const BackhaulGraph& graph, const ScenarioParams& params,
                                      ScenarioRng& rng) {
  if (graph.vertex_count() == 0) throw std::invalid_argument("graph has no vertices");

  double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
  double min_y = min_x, max_y = -min_x;
  for (const Vertex& v : graph.vertices()) {
    min_x = std::min(min_x, v.x);
    max_x = std::max(max_x, v.x);
    min_y = std::min(min_y, v.y);
    max_y = std::max(max_y, v.y);
  }

  const double hotspot_x = rng.uniform(min_x, max_x);
  const double hotspot_y = rng.uniform(min_y, max_y);
  const double radius = params.cbs_radius_factor * params.mean_spacing;

  // round(h * cbs_count) hotspot slots, spread over the index range so the
  // input order is not sorted by class.
  auto hotspot_slot = [&](int i) {
    const double h = params.hotspot_fraction;
    return std::floor((i + 1) * h + 0.5) > std::floor(i * h + 0.5);
  };

  std::vector<CBSSpec> cbs;
  cbs.reserve(params.cbs_count);
  for (int i = 0; i < params.cbs_count; ++i) {
    CBSSpec spec;
    spec.id = i;
    spec.demand_per_bs = params.demand;
    spec.rtt_budget = params.rtt_budget;
    spec.hotspot_generated = hotspot_slot(i);
    do {
      double cx, cy;
      if (spec.hotspot_generated) {
        cx = rng.normal(hotspot_x, params.hotspot_sigma);
        cy = rng.normal(hotspot_y, params.hotspot_sigma);
      } else {
        cx = rng.uniform(min_x, max_x);
        cy = rng.uniform(min_y, max_y);
      }
      spec.members = members_within(graph, cx, cy, radius);
    } while (spec.members.empty());
    cbs.push_back(std::move(spec));
  }
  return cbs;
}

Scenario generate_scenario(const ScenarioParams& params) {
  params.validate();
  ScenarioRng rng(params.seed);
  Scenario s;
  const auto vertices = place_base_stations(params, rng);
  s.graph = generate_mesh(vertices, params);
  s.cbs = generate_cbs_set(s.graph, params, rng);
  return s;
}

void write_scenario(std::ostream& out, const Scenario& scenario) {
  scenario.graph.write(out);
  for (const CBSSpec& c : scenario.cbs) {
    out << "C " << c.id << ' ' << c.demand_per_bs.str() << ' ' << format_double(c.rtt_budget);
    for (int m : c.members) out << ' ' << m;
    out << '\n';
  }
}

Scenario read_scenario(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();

  Scenario s;
  {
    std::istringstream graph_pass(buffer.str());
    s.graph = BackhaulGraph::read(graph_pass);
  }
  std::istringstream cbs_pass(buffer.str());
  std::string line;
  int line_no = 0;
  while (std::getline(cbs_pass, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag != "C") continue;
    CBSSpec spec;
    std::string demand, budget;
    if (!(fields >> spec.id >> demand >> budget)) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": malformed C line");
    }
    spec.demand_per_bs = Gbps::parse(demand);
    spec.rtt_budget = parse_double(budget);
    int member;
    while (fields >> member) {
      if (member < 0 || member >= s.graph.vertex_count()) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": member " +
                                    std::to_string(member) + " is not a graph vertex");
      }
      spec.members.push_back(member);
    }
    if (spec.members.empty()) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": CBS has no members");
    }
    std::sort(spec.members.begin(), spec.members.end());
    spec.members.erase(std::unique(spec.members.begin(), spec.members.end()), spec.members.end());
    s.cbs.push_back(std::move(spec));
  }
  return s;
}

Scenario read_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  return read_scenario(in);
}

std::uint64_t scenario_hash(const Scenario& scenario) {
  std::ostringstream out;
  write_scenario(out, scenario);
  const std::string text = out.str();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace backhaul
