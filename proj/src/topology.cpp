#include "backhaul/topology.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace backhaul {

namespace {
// Constant folded first so that latency is a single multiplication; keeps
// latency(a*L) == a*latency(L) bit-exact for dyadic factors.
constexpr double kSecondsPerMeter = 1.45 / 299792458.0;
}  // namespace

double link_latency(double length_m) {
  if (!(length_m >= 0)) {
    throw std::invalid_argument("link length must be non-negative, got " +
                                std::to_string(length_m));
  }
  return length_m * kSecondsPerMeter;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("cannot parse number: '" + std::string(text) + "'");
  }
  return value;
}

int BackhaulGraph::add_vertex(double x, double y) {
  const int id = static_cast<int>(vertices_.size());
  vertices_.push_back({id, x, y});
  adjacency_.emplace_back();
  return id;
}

void BackhaulGraph::check_vertex(int id, const char* role) const {
  if (id < 0 || id >= vertex_count()) {
    throw std::invalid_argument(std::string(role) + " vertex " + std::to_string(id) +
                                " out of range");
  }
}

int BackhaulGraph::add_link(int u, int v, double length_m, int wavelength_count,
                            Gbps capacity) {
  return add_link(u, v, length_m, link_latency(length_m), wavelength_count, capacity);
}

int BackhaulGraph::add_link(int u, int v, double length_m, double latency_s,
                            int wavelength_count, Gbps capacity) {
  check_vertex(u, "link endpoint");
  check_vertex(v, "link endpoint");
  if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
  if (link_between(u, v)) {
    throw std::invalid_argument("duplicate link " + std::to_string(u) + "-" + std::to_string(v));
  }
  if (!(length_m > 0)) throw std::invalid_argument("link length must be positive");
  if (!(latency_s >= 0)) throw std::invalid_argument("link latency must be non-negative");
  if (wavelength_count < 1) throw std::invalid_argument("wavelength count must be >= 1");
  if (capacity <= kZeroGbps) throw std::invalid_argument("wavelength capacity must be positive");

  Link link;
  link.id = static_cast<int>(links_.size());
  link.u = std::min(u, v);
  link.v = std::max(u, v);
  link.length_m = length_m;
  link.latency_s = latency_s;
  link.wavelengths.assign(static_cast<std::size_t>(wavelength_count), {capacity, kZeroGbps});
  links_.push_back(std::move(link));

  // keep incident lists sorted by far-endpoint id
  auto insert_sorted = [this](int at, int link_id) {
    auto& inc = adjacency_[at];
    auto pos = std::lower_bound(inc.begin(), inc.end(), link_id, [&](int a, int b) {
      return links_[a].other(at) < links_[b].other(at);
    });
    inc.insert(pos, link_id);
  };
  insert_sorted(u, links_.back().id);
  insert_sorted(v, links_.back().id);
  return links_.back().id;
}

std::optional<int> BackhaulGraph::link_between(int u, int v) const {
  check_vertex(u, "query");
  check_vertex(v, "query");
  for (int link_id : adjacency_[u]) {
    if (links_[link_id].other(u) == v) return link_id;
  }
  return std::nullopt;
}

WavelengthState& BackhaulGraph::wavelength_ref(int link_id, int wavelength) {
  Link& l = links_.at(link_id);
  if (wavelength < 0 || wavelength >= l.wavelength_count()) {
    throw std::invalid_argument("wavelength " + std::to_string(wavelength) +
                                " out of range on link " + std::to_string(link_id));
  }
  return l.wavelengths[wavelength];
}

Gbps BackhaulGraph::residual(int link_id, int wavelength) const {
  const Link& l = links_.at(link_id);
  if (wavelength < 0 || wavelength >= l.wavelength_count()) {
    throw std::invalid_argument("wavelength " + std::to_string(wavelength) +
                                " out of range on link " + std::to_string(link_id));
  }
  return l.wavelengths[wavelength].residual();
}

void BackhaulGraph::allocate_path(std::span<const int> path_vertices,
                                  std::span<const int> wavelengths, Gbps demand) {
  if (path_vertices.empty()) {
    if (!wavelengths.empty()) throw std::invalid_argument("wavelengths without hops");
    return;
  }
  if (wavelengths.size() + 1 != path_vertices.size()) {
    throw std::invalid_argument("path needs one wavelength per hop");
  }
  if (demand < kZeroGbps) throw std::invalid_argument("negative demand");

  // Resolve hops and check residuals before mutating anything; repeated
  // (link, wavelength) pairs within one path accumulate.
  std::vector<int> hop_links(wavelengths.size());
  std::vector<Gbps> pending;
  std::vector<std::pair<int, int>> pending_keys;
  for (std::size_t i = 0; i < wavelengths.size(); ++i) {
    auto link_id = link_between(path_vertices[i], path_vertices[i + 1]);
    if (!link_id) {
      throw std::invalid_argument("broken path: no link " + std::to_string(path_vertices[i]) +
                                  "-" + std::to_string(path_vertices[i + 1]));
    }
    hop_links[i] = *link_id;
    const int w = wavelengths[i];
    const Gbps res = residual(*link_id, w);
    Gbps already = kZeroGbps;
    for (std::size_t k = 0; k < pending_keys.size(); ++k) {
      if (pending_keys[k] == std::pair<int, int>{*link_id, w}) already += pending[k];
    }
    if (res - already < demand) {
      throw CapacityError("insufficient residual on link " + std::to_string(*link_id) +
                          " (hop " + std::to_string(i) + ", wavelength " + std::to_string(w) +
                          "): residual " + (res - already).str() + " < demand " + demand.str());
    }
    pending_keys.emplace_back(*link_id, w);
    pending.push_back(demand);
  }
  for (std::size_t i = 0; i < hop_links.size(); ++i) {
    wavelength_ref(hop_links[i], wavelengths[i]).allocated += demand;
  }
}

void BackhaulGraph::release_path(std::span<const int> path_vertices,
                                 std::span<const int> wavelengths, Gbps demand) {
  if (path_vertices.empty()) return;
  if (wavelengths.size() + 1 != path_vertices.size()) {
    throw std::invalid_argument("path needs one wavelength per hop");
  }
  for (std::size_t i = 0; i < wavelengths.size(); ++i) {
    auto link_id = link_between(path_vertices[i], path_vertices[i + 1]);
    if (!link_id) throw std::invalid_argument("broken path in release");
    WavelengthState& ws = wavelength_ref(*link_id, wavelengths[i]);
    if (ws.allocated < demand) throw std::invalid_argument("releasing more than allocated");
    ws.allocated -= demand;
  }
}

void BackhaulGraph::release_all() {
  for (Link& l : links_) {
    for (WavelengthState& ws : l.wavelengths) ws.allocated = kZeroGbps;
  }
}

int BackhaulGraph::active_wavelength_count() const {
  int n = 0;
  for (const Link& l : links_) {
    for (const WavelengthState& ws : l.wavelengths) n += ws.active() ? 1 : 0;
  }
  return n;
}

int BackhaulGraph::active_on_link(int link_id) const {
  const Link& l = links_.at(link_id);
  int n = 0;
  for (const WavelengthState& ws : l.wavelengths) n += ws.active() ? 1 : 0;
  return n;
}

std::vector<std::int64_t> BackhaulGraph::allocation_state() const {
  std::vector<std::int64_t> state;
  state.reserve(links_.size() * 4);
  for (const Link& l : links_) {
    for (const WavelengthState& ws : l.wavelengths) state.push_back(ws.allocated.sixteenths());
  }
  return state;
}

void BackhaulGraph::write(std::ostream& out) const {
  for (const Vertex& v : vertices_) {
    out << "V " << v.id << ' ' << format_double(v.x) << ' ' << format_double(v.y) << '\n';
  }
  int cur_k = -1;
  Gbps cur_cap;
  for (const Link& l : links_) {
    const Gbps cap = l.wavelengths.front().capacity;
    if (l.wavelength_count() != cur_k || cap != cur_cap) {
      cur_k = l.wavelength_count();
      cur_cap = cap;
      out << "W " << cur_k << ' ' << cur_cap.str() << '\n';
    }
    out << "E " << l.u << ' ' << l.v << ' ' << format_double(l.length_m) << ' '
        << format_double(l.latency_s) << '\n';
  }
}

BackhaulGraph BackhaulGraph::read(std::istream& in) {
  BackhaulGraph g;
  int k = 4;
  Gbps capacity = Gbps::from_sixteenths(40);  // 2.5 Gb/s
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag[0] == '#') continue;
    try {
      if (tag == "V") {
        int id;
        std::string xs, ys;
        if (!(fields >> id >> xs >> ys)) throw std::invalid_argument("malformed V line");
        if (id != g.vertex_count()) {
          throw std::invalid_argument("vertex ids must be contiguous from 0");
        }
        g.add_vertex(parse_double(xs), parse_double(ys));
      } else if (tag == "W") {
        std::string caps;
        if (!(fields >> k >> caps)) throw std::invalid_argument("malformed W line");
        capacity = Gbps::parse(caps);
      } else if (tag == "E") {
        int u, v;
        std::string len, lat;
        if (!(fields >> u >> v >> len)) throw std::invalid_argument("malformed E line");
        if (fields >> lat) {
          g.add_link(u, v, parse_double(len), parse_double(lat), k, capacity);
        } else {
          g.add_link(u, v, parse_double(len), k, capacity);
        }
      } else if (tag == "C") {
        continue;  // CBS lines are handled by the scenario reader
      } else {
        throw std::invalid_argument("unknown record '" + tag + "'");
      }
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return g;
}

}  // namespace backhaul
