#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "backhaul/gbps.hpp"

namespace backhaul {

// One-way propagation latency of a fiber of the given length:
// length * 1.45 / c with c = 299,792,458 m/s. Throws on negative length.
double link_latency(double length_m);

struct Vertex {
  int id = 0;
  double x = 0;  // meters
  double y = 0;
};

struct WavelengthState {
  Gbps capacity;
  Gbps allocated;

  bool active() const { return allocated > kZeroGbps; }
  Gbps residual() const { return capacity - allocated; }
};

struct Link {
  int id = 0;
  int u = 0;  // endpoint vertex ids, u < v
  int v = 0;
  double length_m = 0;
  double latency_s = 0;
  std::vector<WavelengthState> wavelengths;

  int wavelength_count() const { return static_cast<int>(wavelengths.size()); }
  int other(int vertex) const { return vertex == u ? v : u; }
};

// Thrown by allocate_path when a hop lacks residual capacity.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Undirected backhaul graph with per-link wavelength capacity state.
// Wavelength capacity is shared across both directions of a link.
class BackhaulGraph {
 public:
  int add_vertex(double x, double y);
  // Latency computed from length unless given explicitly.
  int add_link(int u, int v, double length_m, int wavelength_count, Gbps capacity);
  int add_link(int u, int v, double length_m, double latency_s, int wavelength_count,
               Gbps capacity);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int link_count() const { return static_cast<int>(links_.size()); }
  const Vertex& vertex(int id) const { return vertices_.at(id); }
  const Link& link(int id) const { return links_.at(id); }
  std::span<const Vertex> vertices() const { return vertices_; }
  std::span<const Link> links() const { return links_; }

  std::optional<int> link_between(int u, int v) const;
  // Incident link ids, sorted by the id of the far endpoint. Fixes the
  // neighbor exploration order for all BFS-based steps.
  std::span<const int> incident(int vertex) const { return adjacency_.at(vertex); }

  Gbps residual(int link_id, int wavelength) const;

  // Adds `demand` on the chosen wavelength of every hop. Atomic: throws
  // (graph unchanged) if any hop is missing or lacks residual capacity.
  void allocate_path(std::span<const int> path_vertices, std::span<const int> wavelengths,
                     Gbps demand);
  // Exact inverse of a prior allocate_path with the same arguments.
  void release_path(std::span<const int> path_vertices, std::span<const int> wavelengths,
                    Gbps demand);
  void release_all();

  int active_wavelength_count() const;     // total active (link, wavelength) pairs
  int active_on_link(int link_id) const;

  // Snapshot of all allocation counters, for atomicity checks in tests.
  std::vector<std::int64_t> allocation_state() const;

  // Line-oriented text format: `V <id> <x> <y>`, `E <u> <v> <length_m>
  // [latency_s]`, `W <K> <capacity_gbps>` (wavelength config for subsequent
  // E lines), `#` comments.
  void write(std::ostream& out) const;
  static BackhaulGraph read(std::istream& in);

 private:
  void check_vertex(int id, const char* role) const;
  WavelengthState& wavelength_ref(int link_id, int wavelength);

  std::vector<Vertex> vertices_;
  std::vector<Link> links_;
  std::vector<std::vector<int>> adjacency_;
};

// Shortest round-trip decimal rendering of a double (for text formats).
std::string format_double(double value);
double parse_double(std::string_view text);

}  // namespace backhaul
