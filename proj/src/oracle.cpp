#include <algorithm>
#include <cmath>
#include <limits>

#include "backhaul/baselines.hpp"

namespace backhaul {

namespace {

struct CandidatePath {
  std::vector<int> vertices;  // root..member
  std::vector<int> links;
};

// Exhaustive minimum-cost search for one root. Path combinations are
// enumerated member-major in lexicographic vertex-sequence order and
// wavelength labelings hop-major, lowest index first, so the first solution
// at any given cost is the tie-break winner.
class RootSearch {
 public:
  RootSearch(const BackhaulGraph& graph, const CBSSpec& cbs, int root, int max_hops,
             const CostWeights& weights)
      : graph_(graph), cbs_(cbs), root_(root), max_hops_(max_hops), weights_(weights) {}

  // Returns the best solution strictly cheaper than `bound`, if any.
  std::optional<Placement> run(double bound) {
    best_n_ = bound;
    best_.reset();
    member_paths_.clear();
    for (int member : cbs_.members) {
      member_paths_.push_back(enumerate_paths(member));
      if (member_paths_.back().empty()) return std::nullopt;
    }
    chosen_.assign(member_paths_.size(), -1);
    choose_member(0);
    return best_;
  }

 private:
  std::vector<CandidatePath> enumerate_paths(int member) {
    std::vector<CandidatePath> paths;
    std::vector<int> vertices{root_};
    std::vector<int> links;
    std::vector<bool> on_path(graph_.vertex_count(), false);
    on_path[root_] = true;
    extend(member, vertices, links, on_path, 0.0, paths);
    return paths;
  }

  void extend(int member, std::vector<int>& vertices, std::vector<int>& links,
              std::vector<bool>& on_path, double latency, std::vector<CandidatePath>& out) {
    const int here = vertices.back();
    if (here == member) {
      out.push_back({vertices, links});
      return;  // a simple path cannot continue through its endpoint
    }
    if (static_cast<int>(links.size()) >= max_hops_) return;
    for (int link_id : graph_.incident(here)) {
      const Link& link = graph_.link(link_id);
      const int next = link.other(here);
      if (on_path[next]) continue;
      const double next_latency = latency + link.latency_s;
      if (2.0 * next_latency > cbs_.rtt_budget) continue;
      on_path[next] = true;
      vertices.push_back(next);
      links.push_back(link_id);
      extend(member, vertices, links, on_path, next_latency, out);
      links.pop_back();
      vertices.pop_back();
      on_path[next] = false;
    }
  }

  // Admissible lower bound on total cost for the currently chosen paths:
  // every distinct link needs at least ceil(flows * demand / capacity)
  // wavelengths, and links with nothing active need at least one activation.
  double partial_bound(std::size_t members_chosen) const {
    std::vector<std::pair<int, int>> link_flows;  // link -> flow count
    for (std::size_t m = 0; m < members_chosen; ++m) {
      for (int link_id : member_paths_[m][chosen_[m]].links) {
        auto it = std::find_if(link_flows.begin(), link_flows.end(),
                               [&](const auto& e) { return e.first == link_id; });
        if (it == link_flows.end()) {
          link_flows.emplace_back(link_id, 1);
        } else {
          ++it->second;
        }
      }
    }
    int n_g = 0, n_a = 0;
    const int n_l = static_cast<int>(link_flows.size());
    for (const auto& [link_id, flows] : link_flows) {
      const Link& link = graph_.link(link_id);
      const std::int64_t demand16 = cbs_.demand_per_bs.sixteenths();
      const std::int64_t cap16 = link.wavelengths.front().capacity.sixteenths();
      const int needed = static_cast<int>((flows * demand16 + cap16 - 1) / cap16);
      n_g += needed;
      if (graph_.active_on_link(link_id) == 0) n_a += needed;
    }
    return combined_cost(weights_, n_g, n_a, n_l);
  }

  void choose_member(std::size_t m) {
    if (partial_bound(m) >= best_n_) return;
    if (m == member_paths_.size()) {
      hop_order_.clear();
      for (std::size_t i = 0; i < member_paths_.size(); ++i) {
        for (int link_id : member_paths_[i][chosen_[i]].links) {
          hop_order_.push_back(link_id);
        }
      }
      labeling_.assign(hop_order_.size(), -1);
      loads_.clear();
      cost_ = {};
      assign_hop(0);
      return;
    }
    for (std::size_t p = 0; p < member_paths_[m].size(); ++p) {
      chosen_[m] = static_cast<int>(p);
      choose_member(m + 1);
    }
    chosen_[m] = -1;
  }

  struct LoadEntry {
    int link;
    int wavelength;
    Gbps load;
  };

  void assign_hop(std::size_t hop) {
    if (combined_cost(weights_, cost_.n_g, cost_.n_a, cost_.n_l) >= best_n_) return;
    if (hop == hop_order_.size()) {
      record_solution();
      return;
    }
    const int link_id = hop_order_[hop];
    const Link& link = graph_.link(link_id);
    for (int w = 0; w < link.wavelength_count(); ++w) {
      Gbps current = kZeroGbps;
      LoadEntry* entry = nullptr;
      for (auto& e : loads_) {
        if (e.link == link_id && e.wavelength == w) {
          entry = &e;
          current = e.load;
          break;
        }
      }
      if (link.wavelengths[w].residual() - current < cbs_.demand_per_bs) continue;

      const bool new_pair = (current == kZeroGbps);
      const bool new_activation = new_pair && !link.wavelengths[w].active();
      bool new_link = true;
      if (new_pair) {
        for (const auto& e : loads_) {
          if (e.link == link_id && e.load > kZeroGbps) {
            new_link = false;
            break;
          }
        }
      } else {
        new_link = false;
      }

      if (entry) {
        entry->load += cbs_.demand_per_bs;
      } else {
        loads_.push_back({link_id, w, cbs_.demand_per_bs});
        entry = &loads_.back();
      }
      cost_.n_g += new_pair ? 1 : 0;
      cost_.n_a += new_activation ? 1 : 0;
      cost_.n_l += new_link ? 1 : 0;
      labeling_[hop] = w;

      assign_hop(hop + 1);

      labeling_[hop] = -1;
      cost_.n_g -= new_pair ? 1 : 0;
      cost_.n_a -= new_activation ? 1 : 0;
      cost_.n_l -= new_link ? 1 : 0;
      // entry may have been invalidated by push_back in deeper levels
      for (auto& e : loads_) {
        if (e.link == link_id && e.wavelength == w) {
          e.load -= cbs_.demand_per_bs;
          break;
        }
      }
    }
  }

  void record_solution() {
    CostBreakdown cost = cost_;
    cost.n = combined_cost(weights_, cost.n_g, cost.n_a, cost.n_l);
    if (cost.n >= best_n_) return;
    best_n_ = cost.n;

    WavelengthAssignment assignment;
    std::size_t hop = 0;
    for (std::size_t m = 0; m < member_paths_.size(); ++m) {
      const CandidatePath& path = member_paths_[m][chosen_[m]];
      MemberRoute route;
      route.member = cbs_.members[m];
      route.vertices = path.vertices;
      route.links = path.links;
      route.wavelengths.assign(labeling_.begin() + hop, labeling_.begin() + hop + path.links.size());
      hop += path.links.size();
      assignment.routes.push_back(std::move(route));
    }
    best_ = Placement{cbs_.id, root_, std::move(assignment), cost};
  }

  const BackhaulGraph& graph_;
  const CBSSpec& cbs_;
  const int root_;
  const int max_hops_;
  const CostWeights weights_;

  std::vector<std::vector<CandidatePath>> member_paths_;
  std::vector<int> chosen_;
  std::vector<int> hop_order_;
  std::vector<int> labeling_;
  std::vector<LoadEntry> loads_;
  CostBreakdown cost_;
  double best_n_ = 0;
  std::optional<Placement> best_;
};

}  // namespace

std::optional<Placement> brute_force_feasible(const BackhaulGraph& graph, const CBSSpec& cbs,
                                              int max_path_hops, const CostWeights& weights) {
  weights.validate();
  if (graph.vertex_count() > 10) {
    throw OracleSizeError("oracle limited to 10 vertices, got " +
                          std::to_string(graph.vertex_count()));
  }
  for (const Link& l : graph.links()) {
    if (l.wavelength_count() > 3) {
      throw OracleSizeError("oracle limited to 3 wavelengths per link, got " +
                            std::to_string(l.wavelength_count()));
    }
  }
  if (cbs.members.size() > 4) {
    throw OracleSizeError("oracle limited to 4 members, got " +
                          std::to_string(cbs.members.size()));
  }
  if (max_path_hops < 0) throw std::invalid_argument("max_path_hops must be >= 0");

  std::optional<Placement> best;
  double bound = std::numeric_limits<double>::infinity();
  for (int root = 0; root < graph.vertex_count(); ++root) {
    RootSearch search(graph, cbs, root, max_path_hops, weights);
    if (auto found = search.run(bound)) {
      bound = found->cost.n;
      best = std::move(found);
    }
  }
  return best;
}

OracleCheckReport oracle_check(BackhaulGraph& graph, std::span<const CBSSpec> cbs_set,
                               const PrioritizationThresholds& thresholds,
                               const CostWeights& weights, int max_path_hops) {
  OracleCheckReport report;
  const PrioritizedWork work = prioritize(cbs_set, graph.vertex_count(), thresholds);

  auto check_all = [&](std::span<const CBSSpec> ordered) {
    for (const CBSSpec& cbs : ordered) {
      // oracle first: it sees the same pre-existing allocations
      const auto oracle = brute_force_feasible(graph, cbs, max_path_hops, weights);
      const auto placed = place_cbs(graph, cbs, weights);

      OracleCheckRow row;
      row.cbs_id = cbs.id;
      row.heuristic_feasible = placed.has_value();
      row.oracle_feasible = oracle.has_value();
      if (placed) row.heuristic_n = placed->cost.n;
      if (oracle) row.oracle_n = oracle->cost.n;
      if (placed && (!oracle || oracle->cost.n > placed->cost.n + 1e-9)) {
        row.violation = true;
        ++report.violations;
      }
      report.rows.push_back(row);
    }
  };
  check_all(work.hotspot);
  check_all(work.normal);
  return report;
}

}  // namespace backhaul
