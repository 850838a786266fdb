#include "backhaul/placement.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace backhaul {

void CostWeights::validate() const {
  if (!(w_g >= 0) || !(w_a >= 0) || !(w_l >= 0)) {
    throw std::invalid_argument("cost weights must be non-negative");
  }
  if (w_g == 0 && w_a == 0 && w_l == 0) {
    throw std::invalid_argument("cost weights must not all be zero");
  }
}

std::vector<int> BFSTree::path_from_root(int v) const {
  std::vector<int> path;
  int cur = v;
  path.push_back(cur);
  while (cur != root) {
    cur = parent_vertex[cur];
    if (cur < 0) throw std::logic_error("path_from_root on a vertex outside the tree");
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

BFSTree max_path_bfs(const BackhaulGraph& graph, int root, const CBSSpec& cbs) {
  if (root < 0 || root >= graph.vertex_count()) {
    throw std::invalid_argument("BFS root out of range");
  }
  const std::size_t n = static_cast<std::size_t>(graph.vertex_count());
  BFSTree tree;
  tree.root = root;
  tree.parent_vertex.assign(n, -1);
  tree.parent_link.assign(n, -1);
  tree.depth_latency.assign(n, 0.0);

  std::deque<int> queue{root};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int link_id : graph.incident(u)) {  // ascending far-endpoint order
      const Link& link = graph.link(link_id);
      const int v = link.other(u);
      if (tree.contains(v)) continue;  // first admissible discovery wins

      const double latency = tree.depth_latency[u] + link.latency_s;
      if (2.0 * latency > cbs.rtt_budget) continue;
      if (std::binary_search(cbs.members.begin(), cbs.members.end(), v)) {
        bool has_capacity = false;
        for (const WavelengthState& ws : link.wavelengths) {
          if (ws.residual() >= cbs.demand_per_bs) {
            has_capacity = true;
            break;
          }
        }
        if (!has_capacity) continue;
      }

      tree.parent_vertex[v] = u;
      tree.parent_link[v] = link_id;
      tree.depth_latency[v] = latency;
      queue.push_back(v);
    }
  }
  return tree;
}

std::vector<BFSTree> match_cbs(std::vector<BFSTree> trees, const CBSSpec& cbs) {
  std::erase_if(trees, [&](const BFSTree& tree) {
    return !std::all_of(cbs.members.begin(), cbs.members.end(),
                        [&](int m) { return tree.contains(m); });
  });
  return trees;
}

namespace {

// Tentative per-(link, wavelength) demands for one CBS; small, linear scan.
class TentativeLoads {
 public:
  Gbps on(int link, int wavelength) const {
    for (const auto& e : entries_) {
      if (e.link == link && e.wavelength == wavelength) return e.load;
    }
    return kZeroGbps;
  }

  void add(int link, int wavelength, Gbps demand) {
    for (auto& e : entries_) {
      if (e.link == link && e.wavelength == wavelength) {
        e.load += demand;
        return;
      }
    }
    entries_.push_back({link, wavelength, demand});
  }

 private:
  struct Entry {
    int link;
    int wavelength;
    Gbps load;
  };
  std::vector<Entry> entries_;
};

}  // namespace

std::optional<WavelengthAssignment> backtrack_and_assign(const BackhaulGraph& graph,
                                                         const BFSTree& tree,
                                                         const CBSSpec& cbs) {
  WavelengthAssignment assignment;
  TentativeLoads tentative;

  for (int member : cbs.members) {  // ascending id
    if (!tree.contains(member)) return std::nullopt;
    MemberRoute route;
    route.member = member;
    route.vertices = tree.path_from_root(member);
    for (std::size_t hop = 0; hop + 1 < route.vertices.size(); ++hop) {
      const int child = route.vertices[hop + 1];
      const int link_id = tree.parent_link[child];
      const Link& link = graph.link(link_id);
      int chosen = -1;
      for (int w = 0; w < link.wavelength_count(); ++w) {
        const Gbps free = link.wavelengths[w].residual() - tentative.on(link_id, w);
        if (free >= cbs.demand_per_bs) {
          chosen = w;
          break;
        }
      }
      if (chosen < 0) return std::nullopt;  // discard all tentative placements
      tentative.add(link_id, chosen, cbs.demand_per_bs);
      route.links.push_back(link_id);
      route.wavelengths.push_back(chosen);
    }
    assignment.routes.push_back(std::move(route));
  }
  return assignment;
}

CostBreakdown tree_cost(const BackhaulGraph& graph, const WavelengthAssignment& assignment,
                        const CostWeights& weights) {
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> links;
  for (const MemberRoute& route : assignment.routes) {
    for (std::size_t hop = 0; hop < route.links.size(); ++hop) {
      pairs.emplace_back(route.links[hop], route.wavelengths[hop]);
      links.push_back(route.links[hop]);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());

  CostBreakdown cost;
  cost.n_g = static_cast<int>(pairs.size());
  cost.n_l = static_cast<int>(links.size());
  for (const auto& [link_id, w] : pairs) {
    if (!graph.link(link_id).wavelengths[w].active()) ++cost.n_a;
  }
  cost.n = combined_cost(weights, cost.n_g, cost.n_a, cost.n_l);
  return cost;
}

std::optional<Placement> place_cbs_at_roots(BackhaulGraph& graph, const CBSSpec& cbs,
                                            const CostWeights& weights,
                                            std::span<const int> roots) {
  weights.validate();
  std::optional<Placement> best;
  for (int root : roots) {
    BFSTree tree = max_path_bfs(graph, root, cbs);
    const bool matches = std::all_of(cbs.members.begin(), cbs.members.end(),
                                     [&](int m) { return tree.contains(m); });
    if (!matches) continue;
    auto assignment = backtrack_and_assign(graph, tree, cbs);
    if (!assignment) continue;  // re-match: candidate dropped
    CostBreakdown cost = tree_cost(graph, *assignment, weights);
    if (!best || cost.n < best->cost.n) {  // ties keep the lowest root id
      best = Placement{cbs.id, root, std::move(*assignment), cost};
    }
  }
  if (!best) return std::nullopt;

  for (const MemberRoute& route : best->assignment.routes) {
    if (route.links.empty()) continue;
    graph.allocate_path(route.vertices, route.wavelengths, cbs.demand_per_bs);
  }
  return best;
}

std::optional<Placement> place_cbs(BackhaulGraph& graph, const CBSSpec& cbs,
                                   const CostWeights& weights) {
  std::vector<int> roots(static_cast<std::size_t>(graph.vertex_count()));
  std::iota(roots.begin(), roots.end(), 0);
  return place_cbs_at_roots(graph, cbs, weights, roots);
}

HeuristicResult place_in_order(BackhaulGraph& graph, std::span<const CBSSpec> cbs_set,
                               const CostWeights& weights) {
  HeuristicResult result;
  for (const CBSSpec& cbs : cbs_set) {
    if (auto placement = place_cbs(graph, cbs, weights)) {
      result.placements.push_back(std::move(*placement));
    } else {
      result.infeasible.push_back(cbs.id);
    }
  }
  return result;
}

HeuristicResult run_heuristic(BackhaulGraph& graph, std::span<const CBSSpec> cbs_set,
                              const PrioritizationThresholds& thresholds,
                              const CostWeights& weights) {
  const PrioritizedWork work = prioritize(cbs_set, graph.vertex_count(), thresholds);
  HeuristicResult result = place_in_order(graph, work.hotspot, weights);
  HeuristicResult normal = place_in_order(graph, work.normal, weights);
  result.placements.insert(result.placements.end(),
                           std::make_move_iterator(normal.placements.begin()),
                           std::make_move_iterator(normal.placements.end()));
  result.infeasible.insert(result.infeasible.end(), normal.infeasible.begin(),
                           normal.infeasible.end());
  return result;
}

}  // namespace backhaul
