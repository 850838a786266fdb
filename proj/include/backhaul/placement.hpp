#pragma once

#include <optional>
#include <span>
#include <vector>

#include "backhaul/prioritization.hpp"
#include "backhaul/scenario.hpp"

namespace backhaul {

// Constraint-pruned BFS tree rooted at a candidate controller vertex.
struct BFSTree {
  int root = -1;
  std::vector<int> parent_vertex;   // -1 when the vertex is not in the tree
  std::vector<int> parent_link;
  std::vector<double> depth_latency;  // one-way seconds from root, valid when in tree

  bool contains(int v) const { return v == root || parent_vertex[v] >= 0; }
  // Unique tree path root -> v (vertex ids). v must be in the tree.
  std::vector<int> path_from_root(int v) const;
};

struct MemberRoute {
  int member = -1;
  std::vector<int> vertices;     // root..member; single vertex when member == root
  std::vector<int> links;        // one per hop
  std::vector<int> wavelengths;  // one per hop
};

// Joint first-fit wavelength assignment for one CBS on one tree.
struct WavelengthAssignment {
  std::vector<MemberRoute> routes;  // ascending member id
};

struct CostWeights {
  double w_g = 1;  // per wavelength used in the tree
  double w_a = 1;  // per newly-activated wavelength
  double w_l = 1;  // per used link

  void validate() const;
};

struct CostBreakdown {
  int n_g = 0;
  int n_a = 0;
  int n_l = 0;
  double n = 0;
};

// Single formula shared by implementation and validator reports.
inline double combined_cost(const CostWeights& w, int n_g, int n_a, int n_l) {
  return w.w_g * n_g + w.w_a * n_a + w.w_l * n_l;
}

struct Placement {
  int cbs_id = -1;
  int controller = -1;
  WavelengthAssignment assignment;
  CostBreakdown cost;
};

struct HeuristicResult {
  std::vector<Placement> placements;
  std::vector<int> infeasible;  // CBS ids, in processing order
};

// Modified BFS from `root`. A vertex v discovered via (u,v) joins the tree
// only if the round trip root->v fits the budget and, when v is a CBS
// member, some wavelength on (u,v) has residual >= the per-BS demand. A
// vertex whose first discovery fails is out of this tree for good.
BFSTree max_path_bfs(const BackhaulGraph& graph, int root, const CBSSpec& cbs);

// Trees that contain every CBS member, input order preserved.
std::vector<BFSTree> match_cbs(std::vector<BFSTree> trees, const CBSSpec& cbs);

// First-fit wavelength assignment over the tree paths, members in ascending
// id, hops from the root outward. Joint admission against current graph
// state plus this CBS's own tentative demands; nothing is committed.
std::optional<WavelengthAssignment> backtrack_and_assign(const BackhaulGraph& graph,
                                                         const BFSTree& tree,
                                                         const CBSSpec& cbs);

// n_g / n_a / n_l over the distinct (link, wavelength) pairs the assignment
// touches, evaluated against current graph activity.
CostBreakdown tree_cost(const BackhaulGraph& graph, const WavelengthAssignment& assignment,
                        const CostWeights& weights);

// Steps 1-5 for one CBS over a restricted candidate root set.
std::optional<Placement> place_cbs_at_roots(BackhaulGraph& graph, const CBSSpec& cbs,
                                            const CostWeights& weights,
                                            std::span<const int> roots);

// Steps 1-5 with every vertex as candidate root; commits the winning
// assignment. Ties on cost go to the lowest root id.
std::optional<Placement> place_cbs(BackhaulGraph& graph, const CBSSpec& cbs,
                                   const CostWeights& weights);

// Sequential placement in the given order; each commit constrains the next.
HeuristicResult place_in_order(BackhaulGraph& graph, std::span<const CBSSpec> cbs_set,
                               const CostWeights& weights);

// The full heuristic: prioritize, then place hotspot CBSs before normal ones.
HeuristicResult run_heuristic(BackhaulGraph& graph, std::span<const CBSSpec> cbs_set,
                              const PrioritizationThresholds& thresholds,
                              const CostWeights& weights);

}  // namespace backhaul
