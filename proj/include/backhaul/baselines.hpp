#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "backhaul/placement.hpp"

namespace backhaul {

// Same pipeline as run_heuristic, but the candidate controller set for
// every CBS is just {fixed_root}.
HeuristicResult static_reconfiguration(BackhaulGraph& graph, std::span<const CBSSpec> cbs_set,
                                       int fixed_root,
                                       const PrioritizationThresholds& thresholds,
                                       const CostWeights& weights);

struct PairLoad {
  int link = -1;
  int wavelength = 0;
  Gbps offered;
  Gbps capacity;

  Gbps excess() const { return offered > capacity ? offered - capacity : kZeroGbps; }
};

struct CbsDelivery {
  int cbs_id = -1;
  double delivered_fraction = 1.0;  // min capacity share over the CBS's hops
};

struct OversubscriptionReport {
  std::vector<PairLoad> pairs;  // offered > 0, ordered by (link, wavelength)
  std::vector<CbsDelivery> per_cbs;
  Gbps total_offered;
  Gbps total_excess;
  int oversubscribed_pairs = 0;

  // `link_u,link_v,wavelength,offered_gbps,capacity_gbps,excess_gbps` table,
  // then a `cbs_id,delivered_fraction` table.
  void write_csv(std::ostream& out, const BackhaulGraph& graph) const;
};

// Fixed controller, fixed wavelength, latency-shortest paths (ties by
// lexicographically smallest vertex sequence), no admission control.
// Does not touch graph allocation state.
OversubscriptionReport static_backhaul(const BackhaulGraph& graph,
                                       std::span<const CBSSpec> cbs_set, int fixed_root,
                                       int static_wavelength);

// Vertex closest to the centroid of all BS positions (lowest id on ties);
// the default fixed root for the static variants.
int centroid_vertex(const BackhaulGraph& graph);

class OracleSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive minimum-cost search over every root, every combination of
// simple paths (at most max_path_hops hops) and every per-hop wavelength
// labeling, against current graph state. Nothing is committed. Refuses
// instances with |V| > 10, K > 3 or more than 4 members.
std::optional<Placement> brute_force_feasible(const BackhaulGraph& graph, const CBSSpec& cbs,
                                              int max_path_hops, const CostWeights& weights);

// Latency-shortest paths from one root to every vertex, ties broken toward
// the lexicographically smallest vertex sequence. Unreachable: empty path.
struct ShortestPaths {
  std::vector<double> dist;
  std::vector<std::vector<int>> path;  // root..v
};
ShortestPaths lex_shortest_paths(const BackhaulGraph& graph, int root);

struct OracleCheckRow {
  int cbs_id = -1;
  bool heuristic_feasible = false;
  bool oracle_feasible = false;
  double heuristic_n = 0;
  double oracle_n = 0;
  bool violation = false;
};

struct OracleCheckReport {
  std::vector<OracleCheckRow> rows;  // heuristic processing order
  int violations = 0;
};

// Runs the prioritized pipeline, checking each heuristic placement against
// the oracle on the same pre-existing allocations before committing it.
// A violation is a placed CBS the oracle finds infeasible or beats on cost.
OracleCheckReport oracle_check(BackhaulGraph& graph, std::span<const CBSSpec> cbs_set,
                               const PrioritizationThresholds& thresholds,
                               const CostWeights& weights, int max_path_hops);

}  // namespace backhaul
