#pragma once

#include <span>
#include <string>
#include <vector>

#include "backhaul/placement.hpp"

namespace backhaul {

struct ValidationReport {
  std::vector<std::string> issues;
  int placements_checked = 0;

  bool ok() const { return issues.empty(); }
};

// Re-walks every placement against a fresh copy of the scenario graph with
// its own load bookkeeping: route shape (endpoints, existing links, simple,
// single tree per placement), round-trip latency against the budget, joint
// per-(link, wavelength) capacity over all placements, the exact cost
// identity, and the placements/infeasible partition of the CBS set.
ValidationReport validate_placements(const BackhaulGraph& fresh_graph,
                                     std::span<const CBSSpec> cbs_set,
                                     std::span<const Placement> placements,
                                     std::span<const int> infeasible,
                                     const CostWeights& weights);

}  // namespace backhaul
