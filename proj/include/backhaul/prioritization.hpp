#pragma once

#include <span>
#include <vector>

#include "backhaul/scenario.hpp"

namespace backhaul {

struct PrioritizationThresholds {
  double t_v = 0.1;  // hotspot vertex threshold
  double t_h = 0.9;  // hotspot CBS threshold, in [0, 1]

  void validate() const;
};

struct PrioritizedWork {
  std::vector<CBSSpec> hotspot;
  std::vector<CBSSpec> normal;
};

// h_v for every vertex: in how many of the desired CBSs it appears.
std::vector<int> vertex_presence_counts(std::span<const CBSSpec> cbs_set, int vertex_count);

// Mask of hotspot vertices: h_v > |W| * t_v (strict).
std::vector<bool> hotspot_vertices(std::span<const int> counts, int cbs_total, double t_v);

// Splits W into the hotspot and normal classes; a CBS is hotspot when the
// fraction of its members that are hotspot vertices is >= t_h (inclusive).
// Input order is preserved within each class.
PrioritizedWork prioritize(std::span<const CBSSpec> cbs_set,
                           const std::vector<bool>& hotspot_mask, double t_h);

// The full prioritization step.
PrioritizedWork prioritize(std::span<const CBSSpec> cbs_set, int vertex_count,
                           const PrioritizationThresholds& thresholds);

}  // namespace backhaul
