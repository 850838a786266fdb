#include "backhaul/prioritization.hpp"

#include <stdexcept>

namespace backhaul {

void PrioritizationThresholds::validate() const {
  if (!(t_v >= 0)) throw std::invalid_argument("t_v must be >= 0");
  if (!(t_h >= 0 && t_h <= 1)) throw std::invalid_argument("t_h must be in [0, 1]");
}

std::vector<int> vertex_presence_counts(std::span<const CBSSpec> cbs_set, int vertex_count) {
  std::vector<int> counts(static_cast<std::size_t>(vertex_count), 0);
  for (const CBSSpec& cbs : cbs_set) {
    for (int v : cbs.members) {
      if (v < 0 || v >= vertex_count) {
        throw std::invalid_argument("CBS member " + std::to_string(v) + " out of range");
      }
      ++counts[v];
    }
  }
  return counts;
}

std::vector<bool> hotspot_vertices(std::span<const int> counts, int cbs_total, double t_v) {
  std::vector<bool> mask(counts.size(), false);
  const double bar = cbs_total * t_v;
  for (std::size_t v = 0; v < counts.size(); ++v) {
    mask[v] = static_cast<double>(counts[v]) > bar;
  }
  return mask;
}

PrioritizedWork prioritize(std::span<const CBSSpec> cbs_set,
                           const std::vector<bool>& hotspot_mask, double t_h) {
  PrioritizedWork work;
  for (const CBSSpec& cbs : cbs_set) {
    if (cbs.members.empty()) throw std::invalid_argument("CBS with no members");
    int in_hotspot = 0;
    for (int v : cbs.members) {
      if (static_cast<std::size_t>(v) < hotspot_mask.size() && hotspot_mask[v]) ++in_hotspot;
    }
    const double fraction = static_cast<double>(in_hotspot) / cbs.members.size();
    (fraction >= t_h ? work.hotspot : work.normal).push_back(cbs);
  }
  return work;
}

PrioritizedWork prioritize(std::span<const CBSSpec> cbs_set, int vertex_count,
                           const PrioritizationThresholds& thresholds) {
  thresholds.validate();
  const auto counts = vertex_presence_counts(cbs_set, vertex_count);
  const auto mask = hotspot_vertices(counts, static_cast<int>(cbs_set.size()), thresholds.t_v);
  return prioritize(cbs_set, mask, thresholds.t_h);
}

}  // namespace backhaul
