#include "backhaul/validate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace backhaul {

namespace {

std::string describe(int cbs_id, int member, const std::string& what) {
  std::ostringstream out;
  out << "cbs " << cbs_id;
  if (member >= 0) out << " member " << member;
  out << ": " << what;
  return out.str();
}

}  // namespace

ValidationReport validate_placements(const BackhaulGraph& graph,
                                     std::span<const CBSSpec> cbs_set,
                                     std::span<const Placement> placements,
                                     std::span<const int> infeasible,
                                     const CostWeights& weights) {
  ValidationReport report;
  auto flag = [&](const std::string& issue) { report.issues.push_back(issue); };

  std::map<int, const CBSSpec*> specs;
  for (const CBSSpec& cbs : cbs_set) specs[cbs.id] = &cbs;

  // partition of the CBS set
  std::set<int> seen_ids;
  for (const Placement& p : placements) {
    if (!seen_ids.insert(p.cbs_id).second) {
      flag(describe(p.cbs_id, -1, "placed more than once"));
    }
  }
  for (int id : infeasible) {
    if (!seen_ids.insert(id).second) {
      flag(describe(id, -1, "listed as both placed and infeasible (or twice)"));
    }
  }
  for (const auto& [id, spec] : specs) {
    (void)spec;
    if (!seen_ids.count(id)) flag(describe(id, -1, "missing from placements and infeasible"));
  }
  for (int id : seen_ids) {
    if (!specs.count(id)) flag(describe(id, -1, "not part of the CBS set"));
  }

  // accumulated load per (link, wavelength) across all placements
  std::map<std::pair<int, int>, Gbps> load;

  for (const Placement& p : placements) {
    ++report.placements_checked;
    auto spec_it = specs.find(p.cbs_id);
    if (spec_it == specs.end()) continue;
    const CBSSpec& cbs = *spec_it->second;

    if (p.controller < 0 || p.controller >= graph.vertex_count()) {
      flag(describe(p.cbs_id, -1, "controller is not a graph vertex"));
      continue;
    }

    std::set<int> routed;
    std::map<int, int> predecessor;  // tree consistency across this placement's routes
    int n_g = 0, n_a = 0, n_l = 0;
    std::set<std::pair<int, int>> pairs_used;
    std::set<int> links_used;

    for (const MemberRoute& route : p.assignment.routes) {
      const int member = route.member;
      if (!routed.insert(member).second) {
        flag(describe(p.cbs_id, member, "routed twice"));
      }
      if (!std::binary_search(cbs.members.begin(), cbs.members.end(), member)) {
        flag(describe(p.cbs_id, member, "route for a vertex outside the CBS"));
        continue;
      }
      if (route.vertices.empty() || route.vertices.front() != p.controller ||
          route.vertices.back() != member) {
        flag(describe(p.cbs_id, member, "route does not run controller -> member"));
        continue;
      }
      if (route.wavelengths.size() + 1 != route.vertices.size()) {
        flag(describe(p.cbs_id, member, "one wavelength per hop expected"));
        continue;
      }
      std::set<int> distinct(route.vertices.begin(), route.vertices.end());
      if (distinct.size() != route.vertices.size()) {
        flag(describe(p.cbs_id, member, "route revisits a vertex"));
        continue;
      }

      double latency = 0.0;
      bool broken = false;
      for (std::size_t i = 0; i + 1 < route.vertices.size(); ++i) {
        const int a = route.vertices[i];
        const int b = route.vertices[i + 1];
        if (a < 0 || b < 0 || a >= graph.vertex_count() || b >= graph.vertex_count()) {
          flag(describe(p.cbs_id, member, "route vertex out of range"));
          broken = true;
          break;
        }
        auto link_id = graph.link_between(a, b);
        if (!link_id) {
          flag(describe(p.cbs_id, member,
                        "no link " + std::to_string(a) + "-" + std::to_string(b)));
          broken = true;
          break;
        }
        const Link& link = graph.link(*link_id);
        const int w = route.wavelengths[i];
        if (w < 0 || w >= link.wavelength_count()) {
          flag(describe(p.cbs_id, member, "wavelength index out of range"));
          broken = true;
          break;
        }
        latency += link.latency_s;

        auto pred = predecessor.emplace(b, a);
        if (!pred.second && pred.first->second != a) {
          flag(describe(p.cbs_id, member, "routes do not form a tree (two parents for vertex " +
                                              std::to_string(b) + ")"));
        }

        pairs_used.emplace(*link_id, w);
        links_used.insert(*link_id);
        load[{*link_id, w}] += cbs.demand_per_bs;
      }
      if (broken) continue;

      if (2.0 * latency > cbs.rtt_budget) {
        flag(describe(p.cbs_id, member, "round-trip latency exceeds the budget"));
      }
    }

    for (int member : cbs.members) {
      if (!routed.count(member)) flag(describe(p.cbs_id, member, "member has no route"));
    }

    // cost identity, recounted from the routes
    n_g = static_cast<int>(pairs_used.size());
    n_l = static_cast<int>(links_used.size());
    for (const auto& [link_id, w] : pairs_used) {
      // activity before this placement = accumulated load minus this
      // placement's own contribution on the pair
      Gbps own = kZeroGbps;
      for (const MemberRoute& route : p.assignment.routes) {
        for (std::size_t i = 0; i < route.wavelengths.size(); ++i) {
          auto lid = graph.link_between(route.vertices[i], route.vertices[i + 1]);
          if (lid && *lid == link_id && route.wavelengths[i] == w) own += cbs.demand_per_bs;
        }
      }
      const Gbps before = load[{link_id, w}] - own;
      if (before == kZeroGbps && !graph.link(link_id).wavelengths[w].active()) ++n_a;
    }
    if (n_g != p.cost.n_g || n_a != p.cost.n_a || n_l != p.cost.n_l) {
      flag(describe(p.cbs_id, -1, "cost counts do not match the routes (expected ng=" +
                                      std::to_string(n_g) + " na=" + std::to_string(n_a) +
                                      " nl=" + std::to_string(n_l) + ")"));
    }
    if (p.cost.n != combined_cost(weights, p.cost.n_g, p.cost.n_a, p.cost.n_l)) {
      flag(describe(p.cbs_id, -1, "cost n does not equal the weighted sum"));
    }
  }

  // joint capacity after all placements
  for (const auto& [key, total] : load) {
    const auto& [link_id, w] = key;
    const Link& link = graph.link(link_id);
    if (w >= link.wavelength_count()) continue;  // already flagged above
    if (link.wavelengths[w].allocated + total > link.wavelengths[w].capacity) {
      flag("link " + std::to_string(link.u) + "-" + std::to_string(link.v) + " wavelength " +
           std::to_string(w) + ": load " + (link.wavelengths[w].allocated + total).str() +
           " exceeds capacity " + link.wavelengths[w].capacity.str());
    }
  }

  return report;
}

}  // namespace backhaul
