#include "backhaul/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace backhaul {

HeuristicResult static_reconfiguration(BackhaulGraph& graph, std::span<const CBSSpec> cbs_set,
                                       int fixed_root,
                                       const PrioritizationThresholds& thresholds,
                                       const CostWeights& weights) {
  if (fixed_root < 0 || fixed_root >= graph.vertex_count()) {
    throw std::invalid_argument("fixed root out of range");
  }
  const int roots[1] = {fixed_root};
  const PrioritizedWork work = prioritize(cbs_set, graph.vertex_count(), thresholds);

  HeuristicResult result;
  auto place_all = [&](std::span<const CBSSpec> ordered) {
    for (const CBSSpec& cbs : ordered) {
      if (auto placement = place_cbs_at_roots(graph, cbs, weights, roots)) {
        result.placements.push_back(std::move(*placement));
      } else {
        result.infeasible.push_back(cbs.id);
      }
    }
  };
  place_all(work.hotspot);
  place_all(work.normal);
  return result;
}

ShortestPaths lex_shortest_paths(const BackhaulGraph& graph, int root) {
  const int n = graph.vertex_count();
  ShortestPaths sp;
  sp.dist.assign(n, std::numeric_limits<double>::infinity());
  sp.path.assign(n, {});
  sp.dist[root] = 0.0;
  sp.path[root] = {root};

  std::vector<bool> done(n, false);
  for (int round = 0; round < n; ++round) {
    int u = -1;
    for (int v = 0; v < n; ++v) {
      if (done[v] || std::isinf(sp.dist[v])) continue;
      if (u < 0 || sp.dist[v] < sp.dist[u] ||
          (sp.dist[v] == sp.dist[u] &&
           std::lexicographical_compare(sp.path[v].begin(), sp.path[v].end(),
                                        sp.path[u].begin(), sp.path[u].end()))) {
        u = v;
      }
    }
    if (u < 0) break;
    done[u] = true;
    for (int link_id : graph.incident(u)) {
      const Link& link = graph.link(link_id);
      const int w = link.other(u);
      if (done[w]) continue;
      const double nd = sp.dist[u] + link.latency_s;
      bool better = nd < sp.dist[w];
      if (!better && nd == sp.dist[w]) {
        std::vector<int> cand = sp.path[u];
        cand.push_back(w);
        better = std::lexicographical_compare(cand.begin(), cand.end(), sp.path[w].begin(),
                                              sp.path[w].end());
      }
      if (better) {
        sp.dist[w] = nd;
        sp.path[w] = sp.path[u];
        sp.path[w].push_back(w);
      }
    }
  }
  return sp;
}

int centroid_vertex(const BackhaulGraph& graph) {
  if (graph.vertex_count() == 0) throw std::invalid_argument("empty graph");
  double cx = 0, cy = 0;
  for (const Vertex& v : graph.vertices()) {
    cx += v.x;
    cy += v.y;
  }
  cx /= graph.vertex_count();
  cy /= graph.vertex_count();
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (const Vertex& v : graph.vertices()) {
    const double d = std::hypot(v.x - cx, v.y - cy);
    if (d < best_d) {
      best_d = d;
      best = v.id;
    }
  }
  return best;
}

OversubscriptionReport static_backhaul(const BackhaulGraph& graph,
                                       std::span<const CBSSpec> cbs_set, int fixed_root,
                                       int static_wavelength) {
  if (fixed_root < 0 || fixed_root >= graph.vertex_count()) {
    throw std::invalid_argument("fixed root out of range");
  }
  if (static_wavelength < 0) throw std::invalid_argument("negative wavelength index");
  for (const Link& l : graph.links()) {
    if (static_wavelength >= l.wavelength_count()) {
      throw std::invalid_argument("static wavelength " + std::to_string(static_wavelength) +
                                  " out of range on link " + std::to_string(l.id));
    }
  }

  const ShortestPaths sp = lex_shortest_paths(graph, fixed_root);

  // pass 1: offered load per link on the static wavelength
  std::vector<Gbps> offered(static_cast<std::size_t>(graph.link_count()), kZeroGbps);
  std::vector<std::vector<int>> cbs_hop_links;
  std::vector<bool> cbs_undeliverable;
  cbs_hop_links.reserve(cbs_set.size());
  for (const CBSSpec& cbs : cbs_set) {
    std::vector<int> hop_links;
    bool undeliverable = false;
    for (int member : cbs.members) {
      if (member == fixed_root) continue;  // served locally
      if (sp.path[member].empty()) {
        undeliverable = true;
        continue;
      }
      const auto& path = sp.path[member];
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const int link_id = *graph.link_between(path[i], path[i + 1]);
        offered[link_id] += cbs.demand_per_bs;
        hop_links.push_back(link_id);
      }
    }
    cbs_hop_links.push_back(std::move(hop_links));
    cbs_undeliverable.push_back(undeliverable);
  }

  OversubscriptionReport report;
  for (int link_id = 0; link_id < graph.link_count(); ++link_id) {
    if (offered[link_id] == kZeroGbps) continue;
    const Gbps capacity = graph.link(link_id).wavelengths[static_wavelength].capacity;
    PairLoad pair{link_id, static_wavelength, offered[link_id], capacity};
    report.total_offered += pair.offered;
    report.total_excess += pair.excess();
    if (pair.excess() > kZeroGbps) ++report.oversubscribed_pairs;
    report.pairs.push_back(pair);
  }

  // pass 2: proportional fair share per CBS, min over its hops
  for (std::size_t i = 0; i < cbs_set.size(); ++i) {
    double fraction = cbs_undeliverable[i] ? 0.0 : 1.0;
    for (int link_id : cbs_hop_links[i]) {
      const Gbps load = offered[link_id];
      const Gbps capacity = graph.link(link_id).wavelengths[static_wavelength].capacity;
      if (load > capacity) {
        fraction = std::min(fraction, capacity.gbps() / load.gbps());
      }
    }
    report.per_cbs.push_back({cbs_set[i].id, fraction});
  }
  return report;
}

void OversubscriptionReport::write_csv(std::ostream& out, const BackhaulGraph& graph) const {
  out << "link_u,link_v,wavelength,offered_gbps,capacity_gbps,excess_gbps\n";
  char buf[160];
  for (const PairLoad& p : pairs) {
    const Link& l = graph.link(p.link);
    std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.4f,%.4f,%.4f\n", l.u, l.v, p.wavelength,
                  p.offered.gbps(), p.capacity.gbps(), p.excess().gbps());
    out << buf;
  }
  out << "cbs_id,delivered_fraction\n";
  for (const CbsDelivery& d : per_cbs) {
    std::snprintf(buf, sizeof(buf), "%d,%.4f\n", d.cbs_id, d.delivered_fraction);
    out << buf;
  }
}

}  // namespace backhaul
