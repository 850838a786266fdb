// Acceptance suite: desk-scale simulation trends plus the property gates.
// One PASS/FAIL line per criterion; the exit code is the number of failed
// criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "backhaul/experiments.hpp"
#include "backhaul/records.hpp"
#include "backhaul/validate.hpp"
#include "test_helpers.hpp"

using namespace backhaul;

namespace {

struct PointKey {
  double h;
  std::int64_t demand16;
  int cbs_count;
  Variant variant;

  bool operator<(const PointKey& o) const {
    return std::tie(h, demand16, cbs_count, variant) <
           std::tie(o.h, o.demand16, o.cbs_count, o.variant);
  }
};

struct PointMean {
  double feasibility = 0;
  double wavelengths_total = 0;
  int rows = 0;
};

std::map<PointKey, PointMean> sweep_means(const std::vector<MetricsRow>& rows) {
  std::map<PointKey, PointMean> means;
  for (const MetricsRow& row : rows) {
    PointKey key{row.hotspot_fraction, row.demand.sixteenths(), row.cbs_count, row.variant};
    PointMean& m = means[key];
    m.feasibility += row.feasibility;
    m.wavelengths_total += row.wavelengths_total;
    ++m.rows;
  }
  for (auto& [key, m] : means) {
    m.feasibility /= m.rows;
    m.wavelengths_total /= m.rows;
  }
  return means;
}

ExperimentConfig paper_sweep(std::vector<double> hs, std::vector<Variant> variants) {
  ExperimentConfig config;
  config.base.grid_side = 10;
  config.cbs_counts = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  config.demands = {Gbps::parse("0.625"), Gbps::parse("1.25"), Gbps::parse("2.5")};
  config.hotspot_fractions = std::move(hs);
  config.variants = std::move(variants);
  config.replications = 20;
  config.base_seed = 42;
  config.output = "unused";
  return config;
}

std::string gbps_str(std::int64_t sixteenths) { return Gbps::from_sixteenths(sixteenths).str(); }

bool graph_within_capacity(const BackhaulGraph& g) {
  for (const Link& l : g.links()) {
    for (const WavelengthState& ws : l.wavelengths) {
      if (ws.allocated > ws.capacity) return false;
    }
  }
  return true;
}

std::string strip_runtime_column(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    out += line.substr(0, line.rfind(','));
    out += '\n';
  }
  return out;
}

struct Outcome {
  bool pass;
  std::string detail;
};

// criterion 1: h=0 prioritized mean feasibility >= 0.98 at every point
Outcome criterion_1(const std::map<PointKey, PointMean>& h0) {
  double worst = 1.0;
  std::string worst_at = "-";
  int failures = 0;
  for (const auto& [key, m] : h0) {
    if (key.variant != Variant::prioritized) continue;
    if (m.feasibility < worst) {
      worst = m.feasibility;
      worst_at = "d=" + gbps_str(key.demand16) + ",n=" + std::to_string(key.cbs_count);
    }
    if (m.feasibility < 0.98) ++failures;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "min mean feasibility %.4f at (%s), %d/30 points below 0.98",
                worst, worst_at.c_str(), failures);
  return {failures == 0, buf};
}

// criterion 2: at the highest count with unprioritized mean < 0.8, the
// paired prioritized-minus-unprioritized gap is >= 0.15
Outcome criterion_2(const std::map<PointKey, PointMean>& means) {
  std::ostringstream detail;
  bool all_pass = true;
  bool any_triggered = false;
  for (double h : {0.5, 0.75}) {
    for (std::int64_t d16 : {10, 20, 40}) {
      int pick = -1;
      for (int count : {10, 20, 30, 40, 50, 60, 70, 80, 90, 100}) {
        const auto it = means.find({h, d16, count, Variant::unprioritized});
        if (it != means.end() && it->second.feasibility < 0.8) pick = count;
      }
      if (pick < 0) continue;  // never drops below 0.8: vacuous for this pair
      any_triggered = true;
      const double up = means.at({h, d16, pick, Variant::unprioritized}).feasibility;
      const double pr = means.at({h, d16, pick, Variant::prioritized}).feasibility;
      const double gap = pr - up;
      if (gap < 0.15) all_pass = false;
      char buf[96];
      std::snprintf(buf, sizeof(buf), " [h=%.2f d=%s n=%d gap=%+.3f]", h,
                    gbps_str(d16).c_str(), pick, gap);
      detail << buf;
    }
  }
  if (!any_triggered) return {true, "vacuous: unprioritized never fell below 0.8"};
  return {all_pass, "need gap >= 0.15 at" + detail.str()};
}

// criterion 3: |prioritized - unprioritized| <= 0.05 at every h=1 point
Outcome criterion_3(const std::map<PointKey, PointMean>& h1) {
  double worst = 0;
  std::string worst_at = "-";
  for (const auto& [key, m] : h1) {
    if (key.variant != Variant::prioritized) continue;
    const PointKey other{key.h, key.demand16, key.cbs_count, Variant::unprioritized};
    const double gap = std::abs(m.feasibility - h1.at(other).feasibility);
    if (gap > worst) {
      worst = gap;
      worst_at = "d=" + gbps_str(key.demand16) + ",n=" + std::to_string(key.cbs_count);
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "max |gap| %.4f at (%s), bound 0.05", worst, worst_at.c_str());
  return {worst <= 0.05, buf};
}

// criterion 4: h=0 prioritized total wavelengths <= unprioritized at every
// point, and >= 5% lower at the largest cbs_count
Outcome criterion_4(const std::map<PointKey, PointMean>& h0) {
  bool le_everywhere = true;
  std::ostringstream detail;
  for (const auto& [key, m] : h0) {
    if (key.variant != Variant::prioritized) continue;
    const PointKey other{key.h, key.demand16, key.cbs_count, Variant::unprioritized};
    if (m.wavelengths_total > h0.at(other).wavelengths_total) le_everywhere = false;
  }
  bool five_percent = true;
  for (std::int64_t d16 : {10, 20, 40}) {
    const double pr = h0.at({0.0, d16, 100, Variant::prioritized}).wavelengths_total;
    const double up = h0.at({0.0, d16, 100, Variant::unprioritized}).wavelengths_total;
    const double ratio = up > 0 ? pr / up : 1.0;
    if (!(ratio <= 0.95)) five_percent = false;
    char buf[64];
    std::snprintf(buf, sizeof(buf), " [d=%s ratio=%.4f]", gbps_str(d16).c_str(), ratio);
    detail << buf;
  }
  return {le_everywhere && five_percent,
          std::string(le_everywhere ? "<= everywhere" : "NOT <= everywhere") +
              ", need ratio <= 0.95 at n=100:" + detail.str()};
}

// criterion 5: on a 4x4 grid over 100 paired seeds, full flexibility is
// never worse than the fixed root and strictly better on >= 10% of seeds
Outcome criterion_5() {
  int dominated = 0, strict = 0;
  for (int rep = 0; rep < 100; ++rep) {
    ScenarioParams p;
    p.grid_side = 4;
    p.cbs_count = 8;
    p.demand = Gbps::parse("1.25");
    p.seed = replication_seed(11, rep);
    const Scenario s = generate_scenario(p);
    BackhaulGraph g1 = s.graph, g2 = s.graph;
    const auto full = run_heuristic(g1, s.cbs, {}, {});
    const auto fixed = static_reconfiguration(g2, s.cbs, centroid_vertex(s.graph), {}, {});
    if (full.placements.size() >= fixed.placements.size()) ++dominated;
    if (full.placements.size() > fixed.placements.size()) ++strict;
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "dominated on %d/100 seeds, strictly better on %d (need 100 and >= 10)",
                dominated, strict);
  return {dominated == 100 && strict >= 10, buf};
}

// criterion 6: on the 16-BS scenario the admission-controlled variants
// never oversubscribe; static backhaul does so on >= 80% of seeds from
// some cbs_count threshold up
Outcome criterion_6() {
  const std::vector<int> counts{2, 4, 6, 8, 12, 16};
  const int seeds = 25;
  int admission_violations = 0;
  std::map<int, int> positive_excess;
  for (int count : counts) {
    for (int rep = 0; rep < seeds; ++rep) {
      ScenarioParams p;
      p.grid_side = 4;
      p.cbs_count = count;
      p.demand = Gbps::parse("1.25");
      p.seed = replication_seed(600 + count, rep);
      const Scenario s = generate_scenario(p);

      BackhaulGraph g1 = s.graph, g2 = s.graph;
      const auto full = run_heuristic(g1, s.cbs, {}, {});
      const auto fixed = static_reconfiguration(g2, s.cbs, centroid_vertex(s.graph), {}, {});
      const auto v1 = validate_placements(s.graph, s.cbs, full.placements, full.infeasible, {});
      const auto v2 = validate_placements(s.graph, s.cbs, fixed.placements, fixed.infeasible, {});
      if (!v1.ok() || !v2.ok() || !graph_within_capacity(g1) || !graph_within_capacity(g2)) {
        ++admission_violations;
      }

      const auto report = static_backhaul(s.graph, s.cbs, centroid_vertex(s.graph), 0);
      if (report.total_excess > kZeroGbps) ++positive_excess[count];
    }
  }
  int threshold = -1;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    bool from_here = true;
    for (std::size_t j = i; j < counts.size(); ++j) {
      from_here = from_here && positive_excess[counts[j]] * 5 >= seeds * 4;  // >= 80%
    }
    if (from_here) {
      threshold = counts[i];
      break;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "admission variants: %d oversubscribed runs (need 0); static backhaul excess "
                "on >= 80%% of seeds from cbs_count %d up",
                admission_violations, threshold);
  return {admission_violations == 0 && threshold >= 0, buf};
}

// criterion 7: heuristic placements on tiny instances are oracle-feasible
// at no lower oracle cost, 500 instances
Outcome criterion_7() {
  int violations = 0, cbs_total = 0, placed = 0;
  for (int i = 0; i < 500; ++i) {
    Scenario s = backhaul::testing::tiny_instance(1000 + i);
    BackhaulGraph g = s.graph;
    const auto report = oracle_check(g, s.cbs, {}, {}, g.vertex_count() - 1);
    violations += report.violations;
    for (const OracleCheckRow& row : report.rows) {
      ++cbs_total;
      placed += row.heuristic_feasible ? 1 : 0;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%d violations over %d instances / %d CBSs (%d placed)",
                violations, 500, cbs_total, placed);
  return {violations == 0, buf};
}

// criterion 8: independent validator plus atomicity over 1000 randomized runs
Outcome criterion_8() {
  int issue_count = 0, atomicity_breaks = 0, runs = 0, placements = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const ScenarioParams params = backhaul::testing::random_run_params(seed);
    const Scenario s = generate_scenario(params);
    BackhaulGraph g = s.graph;

    // mirror run_heuristic's order, checking atomicity around every attempt
    const PrioritizedWork work = prioritize(s.cbs, g.vertex_count(), {});
    std::vector<CBSSpec> order = work.hotspot;
    order.insert(order.end(), work.normal.begin(), work.normal.end());
    HeuristicResult result;
    for (const CBSSpec& cbs : order) {
      const auto before = g.allocation_state();
      if (auto placement = place_cbs(g, cbs, {})) {
        result.placements.push_back(std::move(*placement));
      } else {
        result.infeasible.push_back(cbs.id);
        if (g.allocation_state() != before) ++atomicity_breaks;
      }
    }
    const auto report = validate_placements(s.graph, s.cbs, result.placements,
                                            result.infeasible, {});
    issue_count += static_cast<int>(report.issues.size());
    placements += static_cast<int>(result.placements.size());
    ++runs;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%d validator issues, %d atomicity breaks over %d runs (%d placements)",
                issue_count, atomicity_breaks, runs, placements);
  return {issue_count == 0 && atomicity_breaks == 0, buf};
}

// criterion 9: byte-identical outputs across reruns and worker counts
// (the wall-clock runtime column is the spec's recorded exception)
Outcome criterion_9() {
  ExperimentConfig config;
  config.base.grid_side = 5;
  config.cbs_counts = {6, 12};
  config.demands = {Gbps::parse("1.25"), Gbps::parse("2.5")};
  config.hotspot_fractions = {0.0, 0.75};
  config.variants = {Variant::prioritized, Variant::unprioritized,
                     Variant::static_reconfiguration, Variant::static_backhaul};
  config.replications = 3;
  config.base_seed = 77;
  config.output = "unused";

  const auto a = run_sweep(config, 1);
  const auto b = run_sweep(config, 1);
  const auto c = run_sweep(config, 4);
  const bool csv_ok = strip_runtime_column(csv_string(a)) == strip_runtime_column(csv_string(b)) &&
                      strip_runtime_column(csv_string(a)) == strip_runtime_column(csv_string(c));

  bool records_ok = true;
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    ScenarioParams p;
    p.grid_side = 5;
    p.cbs_count = 15;
    p.hotspot_fraction = 0.5;
    p.seed = seed;
    const Scenario s = generate_scenario(p);
    BackhaulGraph g1 = s.graph, g2 = s.graph;
    const auto r1 = run_heuristic(g1, s.cbs, {}, {});
    const auto r2 = run_heuristic(g2, s.cbs, {}, {});
    records_ok = records_ok && placement_records_string(r1) == placement_records_string(r2);
  }
  return {csv_ok && records_ok,
          std::string("CSV stable across reruns and jobs (runtime column excluded): ") +
              (csv_ok ? "yes" : "NO") + "; placement records byte-identical: " +
              (records_ok ? "yes" : "NO")};
}

}  // namespace

int main() {
  const auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };

  std::printf("running desk-scale sweeps (10x10 grid, 20 seeds per point)...\n");
  const auto h0_rows = run_sweep(paper_sweep({0.0}, {Variant::prioritized,
                                                     Variant::unprioritized}), 1);
  const auto h0 = sweep_means(h0_rows);
  std::printf("  h=0 sweep done at %.0fs\n", elapsed());
  const auto hmid_rows = run_sweep(paper_sweep({0.5, 0.75}, {Variant::prioritized,
                                                             Variant::unprioritized}), 1);
  const auto hmid = sweep_means(hmid_rows);
  std::printf("  h=0.5/0.75 sweep done at %.0fs\n", elapsed());
  const auto h1_rows = run_sweep(paper_sweep({1.0}, {Variant::prioritized,
                                                     Variant::unprioritized}), 1);
  const auto h1 = sweep_means(h1_rows);
  std::printf("  h=1 sweep done at %.0fs\n", elapsed());

  struct Named {
    int id;
    const char* name;
    Outcome outcome;
  };
  std::vector<Named> results;
  results.push_back({1, "no-hotspot feasibility", criterion_1(h0)});
  results.push_back({2, "hotspot improvement", criterion_2(hmid)});
  results.push_back({3, "all-hotspot parity", criterion_3(h1)});
  results.push_back({4, "wavelength efficiency", criterion_4(h0)});
  results.push_back({5, "flexibility dominance", criterion_5()});
  results.push_back({6, "loss analogue", criterion_6()});
  results.push_back({7, "oracle soundness", criterion_7()});
  results.push_back({8, "validator suite", criterion_8()});
  results.push_back({9, "determinism", criterion_9()});

  int failures = 0;
  for (const Named& r : results) {
    failures += r.outcome.pass ? 0 : 1;
    std::printf("%s criterion %d (%s): %s\n", r.outcome.pass ? "PASS" : "FAIL", r.id, r.name,
                r.outcome.detail.c_str());
  }
  std::printf("%d/9 criteria passed in %.0fs\n", 9 - failures, elapsed());
  return failures;
}
