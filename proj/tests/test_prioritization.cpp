#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "backhaul/prioritization.hpp"
#include "test_helpers.hpp"

using namespace backhaul;
using backhaul::testing::gbps;
using backhaul::testing::make_cbs;

namespace {

std::vector<CBSSpec> random_cbs_set(ScenarioRng& rng, int cbs_count, int vertex_count) {
  std::vector<CBSSpec> set;
  for (int i = 0; i < cbs_count; ++i) {
    std::vector<int> members;
    const int size = 1 + static_cast<int>(rng.uniform(0, 5));
    for (int m = 0; m < size; ++m) {
      members.push_back(static_cast<int>(rng.uniform(0, vertex_count)));
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    set.push_back(make_cbs(i, members, gbps("1.25")));
  }
  return set;
}

std::vector<int> ids(const std::vector<CBSSpec>& cbs_set) {
  std::vector<int> out;
  for (const CBSSpec& c : cbs_set) out.push_back(c.id);
  return out;
}

}  // namespace

TEST_CASE("vertex presence counts") {
  CHECK(vertex_presence_counts({}, 5) == std::vector<int>{0, 0, 0, 0, 0});

  std::vector<CBSSpec> set;
  for (int i = 0; i < 10; ++i) {
    set.push_back(make_cbs(i, i < 2 ? std::vector<int>{0, 1} : std::vector<int>{1, 2},
                           gbps("1.25")));
  }
  const auto counts = vertex_presence_counts(set, 3);
  CHECK(counts[0] == 2);   // in 2 of 10
  CHECK(counts[1] == 10);  // in every CBS
  CHECK(counts[2] == 8);
}

TEST_CASE("hotspot vertex threshold is strict") {
  const std::vector<int> counts{1, 2, 0};
  const auto mask = hotspot_vertices(counts, 10, 0.1);
  CHECK(!mask[0]);  // 1 > 1 is false
  CHECK(mask[1]);   // 2 > 1
  CHECK(!mask[2]);

  // threshold dominating every count empties the set
  const auto none = hotspot_vertices(counts, 10, 1.0);
  CHECK(std::none_of(none.begin(), none.end(), [](bool b) { return b; }));
}

TEST_CASE("CBS threshold is inclusive") {
  std::vector<CBSSpec> set{make_cbs(0, {0, 1, 2, 3, 4}, gbps("1.25")),
                           make_cbs(1, {0, 1, 2, 3, 9}, gbps("1.25"))};
  std::vector<bool> mask(10, false);
  for (int v = 0; v < 5; ++v) mask[v] = true;

  const auto work = prioritize(set, mask, 0.9);
  REQUIRE(work.hotspot.size() == 1);
  CHECK(work.hotspot[0].id == 0);  // 5/5 = 1.0 >= 0.9
  REQUIRE(work.normal.size() == 1);
  CHECK(work.normal[0].id == 1);  // 4/5 = 0.8 < 0.9

  const auto all_hot = prioritize(set, mask, 0.0);
  CHECK(all_hot.hotspot.size() == 2);
  CHECK(all_hot.normal.empty());
}

TEST_CASE("prioritize partitions and preserves order") {
  ScenarioRng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto set = random_cbs_set(rng, 12, 8);
    const PrioritizationThresholds t{rng.uniform(0, 0.3), rng.uniform(0, 1)};
    const auto work = prioritize(set, 8, t);
    CHECK(work.hotspot.size() + work.normal.size() == set.size());

    // disjoint and order-preserving within each class
    auto hotspot_ids = ids(work.hotspot);
    auto normal_ids = ids(work.normal);
    CHECK(std::is_sorted(hotspot_ids.begin(), hotspot_ids.end()));
    CHECK(std::is_sorted(normal_ids.begin(), normal_ids.end()));
    std::vector<int> all = hotspot_ids;
    all.insert(all.end(), normal_ids.begin(), normal_ids.end());
    std::sort(all.begin(), all.end());
    CHECK(all == ids(set));
  }
}

TEST_CASE("raising thresholds never grows the hotspot class") {
  ScenarioRng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto set = random_cbs_set(rng, 15, 10);
    const double tv_low = rng.uniform(0, 0.2), tv_high = tv_low + rng.uniform(0, 0.3);
    const double th_low = rng.uniform(0, 0.5), th_high = th_low + rng.uniform(0, 0.5);

    // monotone in t_h
    const auto a = prioritize(set, 10, {tv_low, th_low});
    const auto b = prioritize(set, 10, {tv_low, std::min(1.0, th_high)});
    for (const CBSSpec& c : b.hotspot) {
      CHECK(std::any_of(a.hotspot.begin(), a.hotspot.end(),
                        [&](const CBSSpec& x) { return x.id == c.id; }));
    }

    // monotone in t_v
    const auto c1 = prioritize(set, 10, {tv_low, th_low});
    const auto c2 = prioritize(set, 10, {tv_high, th_low});
    for (const CBSSpec& c : c2.hotspot) {
      CHECK(std::any_of(c1.hotspot.begin(), c1.hotspot.end(),
                        [&](const CBSSpec& x) { return x.id == c.id; }));
    }
  }
}

TEST_CASE("classification is permutation covariant") {
  ScenarioRng rng(29);
  const auto set = random_cbs_set(rng, 10, 8);
  const PrioritizationThresholds t{0.15, 0.6};
  const auto base = prioritize(set, 8, t);

  std::vector<CBSSpec> reversed(set.rbegin(), set.rend());
  const auto perm = prioritize(reversed, 8, t);

  auto base_hot = ids(base.hotspot);
  auto perm_hot = ids(perm.hotspot);
  std::sort(base_hot.begin(), base_hot.end());
  std::sort(perm_hot.begin(), perm_hot.end());
  CHECK(base_hot == perm_hot);
  CHECK(ids(perm.hotspot) == std::vector<int>(base_hot.rbegin(), base_hot.rend()));
}
