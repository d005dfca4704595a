#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "msaug/hierarchy.hpp"
#include "oracle.hpp"

using namespace msaug;

namespace {

PersistencePairSet pool_of(PairKind kind, std::vector<double> persistences) {
  PersistencePairSet s;
  s.kind = kind;
  VertexId v = 0;
  for (double p : persistences) {
    PersistencePair pair;
    pair.kind = kind;
    pair.extremum = v++;
    pair.saddle = v++;
    pair.absorbed_into = 1000;
    pair.persistence = p;
    s.pairs.push_back(pair);
  }
  s.vertex_count = v;
  return s;
}

std::vector<std::size_t> region_counts(const Hierarchy& h) {
  std::vector<std::size_t> out;
  for (const auto& l : h.levels) out.push_back(l.segmentation.region_count());
  return out;
}

}  // namespace

TEST_SUITE("hierarchy") {

TEST_CASE("schedule validation") {
  CHECK_NOTHROW(ThresholdSchedule({0.5, 1.5, kInfinity}));
  CHECK_THROWS_AS(ThresholdSchedule({1.0, 1.0}), Error);
  CHECK_THROWS_AS(ThresholdSchedule({2.0, 1.0}), Error);
  CHECK_THROWS_AS(ThresholdSchedule({-1.0}), Error);
  CHECK_THROWS_AS(ThresholdSchedule({NAN}), Error);
  CHECK_NOTHROW(ThresholdSchedule({1.0, 1.0}, true));
  CHECK_THROWS_AS(ThresholdSchedule({2.0, 1.0}, true), Error);
}

TEST_CASE("fractions on the 1x7 pool") {
  const auto f = test::seven();
  const std::vector<double> q{0, 1};
  const auto s = thresholds_from_fractions(sublevel_pairs(f), superlevel_pairs(f), q);
  CHECK_FALSE(s.empty_pool);
  REQUIRE(s.schedule.size() == 2);
  CHECK(s.schedule.epsilons()[0] == 0);
  CHECK(s.schedule.epsilons()[1] == std::nextafter(2.0, kInfinity));
}

TEST_CASE("fraction index rule") {
  const auto sub = pool_of(PairKind::sublevel, {4, 1});
  const auto sup = pool_of(PairKind::superlevel, {3, 2});
  const std::vector<double> half{0.5};
  CHECK(thresholds_from_fractions(sub, sup, half).schedule.epsilons()[0] == 3);
  const std::vector<double> several{0.25, 0.3, 0.75, 1.0};
  const auto s = thresholds_from_fractions(sub, sup, several).schedule;
  CHECK(s.epsilons()[0] == 2);  // ceil(1.0) = 1
  CHECK(s.epsilons()[1] == 3);  // ceil(1.2) = 2
  CHECK(s.epsilons()[2] == 4);
  CHECK(s.epsilons()[3] == std::nextafter(4.0, kInfinity));

  // 0.3 * 10 is 3.0000000000000004 in floating point; the index is still 3.
  const auto ten = pool_of(PairKind::sublevel, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  const auto none = pool_of(PairKind::superlevel, {});
  const std::vector<double> q3{0.3};
  CHECK(thresholds_from_fractions(ten, none, q3).schedule.epsilons()[0] == 4);
}

TEST_CASE("empty pool gives zero thresholds and a flag") {
  const auto f = test::ramp(8);
  const std::vector<double> q{0.3, 0.65, 1.0};
  const auto s = thresholds_from_fractions(sublevel_pairs(f), superlevel_pairs(f), q);
  CHECK(s.empty_pool);
  CHECK(s.schedule.size() == 3);
  for (double e : s.schedule.epsilons()) CHECK(e == 0);
  CHECK_THROWS_AS(thresholds_from_fractions(sublevel_pairs(f), superlevel_pairs(f), std::vector<double>{1.5}), Error);
}

TEST_CASE("simplify on the 1x7 field") {
  const auto f = test::seven();
  const auto seg = segment(f);
  const auto sub = sublevel_pairs(f);
  const auto sup = superlevel_pairs(f);
  CHECK(simplify(seg, sub, sup, 0).region_id == seg.region_id);
  CHECK(simplify(seg, sub, sup, 1.5).region_id == seg.region_id);
  // Exactly at the persistence nothing cancels; the comparison is strict.
  CHECK(simplify(seg, sub, sup, 2).region_count() == 3);
  const auto top = simplify(seg, sub, sup, 2.5);
  REQUIRE(top.region_count() == 1);
  CHECK(top.regions[0] == RegionKey{0, 6});
}

TEST_CASE("infinite threshold leaves the global extrema") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = trial % 2 ? oracle::random_int_grid(rng, 16, 16, 3) : oracle::random_grid(rng, 16, 16);
    const auto s = simplify(segment(f), sublevel_pairs(f), superlevel_pairs(f), kInfinity);
    REQUIRE(s.region_count() == 1);
    CHECK(s.regions[0].min == f.order().front());
    CHECK(s.regions[0].max == f.order().back());
  }
}

TEST_CASE("hierarchy levels on the 1x7 field") {
  const auto f = test::seven();
  CHECK(build_hierarchy(f, ThresholdSchedule{}).levels.size() == 1);

  const auto h = build_hierarchy(f, ThresholdSchedule({0.5, 1.5}));
  CHECK(region_counts(h) == std::vector<std::size_t>{3, 3, 3});
  CHECK(h.merges == std::vector<std::vector<RegionId>>{{0, 1, 2}, {0, 1, 2}});

  const auto h2 = build_hierarchy(f, ThresholdSchedule({0.5, 2.5}));
  CHECK(region_counts(h2) == std::vector<std::size_t>{3, 3, 1});
  CHECK(h2.merges[0] == std::vector<RegionId>{0, 1, 2});
  CHECK(h2.merges[1] == std::vector<RegionId>{0, 0, 0});
  CHECK(h2.levels[2].epsilon == 2.5);
  CHECK(h2.levels[2].dual.edges.empty());
}

TEST_CASE("region counts never grow and end at one on 64x64 fields") {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = oracle::random_grid(rng, 64, 64);
    const auto h = build_hierarchy(f, ThresholdSchedule({0.01, 0.05, 0.1, 0.2, 1.5}));
    const auto counts = region_counts(h);
    CHECK(std::is_sorted(counts.rbegin(), counts.rend()));
    CHECK(counts.back() == 1);
  }
}

TEST_CASE("merges map every region onto the region that holds its vertices") {
  std::mt19937_64 rng(3);
  const auto f = oracle::random_grid(rng, 20, 20);
  const auto h = build_hierarchy(f, ThresholdSchedule({0.05, 0.2, 0.4}));
  for (std::size_t l = 0; l + 1 < h.levels.size(); ++l) {
    const auto& a = h.levels[l].segmentation;
    const auto& b = h.levels[l + 1].segmentation;
    REQUIRE(h.merges[l].size() == a.region_count());
    for (VertexId v = 0; v < f.size(); ++v) CHECK(h.merges[l][a.region_id[v]] == b.region_id[v]);
  }
}

TEST_CASE("nested simplification equals direct simplification") {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = trial % 2 ? oracle::random_int_grid(rng, 16, 16, 5) : oracle::random_grid(rng, 16, 16);
    const auto seg = segment(f);
    const auto sub = sublevel_pairs(f);
    const auto sup = superlevel_pairs(f);
    std::vector<double> eps{0, 0.01, 0.05, 0.1, 0.3, 1, 2, kInfinity};
    for (const auto& p : sub.pairs) eps.push_back(p.persistence);
    std::sort(eps.begin(), eps.end());
    for (std::size_t i = 0; i < eps.size(); i += 3) {
      const auto first = simplify(seg, sub, sup, eps[i]);
      for (std::size_t j = i; j < eps.size(); j += 2) {
        const auto nested = simplify(first, sub, sup, eps[j]);
        const auto direct = simplify(seg, sub, sup, eps[j]);
        CHECK(nested.min_label == direct.min_label);
        CHECK(nested.max_label == direct.max_label);
        CHECK(nested.region_id == direct.region_id);
      }
    }
  }
}

TEST_CASE("simplified partitions equal brute-force cancellation") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = trial % 2 ? oracle::random_int_grid(rng, 12, 12, 4) : oracle::random_grid(rng, 12, 12);
    const auto seg = segment(f);
    const auto sub = sublevel_pairs(f);
    const auto sup = superlevel_pairs(f);
    for (double eps : {0.0, 0.02, 0.1, 0.25, 0.5, 1.0, 2.0, 3.5}) {
      const auto s = simplify(seg, sub, sup, eps);
      CHECK(std::vector<std::uint32_t>(s.region_id.begin(), s.region_id.end()) ==
            oracle::cancelled_partition(f, eps));
    }
  }
}

}
