#include <doctest.h>

#include "helpers.hpp"
#include "msaug/morse.hpp"
#include "msaug/parallel.hpp"
#include "oracle.hpp"

using namespace msaug;

TEST_SUITE("morse") {

TEST_CASE("1x3 increasing row") {
  const auto g = build_gradient(test::row({0, 1, 2}));
  CHECK(g.ascend_to == std::vector<VertexId>{1, 2, kNoVertex});
  CHECK(g.descend_to == std::vector<VertexId>{kNoVertex, 0, 1});
}

TEST_CASE("single vertex") {
  const auto f = test::row({7});
  const auto g = build_gradient(f);
  CHECK(g.ascend_to == std::vector<VertexId>{kNoVertex});
  CHECK(g.descend_to == std::vector<VertexId>{kNoVertex});
  const auto s = segment(f);
  CHECK(s.region_count() == 1);
  CHECK(s.regions[0] == RegionKey{0, 0});
}

TEST_CASE("3x3 index field: centre ascends to 7") {
  const auto g = build_gradient(test::grid(3, 3, {0, 1, 2, 3, 4, 5, 6, 7, 8}));
  CHECK(g.ascend_to[4] == 7);
  CHECK(g.descend_to[4] == 1);
}

TEST_CASE("ramp has one minimum, one maximum, one region") {
  const auto f = test::ramp(8);
  const auto crit = find_critical(build_gradient(f), f);
  CHECK(crit.minima == std::vector<VertexId>{0});
  CHECK(crit.maxima == std::vector<VertexId>{63});
  CHECK(crit.minima_values == std::vector<double>{0});
  CHECK(crit.maxima_values == std::vector<double>{14});
  const auto s = segment(f);
  CHECK(s.region_count() == 1);
  CHECK(s.regions[0] == RegionKey{0, 63});
}

TEST_CASE("two-bump field has its maxima at the bump centres") {
  const auto f = oracle::two_bump_field(32, 1.0, 0.8);
  const auto crit = find_critical(build_gradient(f), f);
  CHECK(crit.maxima == oracle::local_maxima(f));
  CHECK(crit.minima == oracle::local_minima(f));
  // centres (x, y) = (8, 9) and (22, 20)
  CHECK(crit.maxima == std::vector<VertexId>{9 * 32 + 8, 20 * 32 + 22});
}

TEST_CASE("checkerboard extrema follow the rank tie-break") {
  std::vector<double> v(16);
  for (std::size_t y = 0; y < 4; ++y) {
    for (std::size_t x = 0; x < 4; ++x) v[y * 4 + x] = (x + y) % 2;
  }
  const auto f = test::grid(4, 4, v);
  const auto crit = find_critical(build_gradient(f), f);
  CHECK(crit.minima == oracle::local_minima(f));
  CHECK(crit.maxima == oracle::local_maxima(f));
  // Every 0-cell's neighbours are 1-cells, so all eight are minima.
  CHECK(crit.minima.size() == 8);
  CHECK(crit.maxima.size() == 8);
}

TEST_CASE("1x7 segmentation") {
  const auto f = test::seven();
  const auto crit = find_critical(build_gradient(f), f);
  CHECK(crit.minima == std::vector<VertexId>{0, 4});
  CHECK(crit.maxima == std::vector<VertexId>{2, 6});
  const auto s = segment(f);
  CHECK(s.min_label == std::vector<VertexId>{0, 0, 0, 4, 4, 4, 4});
  CHECK(s.max_label == std::vector<VertexId>{2, 2, 2, 2, 6, 6, 6});
  // Vertex 3 descends to 4 and ascends to 2; three regions in all.
  CHECK(s.region_count() == 3);
  CHECK(s.regions[s.region_id[3]] == RegionKey{4, 2});
  CHECK(s.region_id == std::vector<RegionId>{0, 0, 0, 1, 2, 2, 2});
}

TEST_CASE("extrema label themselves") {
  std::mt19937_64 rng(2);
  const auto f = oracle::random_int_grid(rng, 12, 12, 3);
  const auto crit = find_critical(build_gradient(f), f);
  const auto s = segment(f);
  for (auto m : crit.minima) CHECK(s.min_label[m] == m);
  for (auto m : crit.maxima) CHECK(s.max_label[m] == m);
}

TEST_CASE("memoized labels equal naive chain walks") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = trial % 2 ? oracle::random_int_grid(rng, 20, 23, 5) : oracle::random_grid(rng, 20, 23);
    const auto s = segment(f);
    const auto naive = oracle::naive_labels(f);
    CHECK(s.min_label == naive.min_label);
    CHECK(s.max_label == naive.max_label);
  }
  const auto bumps = oracle::two_bump_field(32, 1.0, 0.7);
  const auto naive = oracle::naive_labels(bumps);
  CHECK(segment(bumps).min_label == naive.min_label);
  CHECK(segment(bumps).max_label == naive.max_label);
}

TEST_CASE("graph and 3D segmentation match naive walks") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> v3(4 * 5 * 6);
  for (auto& x : v3) x = u(rng);
  const auto f3 = ScalarField::grid(DomainKind::grid3d, {4, 5, 6}, v3);
  CHECK(segment(f3).min_label == oracle::naive_labels(f3).min_label);

  std::vector<Edge> edges;
  for (VertexId i = 1; i < 40; ++i) edges.push_back({static_cast<VertexId>(rng() % i), i});
  for (int k = 0; k < 20; ++k) {
    VertexId a = rng() % 40, b = rng() % 40;
    if (a != b) edges.push_back({a, b});
  }
  std::vector<double> vg(40);
  for (auto& x : vg) x = static_cast<double>(rng() % 6);
  const auto g = ScalarField::graph(vg, edges);
  const auto naive = oracle::naive_labels(g);
  CHECK(segment(g).min_label == naive.min_label);
  CHECK(segment(g).max_label == naive.max_label);
}

TEST_CASE("segmentation does not depend on the thread count") {
  std::mt19937_64 rng(8);
  const auto f = oracle::random_grid(rng, 300, 300);
  set_num_threads(1);
  const auto a = segment(f);
  set_num_threads(4);
  const auto b = segment(f);
  set_num_threads(0);
  CHECK(a.min_label == b.min_label);
  CHECK(a.max_label == b.max_label);
  CHECK(a.region_id == b.region_id);
}

TEST_CASE("region ids number regions by first appearance") {
  const auto s = make_segmentation({5, 5, 1, 1, 5}, {2, 3, 2, 2, 2});
  CHECK(s.region_id == std::vector<RegionId>{0, 1, 2, 2, 0});
  CHECK(s.regions[1] == RegionKey{5, 3});
}

}
