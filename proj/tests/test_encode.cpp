#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "helpers.hpp"
#include "msaug/encode.hpp"
#include "oracle.hpp"

using namespace msaug;

namespace {

PersistenceDiagram points(std::vector<DiagramPoint> pts) {
  PersistenceDiagram d;
  d.points = std::move(pts);
  std::sort(d.points.begin(), d.points.end());
  return d;
}

PersistenceDiagram random_diagram(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<DiagramPoint> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double b = u(rng);
    pts.push_back({b, b + u(rng)});
  }
  return points(pts);
}

/// Every tent evaluated directly, sorted descending; entry k or 0.
double landscape_oracle(const PersistenceDiagram& d, std::size_t k, double t) {
  std::vector<double> v;
  for (const auto& p : d.points) v.push_back(std::max(0.0, std::min(t - p.birth, p.death - t)));
  std::sort(v.begin(), v.end(), std::greater<>());
  return k < v.size() ? v[k] : 0.0;
}

}  // namespace

TEST_SUITE("encode") {

TEST_CASE("ramp with no simplification gives two constant channels") {
  const auto h = build_hierarchy(test::ramp(8), ThresholdSchedule{});
  const auto cs = to_channels(h);
  CHECK(cs.shape == std::vector<std::size_t>{2, 8, 8});
  CHECK(std::all_of(cs.data.begin(), cs.data.begin() + 64, [](double x) { return x == 0; }));
  CHECK(std::all_of(cs.data.begin() + 64, cs.data.end(), [](double x) { return x == 14; }));
  CHECK(cs.kinds == std::vector<ChannelKind>{ChannelKind::f_min, ChannelKind::f_max});
  CHECK(cs.norm_min == std::vector<double>{0, 14});
}

TEST_CASE("1x7 base channels") {
  const auto h = build_hierarchy(test::seven(), ThresholdSchedule{});
  const auto cs = to_channels(h);
  CHECK(cs.shape == std::vector<std::size_t>{2, 1, 7});
  CHECK(std::vector<double>(cs.data.begin(), cs.data.begin() + 7) == std::vector<double>(7, 0.0));
  CHECK(std::vector<double>(cs.data.begin() + 7, cs.data.end()) == std::vector<double>(7, 2.0));
}

TEST_CASE("four levels give eight channels") {
  std::mt19937_64 rng(1);
  const auto f = oracle::random_grid(rng, 32, 32);
  const auto sub = sublevel_pairs(f);
  const auto sup = superlevel_pairs(f);
  const std::vector<double> q{0.3, 0.65, 1.0};
  const auto h = build_hierarchy(f, thresholds_from_fractions(sub, sup, q).schedule);
  const auto cs = to_channels(h);
  CHECK(cs.shape == std::vector<std::size_t>{8, 32, 32});
  CHECK(cs.level_index == std::vector<std::size_t>{0, 0, 1, 1, 2, 2, 3, 3});
  // The top level holds only the global extrema.
  for (std::size_t v = 0; v < 1024; ++v) {
    CHECK(cs.data[6 * 1024 + v] == f.value(f.order().front()));
    CHECK(cs.data[7 * 1024 + v] == f.value(f.order().back()));
  }
  ChannelOptions with_ids;
  with_ids.region_ids = true;
  CHECK(to_channels(h, with_ids).shape.front() == 12);
}

TEST_CASE("channels reject graph domains") {
  const std::vector<Edge> edges{{0, 1}};
  const auto h = build_hierarchy(ScalarField::graph({0, 1}, edges), ThresholdSchedule{});
  CHECK_THROWS_WITH_AS(to_channels(h), "channel encoding requires grid domain", Error);
}

TEST_CASE("channels shift with the values and keep boundaries under scaling") {
  std::mt19937_64 rng(6);
  const auto f = oracle::random_int_grid(rng, 16, 16, 20);
  std::vector<double> shifted(f.values().begin(), f.values().end()), scaled = shifted;
  for (auto& x : shifted) x += 7;
  for (auto& x : scaled) x *= 3;
  const ThresholdSchedule sched({1.5, 4.5});
  const ThresholdSchedule sched3({4.5, 13.5});
  const auto a = to_channels(build_hierarchy(f, sched));
  const auto b = to_channels(build_hierarchy(with_values(f, shifted), sched));
  const auto c = to_channels(build_hierarchy(with_values(f, scaled), sched3));
  REQUIRE(a.data.size() == b.data.size());
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    CHECK(b.data[i] == a.data[i] + 7);
    CHECK(c.data[i] == a.data[i] * 3);
  }
}

TEST_CASE("gnn graph of a single ramp level") {
  const auto g = to_gnn_graph(build_hierarchy(test::ramp(8), ThresholdSchedule{}));
  CHECK(g.nodes.size() == 1);
  CHECK(g.edges.empty());
  CHECK(g.nodes[0].size_fraction == 1);
  CHECK(g.nodes[0].cheapest_edge == 0);
}

TEST_CASE("gnn graph of the 1x7 hierarchy") {
  const auto f = test::seven();
  auto count = [](const GnnGraph& g, GnnEdgeType t) {
    return std::count_if(g.edges.begin(), g.edges.end(), [&](const GnnEdge& e) { return e.type == t; });
  };
  const auto g = to_gnn_graph(build_hierarchy(f, ThresholdSchedule({0.5, 2.5})));
  CHECK(g.nodes.size() == 7);
  CHECK(count(g, GnnEdgeType::intra) == 4);
  CHECK(count(g, GnnEdgeType::inter) == 6);
  const auto pruned = to_gnn_graph(build_hierarchy(f, ThresholdSchedule({0.5, 2.5})), true);
  CHECK(pruned.nodes.size() == 4);
  CHECK(count(pruned, GnnEdgeType::intra) == 2);
  CHECK(count(pruned, GnnEdgeType::inter) == 3);
  CHECK(pruned.nodes.front().level == 1);

  const auto flat = to_gnn_graph(build_hierarchy(f, ThresholdSchedule({0.5, 1.5})));
  CHECK(flat.nodes.size() == 9);
  CHECK(count(flat, GnnEdgeType::intra) == 6);
  CHECK(count(flat, GnnEdgeType::inter) == 6);

  CHECK(g.nodes[1].cheapest_edge == 2);
  CHECK(g.nodes[1].size_fraction == 1.0 / 7);
}

TEST_CASE("gnn structure: inter edges climb one level, one per non-top node") {
  std::mt19937_64 rng(14);
  const auto f = oracle::random_grid(rng, 16, 16);
  const auto h = build_hierarchy(f, ThresholdSchedule({0.05, 0.2, 2}));
  const auto g = to_gnn_graph(h);
  std::vector<int> out_degree(g.nodes.size(), 0);
  for (const auto& e : g.edges) {
    if (e.type != GnnEdgeType::inter) {
      CHECK(g.nodes[e.src].level == g.nodes[e.dst].level);
      continue;
    }
    CHECK(g.nodes[e.dst].level == g.nodes[e.src].level + 1);
    ++out_degree[e.src];
  }
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    CHECK(out_degree[i] == (g.nodes[i].level + 1 < h.levels.size() ? 1 : 0));
  }
}

// Node and edge counts recomputed from naive labels, sweep pairs and brute
// adjacency, over every value pattern in {0, 1, 2} up to length 8 and random
// rows up to length 16.
TEST_CASE("gnn counts on 1xn rows match the oracle") {
  auto check_row = [](const std::vector<double>& values) {
    const auto f = test::row(values);
    const std::vector<double> eps{0.5, 1.5, 2.5};
    const auto g = to_gnn_graph(build_hierarchy(f, ThresholdSchedule(eps)));
    std::size_t nodes = 0, intra = 0, inter = 0;
    std::vector<double> levels{0};
    levels.insert(levels.end(), eps.begin(), eps.end());
    for (std::size_t l = 0; l < levels.size(); ++l) {
      const auto part = oracle::cancelled_partition(f, levels[l]);
      const std::size_t regions = *std::max_element(part.begin(), part.end()) + 1;
      nodes += regions;
      intra += oracle::region_adjacency(f, part).size();
      if (l + 1 < levels.size()) inter += regions;
    }
    std::size_t got_intra = 0;
    for (const auto& e : g.edges) got_intra += e.type == GnnEdgeType::intra;
    CHECK(g.nodes.size() == nodes);
    CHECK(got_intra == intra);
    CHECK(g.edges.size() - got_intra == inter);
  };
  for (std::size_t n = 1; n <= 8; ++n) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<double> v(n);
      std::size_t c = code;
      for (auto& x : v) {
        x = static_cast<double>(c % 3);
        c /= 3;
      }
      check_row(v);
    }
  }
  std::mt19937_64 rng(16);
  for (std::size_t n = 9; n <= 16; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> v(n);
      for (auto& x : v) x = static_cast<double>(rng() % 4);
      check_row(v);
    }
  }
}

TEST_CASE("persistence image of an empty diagram is zero") {
  const auto img = persistence_image(points({}));
  CHECK(img.grid.size() == 400);
  CHECK(std::all_of(img.grid.begin(), img.grid.end(), [](double x) { return x == 0; }));
  CHECK(img.range.birth_lo == 0);
  CHECK(img.range.pers_hi == 1);
}

TEST_CASE("persistence image peak sits on the point") {
  // Five pixels of width 1: centres at -2..2 (birth) and 0..4 (persistence).
  const auto img = persistence_image(points({{0, 2}}), 5, 0.1, ImageRange{-2.5, 2.5, -0.5, 4.5});
  CHECK(img.at(2, 2) == 1.0);
  CHECK(img.at(2, 3) < 1e-12);
  // Default range: zero extent on both axes becomes unit width centred on the point.
  const auto one = persistence_image(points({{0, 2}}), 1, 0.1);
  CHECK(one.range.birth_lo == -0.5);
  CHECK(one.range.pers_lo == 1.5);
  CHECK(one.at(0, 0) == 1.0);
}

TEST_CASE("persistence image default range and shape") {
  const auto img = persistence_image(points({{0, 1}, {0.5, 3}}));
  CHECK(img.resolution == 20);
  CHECK(img.sigma == 0.1);
  CHECK(img.grid.size() == 400);
  CHECK(img.range.birth_lo == doctest::Approx(-0.3));
  CHECK(img.range.birth_hi == doctest::Approx(0.8));
  CHECK(img.range.pers_lo == doctest::Approx(0.7));
  CHECK(img.range.pers_hi == doctest::Approx(2.8));
  CHECK(std::all_of(img.grid.begin(), img.grid.end(), [](double x) { return x >= 0; }));
  CHECK_THROWS_AS(persistence_image(points({}), 0), Error);
  CHECK_THROWS_AS(persistence_image(points({}), 4, 0), Error);
}

TEST_CASE("persistence image is linear and order-independent") {
  std::mt19937_64 rng(20);
  const ImageRange range{-0.5, 1.5, -0.5, 1.5};
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_diagram(rng, 1 + rng() % 30);
    const auto b = random_diagram(rng, 1 + rng() % 30);
    auto both = a;
    both.points.insert(both.points.end(), b.points.begin(), b.points.end());
    const auto ia = persistence_image(a, 20, 0.1, range);
    const auto ib = persistence_image(b, 20, 0.1, range);
    const auto iab = persistence_image(both, 20, 0.1, range);
    std::reverse(both.points.begin(), both.points.end());
    const auto iba = persistence_image(both, 20, 0.1, range);
    for (std::size_t i = 0; i < 400; ++i) {
      CHECK(iab.grid[i] == ia.grid[i] + ib.grid[i]);
      CHECK(iba.grid[i] == iab.grid[i]);
    }
  }
}

TEST_CASE("landscape of one pair") {
  const auto ls = persistence_landscape(points({{0, 2}}), 5, 101, std::pair{0.0, 2.0});
  CHECK(ls.t[50] == 1.0);
  CHECK(ls.at(0, 50) == 1.0);
  CHECK(*std::max_element(ls.values.begin(), ls.values.begin() + 101) == 1.0);
  for (std::size_t k = 1; k < 5; ++k) {
    for (std::size_t j = 0; j < 101; ++j) CHECK(ls.at(k, j) == 0);
  }
}

TEST_CASE("landscape of two disjoint pairs") {
  const auto ls = persistence_landscape(points({{0, 2}, {4, 6}}), 5, 7);
  CHECK(ls.t == std::vector<double>{0, 1, 2, 3, 4, 5, 6});
  CHECK(ls.at(0, 1) == 1);
  CHECK(ls.at(0, 5) == 1);
  CHECK(ls.at(0, 3) == 0);
  for (std::size_t j = 0; j < 7; ++j) CHECK(ls.at(1, j) == 0);
}

TEST_CASE("landscape defaults and errors") {
  const auto ls = persistence_landscape(points({{0, 1}}));
  CHECK(ls.layers == 5);
  CHECK(ls.samples == 100);
  CHECK(ls.values.size() == 500);
  CHECK(ls.t.front() == 0);
  CHECK(ls.t.back() == 1);
  const auto empty = persistence_landscape(points({}));
  CHECK(empty.t.back() == 1);
  CHECK(std::all_of(empty.values.begin(), empty.values.end(), [](double x) { return x == 0; }));
  CHECK_THROWS_AS(persistence_landscape(points({}), 0), Error);
  CHECK_THROWS_AS(persistence_landscape(points({}), 3, 1), Error);
  CHECK_THROWS_AS(persistence_landscape(points({}), 3, 10, std::pair{1.0, 1.0}), Error);
}

TEST_CASE("landscape layers are ordered and match direct evaluation") {
  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = random_diagram(rng, rng() % 12);
    const auto ls = persistence_landscape(d, 5, 40);
    for (std::size_t j = 0; j < 40; ++j) {
      for (std::size_t k = 0; k < 5; ++k) {
        CHECK(ls.at(k, j) == landscape_oracle(d, k, ls.t[j]));
        if (k + 1 < 5) CHECK(ls.at(k, j) >= ls.at(k + 1, j));
      }
    }
  }
}

}
