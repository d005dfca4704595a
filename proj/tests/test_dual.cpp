#include <doctest.h>

#include "helpers.hpp"
#include "msaug/dual.hpp"
#include "msaug/hierarchy.hpp"
#include "oracle.hpp"

using namespace msaug;

namespace {

DualGraph dual_of(const ScalarField& f) {
  return build_dual(segment(f), f, sublevel_pairs(f), superlevel_pairs(f));
}

}  // namespace

TEST_SUITE("dual") {

TEST_CASE("ramp: one node, no edges") {
  const auto g = dual_of(test::ramp(8));
  CHECK(g.nodes.size() == 1);
  CHECK(g.nodes[0].size == 64);
  CHECK(g.edges.empty());
}

TEST_CASE("1x7 dual graph") {
  const auto g = dual_of(test::seven());
  REQUIRE(g.nodes.size() == 3);
  CHECK(g.nodes[0].min_vertex == 0);
  CHECK(g.nodes[0].max_vertex == 2);
  CHECK(g.nodes[1].min_vertex == 4);
  CHECK(g.nodes[1].max_vertex == 2);
  CHECK(g.nodes[2].min_vertex == 4);
  CHECK(g.nodes[2].max_vertex == 6);
  CHECK(g.nodes[0].size == 3);
  CHECK(g.nodes[1].size == 1);
  CHECK(g.nodes[2].size == 3);
  CHECK(g.nodes[2].f_max == 2);

  REQUIRE(g.edges.size() == 2);
  const auto& e0 = g.edges[0];
  CHECK(e0.a == 0);
  CHECK(e0.b == 1);
  CHECK(e0.weight == 2);
  REQUIRE(e0.witness);
  CHECK(e0.witness->kind == PairKind::sublevel);
  CHECK(e0.witness->extremum == 4);
  CHECK(e0.witness->saddle == 2);
  CHECK(e0.witness->direct);

  const auto& e1 = g.edges[1];
  CHECK(e1.a == 1);
  CHECK(e1.b == 2);
  CHECK(e1.weight == 2);
  REQUIRE(e1.witness);
  CHECK(e1.witness->kind == PairKind::superlevel);
  CHECK(e1.witness->extremum == 2);
  CHECK(e1.witness->saddle == 4);
  CHECK(e1.witness->absorbed_into == 6);
}

TEST_CASE("two-bump field: edges across the two maxima cost the superlevel persistence") {
  const auto f = oracle::two_bump_field(32, 1.0, 0.8);
  const auto sup = superlevel_pairs(f);
  REQUIRE(sup.pairs.size() == 1);
  const auto g = dual_of(f);
  std::size_t across = 0;
  for (const auto& e : g.edges) {
    const auto& a = g.nodes[e.a];
    const auto& b = g.nodes[e.b];
    if (a.min_vertex == b.min_vertex && a.max_vertex != b.max_vertex) {
      ++across;
      CHECK(e.weight == sup.pairs[0].persistence);
      REQUIRE(e.witness);
      CHECK(e.witness->kind == PairKind::superlevel);
    }
  }
  CHECK(across > 0);
}

TEST_CASE("edges equal brute-force adjacency; witnesses are real pairs at the edge weight") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = trial % 2 ? oracle::random_int_grid(rng, 14, 14, 4) : oracle::random_grid(rng, 14, 14);
    const auto seg = segment(f);
    const auto sub = sublevel_pairs(f);
    const auto sup = superlevel_pairs(f);
    const auto g = build_dual(seg, f, sub, sup);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> got;
    for (const auto& e : g.edges) got.emplace_back(e.a, e.b);
    CHECK(got == oracle::region_adjacency(f, {seg.region_id.begin(), seg.region_id.end()}));
    for (const auto& e : g.edges) {
      REQUIRE(e.witness);
      CHECK(e.witness->persistence == e.weight);
      const auto& pool = e.witness->kind == PairKind::sublevel ? sub.pairs : sup.pairs;
      const bool found = std::any_of(pool.begin(), pool.end(), [&](const PersistencePair& p) {
        return p.extremum == e.witness->extremum && p.saddle == e.witness->saddle;
      });
      CHECK(found);
    }
  }
}

// The weight is the smallest threshold at which the two regions stop being
// distinct on at least one side, which is what simplify() acts on.
TEST_CASE("edge weight is the threshold at which simplify first unites a side") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 6; ++trial) {
    const auto f = oracle::random_grid(rng, 10, 10);
    const auto seg = segment(f);
    const auto sub = sublevel_pairs(f);
    const auto sup = superlevel_pairs(f);
    const auto g = build_dual(seg, f, sub, sup);
    for (const auto& e : g.edges) {
      // Find a vertex of each region, then watch their labels as eps grows.
      VertexId va = 0, vb = 0;
      for (VertexId v = 0; v < f.size(); ++v) {
        if (seg.region_id[v] == e.a) va = v;
        if (seg.region_id[v] == e.b) vb = v;
      }
      const auto below = simplify(seg, sub, sup, e.weight);
      const auto at = simplify(seg, sub, sup, std::nextafter(e.weight, kInfinity));
      const bool min_side = seg.min_label[va] != seg.min_label[vb];
      const bool max_side = seg.max_label[va] != seg.max_label[vb];
      auto united = [&](const Segmentation& s) {
        return (min_side && s.min_label[va] == s.min_label[vb]) || (max_side && s.max_label[va] == s.max_label[vb]);
      };
      const bool apart_below = !united(below);
      const bool joined_at = united(at);
      CHECK(apart_below);
      CHECK(joined_at);
    }
  }
}

TEST_CASE("mismatched inputs are rejected") {
  const auto f = test::seven();
  const auto g = test::ramp(3);
  CHECK_THROWS_AS(build_dual(segment(f), f, sublevel_pairs(g), superlevel_pairs(f)), Error);
  CHECK_THROWS_AS(build_dual(segment(g), f, sublevel_pairs(f), superlevel_pairs(f)), Error);
  CHECK_THROWS_AS(build_dual(segment(f), f, superlevel_pairs(f), sublevel_pairs(f)), Error);
}

}
