#include "msaug/dual.hpp"

#include <algorithm>

namespace msaug {
namespace {

Witness make_witness(const PersistencePair& p, VertexId x, VertexId y) {
  Witness w;
  w.kind = p.kind;
  w.extremum = p.extremum;
  w.saddle = p.saddle;
  w.absorbed_into = p.absorbed_into;
  w.persistence = p.persistence;
  w.direct = (p.extremum == x && p.absorbed_into == y) || (p.extremum == y && p.absorbed_into == x);
  return w;
}

}  // namespace

DualGraph build_dual(const Segmentation& seg, const ScalarField& field,
                     const PersistencePairSet& sub, const PersistencePairSet& sup) {
  return build_dual(seg, field, sub, sup, AbsorptionForest(sub), AbsorptionForest(sup));
}

DualGraph build_dual(const Segmentation& seg, const ScalarField& field,
                     const PersistencePairSet& sub, const PersistencePairSet& sup,
                     const AbsorptionForest& sub_forest, const AbsorptionForest& sup_forest) {
  const std::size_t n = field.size();
  if (seg.size() != n || sub.vertex_count != n || sup.vertex_count != n) {
    throw Error("segmentation, field and pair sets come from different domains");
  }
  if (sub.kind != PairKind::sublevel || sup.kind != PairKind::superlevel) {
    throw Error("build_dual expects sublevel then superlevel pairs");
  }

  DualGraph g;
  g.nodes.resize(seg.region_count());
  for (RegionId r = 0; r < seg.region_count(); ++r) {
    auto& node = g.nodes[r];
    node.region_id = r;
    node.min_vertex = seg.regions[r].min;
    node.max_vertex = seg.regions[r].max;
    node.f_min = field.value(node.min_vertex);
    node.f_max = field.value(node.max_vertex);
  }
  for (std::size_t v = 0; v < n; ++v) ++g.nodes[seg.region_id[v]].size;

  std::vector<std::uint64_t> keys;
  field.for_each_edge([&](VertexId u, VertexId v) {
    RegionId a = seg.region_id[u];
    RegionId b = seg.region_id[v];
    if (a == b) return;
    if (a > b) std::swap(a, b);
    keys.push_back((std::uint64_t{a} << 32) | b);
  });
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  g.edges.reserve(keys.size());
  for (auto key : keys) {
    DualEdge e;
    e.a = static_cast<RegionId>(key >> 32);
    e.b = static_cast<RegionId>(key & 0xffffffffu);
    const auto& ra = seg.regions[e.a];
    const auto& rb = seg.regions[e.b];
    const auto lo = sub_forest.merge_cost(ra.min, rb.min);
    const auto hi = sup_forest.merge_cost(ra.max, rb.max);
    if (lo.pair && lo.cost <= hi.cost) {
      e.weight = lo.cost;
      e.witness = make_witness(sub.pairs[*lo.pair], ra.min, rb.min);
    } else if (hi.pair) {
      e.weight = hi.cost;
      e.witness = make_witness(sup.pairs[*hi.pair], ra.max, rb.max);
    }
    g.edges.push_back(e);
  }
  return g;
}

}  // namespace msaug
