#pragma once

#include <optional>
#include <vector>

#include "msaug/morse.hpp"
#include "msaug/persistence.hpp"

namespace msaug {

/// The persistence pair that prices a dual edge. `direct` is set when the
/// pair's extremum and absorbing extremum are exactly the two regions'
/// differing extrema; otherwise the pair is the last cancellation needed
/// along the absorption chain that connects them.
struct Witness {
  PairKind kind = PairKind::sublevel;
  VertexId extremum = kNoVertex;
  VertexId saddle = kNoVertex;
  VertexId absorbed_into = kNoVertex;
  double persistence = 0;
  bool direct = false;
};

struct DualNode {
  RegionId region_id = 0;
  VertexId min_vertex = kNoVertex;
  VertexId max_vertex = kNoVertex;
  double f_min = 0;
  double f_max = 0;
  std::size_t size = 0;
};

struct DualEdge {
  RegionId a = 0;  // a < b
  RegionId b = 0;
  double weight = kInfinity;
  std::optional<Witness> witness;
};

/// One node per region (in region-id order) and one edge per pair of regions
/// that touch across a domain edge, sorted by (a, b).
struct DualGraph {
  std::vector<DualNode> nodes;
  std::vector<DualEdge> edges;
};

/// Edge weight: the cheaper of the min-side and max-side merge costs, where
/// a side's cost is AbsorptionForest::merge_cost between the two regions'
/// extrema on that side (no candidate when they coincide). Ties go to the
/// sublevel side. Throws Error when inputs disagree on vertex count.
DualGraph build_dual(const Segmentation& seg, const ScalarField& field,
                     const PersistencePairSet& sub, const PersistencePairSet& sup);

DualGraph build_dual(const Segmentation& seg, const ScalarField& field,
                     const PersistencePairSet& sub, const PersistencePairSet& sup,
                     const AbsorptionForest& sub_forest, const AbsorptionForest& sup_forest);

}  // namespace msaug
