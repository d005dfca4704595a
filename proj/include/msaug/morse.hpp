#pragma once

#include <vector>

#include "msaug/field.hpp"

namespace msaug {

/// Steepest vertex pairing. ascend_to[v] is the highest-ranked neighbor above
/// v, descend_to[v] the lowest-ranked neighbor below it; kNoVertex marks a
/// local maximum / minimum respectively.
///
/// With unit edge lengths the steepest neighbor is the one with the largest
/// value difference, and ties on value fall back to rank, so both reduce to
/// an extremal rank among the neighbors.
struct DiscreteGradient {
  std::vector<VertexId> ascend_to;
  std::vector<VertexId> descend_to;
};

DiscreteGradient build_gradient(const ScalarField& field);

struct CriticalSet {
  std::vector<VertexId> minima;  // ascending vertex id
  std::vector<VertexId> maxima;
  std::vector<double> minima_values;
  std::vector<double> maxima_values;
};

CriticalSet find_critical(const DiscreteGradient& gradient, const ScalarField& field);

struct RegionKey {
  VertexId min;
  VertexId max;
  friend bool operator==(const RegionKey&, const RegionKey&) = default;
};

/// Every vertex labeled with the minimum its descending chain reaches and the
/// maximum its ascending chain reaches. Regions are the distinct
/// (min, max) pairs, numbered in order of first appearance by vertex index.
struct Segmentation {
  std::vector<VertexId> min_label;
  std::vector<VertexId> max_label;
  std::vector<RegionId> region_id;
  std::vector<RegionKey> regions;

  std::size_t size() const { return min_label.size(); }
  std::size_t region_count() const { return regions.size(); }
};

/// Labels from the memoized chain walk; O(n) given the field.
Segmentation segment(const ScalarField& field);
Segmentation segment(const ScalarField& field, const DiscreteGradient& gradient);

/// Builds region ids and the region table from per-vertex labels.
Segmentation make_segmentation(std::vector<VertexId> min_label, std::vector<VertexId> max_label);

}  // namespace msaug
