#pragma once

#include <cstdint>
#include <vector>

#include "msaug/field.hpp"

namespace msaug {

/// Occupancy grid for porous-media style inputs: 1 = obstacle/solid, 0 = open.
struct BinaryMask {
  DomainKind kind = DomainKind::grid2d;
  std::vector<std::size_t> shape;
  std::vector<std::uint8_t> occupancy;

  std::size_t size() const { return occupancy.size(); }
};

/// Exact squared Euclidean distance from every cell to its nearest obstacle,
/// computed one axis at a time with the lower envelope of parabolas. All
/// arithmetic is integral, so the result is exact.
std::vector<std::int64_t> squared_distance_transform(const BinaryMask& mask);

/// sqrt of squared_distance_transform, wrapped as a grid field.
/// Throws Error when the mask has no obstacle cell.
ScalarField distance_transform(const BinaryMask& mask);

}  // namespace msaug
