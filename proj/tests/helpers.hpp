#pragma once

#include <vector>

#include "msaug/field.hpp"

namespace msaug::test {

inline ScalarField grid(std::size_t h, std::size_t w, std::vector<double> values) {
  return ScalarField::grid(DomainKind::grid2d, {h, w}, std::move(values));
}

inline ScalarField row(std::vector<double> values) {
  const std::size_t n = values.size();
  return grid(1, n, std::move(values));
}

/// f(x, y) = x + y on an n x n grid.
inline ScalarField ramp(std::size_t n) {
  std::vector<double> v(n * n);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) v[y * n + x] = static_cast<double>(x + y);
  }
  return grid(n, n, std::move(v));
}

/// The 1 x 7 field [0, 1, 2, 1, 0, 1, 2] used throughout.
inline ScalarField seven() { return row({0, 1, 2, 1, 0, 1, 2}); }

}  // namespace msaug::test
