#include "msaug/distance_transform.hpp"

#include <algorithm>
#include <cmath>

#include "msaug/parallel.hpp"

namespace msaug {
namespace {

constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::max();

// One-dimensional pass over `f` (length n) into `out`. Parabola q has apex
// f[q] at q; the boundary between parabolas v < q sits at
//   ((f[q] + q^2) - (f[v] + v^2)) / (2 (q - v)),
// kept as a numerator/denominator pair so comparisons stay exact.
struct Boundary {
  std::int64_t num;
  std::int64_t den;  // > 0; den == 0 encodes -inf / +inf via num sign
};

bool boundary_le(const Boundary& a, const Boundary& b) {
  if (a.den == 0) return a.num < 0 || b.den == 0;
  if (b.den == 0) return b.num > 0;
  return static_cast<__int128>(a.num) * b.den <= static_cast<__int128>(b.num) * a.den;
}

void envelope_1d(const std::int64_t* f, std::int64_t* out, std::size_t n,
                 std::vector<std::int64_t>& apex, std::vector<Boundary>& z) {
  apex.clear();
  z.clear();
  for (std::size_t q = 0; q < n; ++q) {
    if (f[q] == kUnreached) continue;
    const auto qi = static_cast<std::int64_t>(q);
    while (!apex.empty()) {
      const std::int64_t v = apex.back();
      const Boundary s{(f[q] + qi * qi) - (f[v] + v * v), 2 * (qi - v)};
      if (boundary_le(s, z.back())) {
        apex.pop_back();
        z.pop_back();
      } else {
        z.push_back(s);
        break;
      }
    }
    if (apex.empty()) z.push_back({-1, 0});
    apex.push_back(qi);
  }
  if (apex.empty()) {
    std::fill(out, out + n, kUnreached);
    return;
  }
  std::size_t k = 0;
  for (std::size_t q = 0; q < n; ++q) {
    const auto qi = static_cast<std::int64_t>(q);
    // advance while the next boundary lies strictly left of q
    while (k + 1 < apex.size() && z[k + 1].num < qi * z[k + 1].den) ++k;
    const std::int64_t dq = qi - apex[k];
    out[q] = dq * dq + f[apex[k]];
  }
}

// Runs envelope_1d along one axis of a row-major grid in place.
void transform_axis(std::vector<std::int64_t>& grid, const std::vector<std::size_t>& shape,
                    std::size_t axis) {
  std::size_t stride = 1;
  for (std::size_t d = axis + 1; d < shape.size(); ++d) stride *= shape[d];
  const std::size_t len = shape[axis];
  const std::size_t lines = grid.size() / len;

  parallel_for(lines, [&](std::size_t begin, std::size_t end) {
    std::vector<std::int64_t> in(len), out(len), apex;
    std::vector<Boundary> z;
    apex.reserve(len);
    z.reserve(len);
    for (std::size_t line = begin; line < end; ++line) {
      const std::size_t outer = line / stride;
      const std::size_t inner = line % stride;
      const std::size_t base = outer * stride * len + inner;
      for (std::size_t i = 0; i < len; ++i) in[i] = grid[base + i * stride];
      envelope_1d(in.data(), out.data(), len, apex, z);
      for (std::size_t i = 0; i < len; ++i) grid[base + i * stride] = out[i];
    }
  }, 64);
}

}  // namespace

std::vector<std::int64_t> squared_distance_transform(const BinaryMask& mask) {
  const std::size_t dims = mask.kind == DomainKind::grid2d ? 2 : mask.kind == DomainKind::grid3d ? 3 : 0;
  if (dims == 0 || mask.shape.size() != dims) throw Error("mask must be a 2D or 3D grid");
  std::size_t n = 1;
  for (auto s : mask.shape) n *= s;
  if (n == 0 || n != mask.occupancy.size()) throw Error("mask shape does not match cell count");

  std::vector<std::int64_t> grid(n);
  bool any_obstacle = false;
  for (std::size_t i = 0; i < n; ++i) {
    const bool solid = mask.occupancy[i] != 0;
    any_obstacle |= solid;
    grid[i] = solid ? 0 : kUnreached;
  }
  if (!any_obstacle) throw Error("no obstacle cells");

  for (std::size_t axis = dims; axis-- > 0;) transform_axis(grid, mask.shape, axis);
  return grid;
}

ScalarField distance_transform(const BinaryMask& mask) {
  const auto sq = squared_distance_transform(mask);
  std::vector<double> values(sq.size());
  std::transform(sq.begin(), sq.end(), values.begin(),
                 [](std::int64_t d) { return std::sqrt(static_cast<double>(d)); });
  return ScalarField::grid(mask.kind, mask.shape, std::move(values));
}

}  // namespace msaug
