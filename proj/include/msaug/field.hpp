#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "msaug/common.hpp"

namespace msaug {

enum class DomainKind { grid2d, grid3d, graph };

std::string_view to_string(DomainKind kind);
DomainKind parse_domain_kind(std::string_view text);

using Edge = std::pair<VertexId, VertexId>;

namespace detail {

struct FieldData {
  DomainKind kind = DomainKind::grid2d;
  std::vector<std::size_t> shape;  // (H, W), (D, H, W) or (n)
  std::vector<double> values;
  std::vector<VertexId> rank;   // vertex -> position in the total order
  std::vector<VertexId> order;  // position -> vertex
  // Graph domains only: CSR adjacency, sorted and deduplicated per vertex.
  std::vector<std::size_t> offsets;
  std::vector<VertexId> targets;
};

}  // namespace detail

/// A scalar value on every vertex of a grid or graph, together with the
/// strict total order (value, vertex index) that every downstream comparison
/// uses in place of raw values.
///
/// Immutable once built; copies share the underlying storage.
class ScalarField {
public:
  /// Row-major grid. `shape` is (H, W) for grid2d and (D, H, W) for grid3d.
  /// Throws Error on empty input, a shape/size mismatch or a non-finite value.
  static ScalarField grid(DomainKind kind, std::vector<std::size_t> shape,
                          std::vector<double> values);

  /// Undirected graph. Duplicate edges (in either orientation) collapse to
  /// one; out-of-range endpoints, self-loops and isolated vertices are
  /// rejected.
  static ScalarField graph(std::vector<double> values, std::span<const Edge> edges);

  DomainKind kind() const { return data_->kind; }
  bool is_grid() const { return data_->kind != DomainKind::graph; }
  std::span<const std::size_t> shape() const { return data_->shape; }
  std::size_t size() const { return data_->values.size(); }

  std::span<const double> values() const { return data_->values; }
  double value(VertexId v) const { return data_->values[v]; }

  std::span<const VertexId> ranks() const { return data_->rank; }
  VertexId rank(VertexId v) const { return data_->rank[v]; }
  /// Vertices sorted by increasing rank.
  std::span<const VertexId> order() const { return data_->order; }

  template <class F>
  void for_each_neighbor(VertexId v, F&& f) const;

  /// Visits every undirected edge once, as (u, v) with u < v.
  template <class F>
  void for_each_edge(F&& f) const;

  std::vector<Edge> edge_list() const;

private:
  explicit ScalarField(std::shared_ptr<const detail::FieldData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::FieldData> data_;
};

/// Same domain, new values. Used for perturbation and negation.
ScalarField with_values(const ScalarField& field, std::vector<double> values);

template <class F>
void ScalarField::for_each_neighbor(VertexId v, F&& f) const {
  const auto& d = *data_;
  switch (d.kind) {
    case DomainKind::grid2d: {
      const std::size_t w = d.shape[1];
      const std::size_t h = d.shape[0];
      const std::size_t y = v / w;
      const std::size_t x = v - y * w;
      if (y > 0) f(static_cast<VertexId>(v - w));
      if (x > 0) f(static_cast<VertexId>(v - 1));
      if (x + 1 < w) f(static_cast<VertexId>(v + 1));
      if (y + 1 < h) f(static_cast<VertexId>(v + w));
      break;
    }
    case DomainKind::grid3d: {
      const std::size_t w = d.shape[2];
      const std::size_t h = d.shape[1];
      const std::size_t depth = d.shape[0];
      const std::size_t plane = w * h;
      const std::size_t z = v / plane;
      const std::size_t rem = v - z * plane;
      const std::size_t y = rem / w;
      const std::size_t x = rem - y * w;
      if (z > 0) f(static_cast<VertexId>(v - plane));
      if (y > 0) f(static_cast<VertexId>(v - w));
      if (x > 0) f(static_cast<VertexId>(v - 1));
      if (x + 1 < w) f(static_cast<VertexId>(v + 1));
      if (y + 1 < h) f(static_cast<VertexId>(v + w));
      if (z + 1 < depth) f(static_cast<VertexId>(v + plane));
      break;
    }
    case DomainKind::graph: {
      for (std::size_t i = d.offsets[v]; i < d.offsets[v + 1]; ++i) f(d.targets[i]);
      break;
    }
  }
}

template <class F>
void ScalarField::for_each_edge(F&& f) const {
  const auto n = static_cast<VertexId>(size());
  for (VertexId u = 0; u < n; ++u) {
    for_each_neighbor(u, [&](VertexId v) {
      if (u < v) f(u, v);
    });
  }
}

}  // namespace msaug
