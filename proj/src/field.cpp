#include "msaug/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace msaug {
namespace {

std::string location(const std::vector<std::size_t>& shape, std::size_t index) {
  std::vector<std::size_t> coords(shape.size());
  for (std::size_t d = shape.size(); d-- > 0;) {
    coords[d] = index % shape[d];
    index /= shape[d];
  }
  std::ostringstream os;
  os << '(';
  for (std::size_t d = 0; d < coords.size(); ++d) os << (d ? ", " : "") << coords[d];
  os << ')';
  return os.str();
}

void check_finite(const std::vector<double>& values, const std::vector<std::size_t>& shape) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error("non-finite value at " + location(shape, i));
    }
  }
}

void compute_order(detail::FieldData& d) {
  const std::size_t n = d.values.size();
  d.order.resize(n);
  std::iota(d.order.begin(), d.order.end(), VertexId{0});
  const auto& vals = d.values;
  std::sort(d.order.begin(), d.order.end(), [&vals](VertexId a, VertexId b) {
    return vals[a] < vals[b] || (vals[a] == vals[b] && a < b);
  });
  d.rank.resize(n);
  for (std::size_t r = 0; r < n; ++r) d.rank[d.order[r]] = static_cast<VertexId>(r);
}

}  // namespace

std::string_view to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::grid2d: return "grid2d";
    case DomainKind::grid3d: return "grid3d";
    case DomainKind::graph: return "graph";
  }
  return "unknown";
}

DomainKind parse_domain_kind(std::string_view text) {
  if (text == "grid2d") return DomainKind::grid2d;
  if (text == "grid3d") return DomainKind::grid3d;
  if (text == "graph") return DomainKind::graph;
  throw Error("unknown domain kind '" + std::string(text) + "'");
}

ScalarField ScalarField::grid(DomainKind kind, std::vector<std::size_t> shape,
                              std::vector<double> values) {
  const std::size_t dims = kind == DomainKind::grid2d ? 2 : kind == DomainKind::grid3d ? 3 : 0;
  if (dims == 0) throw Error("ScalarField::grid requires a grid domain kind");
  if (shape.size() != dims) {
    throw Error("grid shape must have " + std::to_string(dims) + " dimensions");
  }
  std::size_t n = 1;
  for (auto s : shape) n *= s;
  if (n == 0 || values.empty()) throw Error("empty array");
  if (n != values.size()) throw Error("array is not rectangular: shape does not match value count");
  if (n >= kNoVertex) throw Error("field too large");
  check_finite(values, shape);

  auto d = std::make_shared<detail::FieldData>();
  d->kind = kind;
  d->shape = std::move(shape);
  d->values = std::move(values);
  compute_order(*d);
  return ScalarField(std::move(d));
}

ScalarField ScalarField::graph(std::vector<double> values, std::span<const Edge> edges) {
  const std::size_t n = values.size();
  if (n == 0) throw Error("empty vertex list");
  if (n >= kNoVertex) throw Error("field too large");
  check_finite(values, {n});

  std::vector<Edge> directed;
  directed.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw Error("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                  ") has an endpoint out of range");
    }
    if (u == v) throw Error("self-loop at vertex " + std::to_string(u));
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  auto d = std::make_shared<detail::FieldData>();
  d->kind = DomainKind::graph;
  d->shape = {n};
  d->offsets.assign(n + 1, 0);
  for (const auto& e : directed) ++d->offsets[e.first + 1];
  std::partial_sum(d->offsets.begin(), d->offsets.end(), d->offsets.begin());
  d->targets.reserve(directed.size());
  for (const auto& e : directed) d->targets.push_back(e.second);

  if (n > 1) {
    for (std::size_t v = 0; v < n; ++v) {
      if (d->offsets[v] == d->offsets[v + 1]) {
        throw Error("vertex " + std::to_string(v) + " has no neighbors");
      }
    }
  }
  d->values = std::move(values);
  compute_order(*d);
  return ScalarField(std::move(d));
}

std::vector<Edge> ScalarField::edge_list() const {
  std::vector<Edge> out;
  for_each_edge([&](VertexId u, VertexId v) { out.emplace_back(u, v); });
  return out;
}

ScalarField with_values(const ScalarField& field, std::vector<double> values) {
  if (values.size() != field.size()) throw Error("value count does not match the domain");
  if (field.is_grid()) {
    return ScalarField::grid(field.kind(), {field.shape().begin(), field.shape().end()},
                             std::move(values));
  }
  const auto edges = field.edge_list();
  return ScalarField::graph(std::move(values), edges);
}

}  // namespace msaug
