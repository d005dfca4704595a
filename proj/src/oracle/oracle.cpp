#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace msaug::oracle {

std::vector<std::vector<VertexId>> neighbor_lists(const ScalarField& field) {
  const std::size_t n = field.size();
  std::vector<std::vector<VertexId>> nbrs(n);
  if (!field.is_grid()) {
    for (const auto& [u, v] : field.edge_list()) {
      nbrs[u].push_back(v);
      nbrs[v].push_back(u);
    }
    return nbrs;
  }
  std::vector<std::size_t> shape(field.shape().begin(), field.shape().end());
  const std::size_t dims = shape.size();
  std::vector<long> coord(dims);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t rem = v;
    for (std::size_t d = dims; d-- > 0;) {
      coord[d] = static_cast<long>(rem % shape[d]);
      rem /= shape[d];
    }
    for (std::size_t d = 0; d < dims; ++d) {
      for (long step : {-1L, 1L}) {
        auto c = coord;
        c[d] += step;
        if (c[d] < 0 || c[d] >= static_cast<long>(shape[d])) continue;
        std::size_t idx = 0;
        for (std::size_t e = 0; e < dims; ++e) idx = idx * shape[e] + static_cast<std::size_t>(c[e]);
        nbrs[v].push_back(static_cast<VertexId>(idx));
      }
    }
  }
  return nbrs;
}

bool precedes(const ScalarField& field, VertexId a, VertexId b) {
  const double fa = field.value(a), fb = field.value(b);
  return fa < fb || (fa == fb && a < b);
}

namespace {

std::vector<VertexId> extrema(const ScalarField& field, bool minima) {
  const auto nbrs = neighbor_lists(field);
  std::vector<VertexId> out;
  for (VertexId v = 0; v < field.size(); ++v) {
    bool is_extremum = true;
    for (VertexId u : nbrs[v]) {
      if (minima ? precedes(field, u, v) : precedes(field, v, u)) is_extremum = false;
    }
    if (is_extremum) out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<VertexId> local_minima(const ScalarField& field) { return extrema(field, true); }
std::vector<VertexId> local_maxima(const ScalarField& field) { return extrema(field, false); }

NaiveLabels naive_labels(const ScalarField& field) {
  const auto nbrs = neighbor_lists(field);
  const std::size_t n = field.size();
  auto steepest = [&](VertexId v, bool up) {
    VertexId best = v;
    for (VertexId u : nbrs[v]) {
      if (up ? precedes(field, best, u) : precedes(field, u, best)) best = u;
    }
    return best;
  };
  NaiveLabels out{std::vector<VertexId>(n), std::vector<VertexId>(n)};
  for (VertexId v = 0; v < n; ++v) {
    VertexId x = v;
    for (VertexId next = steepest(x, false); next != x; next = steepest(x, false)) x = next;
    out.min_label[v] = x;
    x = v;
    for (VertexId next = steepest(x, true); next != x; next = steepest(x, true)) x = next;
    out.max_label[v] = x;
  }
  return out;
}

std::vector<PersistencePair> sweep_pairs(const ScalarField& field, PairKind kind) {
  const std::size_t n = field.size();
  const auto nbrs = neighbor_lists(field);
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return precedes(field, a, b); });
  if (kind == PairKind::superlevel) std::reverse(order.begin(), order.end());
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;

  std::vector<bool> included(n, false);
  std::vector<VertexId> oldest(n, kNoVertex);  // component's oldest vertex, per included vertex
  std::vector<PersistencePair> pairs;

  for (std::size_t k = 0; k < n; ++k) {
    const VertexId v = order[k];
    included[v] = true;

    // Component of v in the current sublevel (superlevel) set.
    std::vector<VertexId> comp{v};
    std::vector<bool> seen(n, false);
    seen[v] = true;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (VertexId u : nbrs[comp[i]]) {
        if (included[u] && !seen[u]) {
          seen[u] = true;
          comp.push_back(u);
        }
      }
    }

    std::set<VertexId> previous;
    for (VertexId u : comp) {
      if (u != v) previous.insert(oldest[u]);
    }
    VertexId survivor = v;
    for (VertexId p : previous) {
      if (position[p] < position[survivor]) survivor = p;
    }
    if (previous.size() > 1) {
      for (VertexId p : previous) {
        if (p == survivor) continue;
        PersistencePair pair;
        pair.kind = kind;
        pair.extremum = p;
        pair.saddle = v;
        pair.absorbed_into = survivor;
        pair.birth = field.value(p);
        pair.death = field.value(v);
        pair.persistence = std::abs(pair.death - pair.birth);
        pairs.push_back(pair);
      }
    }
    for (VertexId u : comp) oldest[u] = survivor;
  }
  return pairs;
}

bool same_pairs(std::vector<PersistencePair> a, std::vector<PersistencePair> b) {
  auto key = [](const PersistencePair& p) {
    return std::make_tuple(p.extremum, p.saddle, p.absorbed_into, p.birth, p.death, p.kind);
  };
  auto less = [&](const PersistencePair& x, const PersistencePair& y) { return key(x) < key(y); };
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (key(a[i]) != key(b[i]) || a[i].persistence != b[i].persistence) return false;
  }
  return true;
}

std::vector<std::uint32_t> canonical(const std::vector<std::uint64_t>& labels) {
  std::map<std::uint64_t, std::uint32_t> ids;
  std::vector<std::uint32_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = ids.emplace(labels[i], static_cast<std::uint32_t>(ids.size()));
    out[i] = it->second;
  }
  return out;
}

std::vector<std::uint32_t> cancelled_partition(const ScalarField& field, double eps) {
  return cancelled_partition(naive_labels(field), sweep_pairs(field, PairKind::sublevel),
                             sweep_pairs(field, PairKind::superlevel), eps);
}

std::vector<std::uint32_t> cancelled_partition(NaiveLabels labels, const std::vector<PersistencePair>& sub_pairs,
                                               const std::vector<PersistencePair>& sup_pairs, double eps) {
  std::map<VertexId, std::pair<VertexId, double>> sub, sup;
  for (const auto& p : sub_pairs) sub[p.extremum] = {p.absorbed_into, p.persistence};
  for (const auto& p : sup_pairs) sup[p.extremum] = {p.absorbed_into, p.persistence};

  auto relabel = [eps](std::vector<VertexId>& lab, const std::map<VertexId, std::pair<VertexId, double>>& pairs) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& m : lab) {
        const auto it = pairs.find(m);
        if (it != pairs.end() && it->second.second < eps) {
          m = it->second.first;
          changed = true;
        }
      }
    }
  };
  relabel(labels.min_label, sub);
  relabel(labels.max_label, sup);

  std::vector<std::uint64_t> keys(labels.min_label.size());
  for (std::size_t v = 0; v < keys.size(); ++v) {
    keys[v] = (std::uint64_t{labels.min_label[v]} << 32) | labels.max_label[v];
  }
  return canonical(keys);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> region_adjacency(const ScalarField& field,
                                                                     const std::vector<std::uint32_t>& region_id) {
  const auto nbrs = neighbor_lists(field);
  std::set<std::pair<std::uint32_t, std::uint32_t>> adj;
  for (VertexId v = 0; v < field.size(); ++v) {
    for (VertexId u : nbrs[v]) {
      const auto a = region_id[v], b = region_id[u];
      if (a != b) adj.emplace(std::min(a, b), std::max(a, b));
    }
  }
  return {adj.begin(), adj.end()};
}

std::vector<std::int64_t> brute_squared_distance(const BinaryMask& mask) {
  const std::size_t n = mask.size();
  const std::size_t dims = mask.shape.size();
  auto coords = [&](std::size_t i) {
    std::vector<std::int64_t> c(dims);
    for (std::size_t d = dims; d-- > 0;) {
      c[d] = static_cast<std::int64_t>(i % mask.shape[d]);
      i /= mask.shape[d];
    }
    return c;
  };
  std::vector<std::vector<std::int64_t>> obstacles;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask.occupancy[i]) obstacles.push_back(coords(i));
  }
  std::vector<std::int64_t> out(n, std::numeric_limits<std::int64_t>::max());
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = coords(i);
    for (const auto& o : obstacles) {
      std::int64_t d2 = 0;
      for (std::size_t d = 0; d < dims; ++d) d2 += (c[d] - o[d]) * (c[d] - o[d]);
      out[i] = std::min(out[i], d2);
    }
  }
  return out;
}

ScalarField random_grid(std::mt19937_64& rng, std::size_t h, std::size_t w) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(h * w);
  for (auto& x : v) x = u(rng);
  return ScalarField::grid(DomainKind::grid2d, {h, w}, std::move(v));
}

ScalarField random_int_grid(std::mt19937_64& rng, std::size_t h, std::size_t w, int levels) {
  std::uniform_int_distribution<int> u(0, levels - 1);
  std::vector<double> v(h * w);
  for (auto& x : v) x = u(rng);
  return ScalarField::grid(DomainKind::grid2d, {h, w}, std::move(v));
}

ScalarField two_bump_field(std::size_t size, double h1, double h2) {
  const double s = static_cast<double>(size);
  const double c1x = std::floor(s * 0.25), c1y = std::floor(s * 0.3);
  const double c2x = std::floor(s * 0.7), c2y = std::floor(s * 0.65);
  const double width = s / 6.0;
  std::vector<double> v(size * size);
  for (std::size_t y = 0; y < size; ++y) {
    for (std::size_t x = 0; x < size; ++x) {
      const double dx1 = x - c1x, dy1 = y - c1y, dx2 = x - c2x, dy2 = y - c2y;
      v[y * size + x] = h1 * std::exp(-(dx1 * dx1 + dy1 * dy1) / (2 * width * width)) +
                        h2 * std::exp(-(dx2 * dx2 + dy2 * dy2) / (2 * width * width));
    }
  }
  return ScalarField::grid(DomainKind::grid2d, {size, size}, std::move(v));
}

}  // namespace msaug::oracle
