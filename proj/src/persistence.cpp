#include "msaug/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace msaug {
namespace {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n, kNoVertex), size_(n, 1), elder_(n, kNoVertex) {}

  bool contains(VertexId v) const { return parent_[v] != kNoVertex; }

  void make_set(VertexId v) {
    parent_[v] = v;
    elder_[v] = v;
  }

  VertexId find(VertexId v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  // Merges the sets rooted at a and b; the merged set keeps `elder`.
  VertexId unite(VertexId a, VertexId b, VertexId elder) {
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    elder_[a] = elder;
    return a;
  }

  VertexId elder(VertexId root) const { return elder_[root]; }

private:
  std::vector<VertexId> parent_;
  std::vector<std::uint32_t> size_;
  std::vector<VertexId> elder_;
};

PersistencePairSet sweep(const ScalarField& field, PairKind kind) {
  const std::size_t n = field.size();
  const bool ascending = kind == PairKind::sublevel;
  const auto order = field.order();
  const auto rank = field.ranks();
  // position in the sweep; smaller = processed earlier = older
  auto pos = [&](VertexId v) -> std::size_t { return ascending ? rank[v] : n - 1 - rank[v]; };

  PersistencePairSet out;
  out.kind = kind;
  out.vertex_count = n;
  UnionFind uf(n);
  std::vector<VertexId> roots;

  for (std::size_t i = 0; i < n; ++i) {
    const VertexId v = ascending ? order[i] : order[n - 1 - i];
    roots.clear();
    field.for_each_neighbor(v, [&](VertexId u) {
      if (!uf.contains(u)) return;
      const VertexId r = uf.find(u);
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    });
    uf.make_set(v);
    if (roots.empty()) continue;

    VertexId oldest = roots.front();
    for (VertexId r : roots) {
      if (pos(uf.elder(r)) < pos(uf.elder(oldest))) oldest = r;
    }
    const VertexId survivor = uf.elder(oldest);
    VertexId merged = oldest;
    for (VertexId r : roots) {
      if (r == oldest) continue;
      PersistencePair p;
      p.kind = kind;
      p.extremum = uf.elder(r);
      p.saddle = v;
      p.absorbed_into = survivor;
      p.birth = field.value(p.extremum);
      p.death = field.value(v);
      p.persistence = std::abs(p.death - p.birth);
      out.pairs.push_back(p);
      merged = uf.unite(merged, r, survivor);
    }
    uf.unite(merged, v, survivor);
  }

  for (std::size_t s = 0; s < n; ++s) {
    const auto v = static_cast<VertexId>(s);
    if (uf.find(v) == v) out.essential.push_back(uf.elder(v));
  }
  std::sort(out.essential.begin(), out.essential.end());

  std::sort(out.pairs.begin(), out.pairs.end(), [&](const PersistencePair& a, const PersistencePair& b) {
    if (a.persistence != b.persistence) return a.persistence < b.persistence;
    if (a.saddle != b.saddle) return pos(a.saddle) < pos(b.saddle);
    return pos(a.extremum) < pos(b.extremum);
  });
  return out;
}

}  // namespace

std::string_view to_string(PairKind kind) {
  return kind == PairKind::sublevel ? "sublevel" : "superlevel";
}

PersistencePairSet sublevel_pairs(const ScalarField& field) { return sweep(field, PairKind::sublevel); }

PersistencePairSet superlevel_pairs(const ScalarField& field) { return sweep(field, PairKind::superlevel); }

PersistenceDiagram diagram(const PersistencePairSet& pairs, const ScalarField& field) {
  PersistenceDiagram d;
  d.kind = pairs.kind;
  for (const auto& p : pairs.pairs) {
    if (p.kind != pairs.kind) throw Error("pair set mixes sublevel and superlevel pairs");
    const DiagramPoint pt = p.kind == PairKind::sublevel ? DiagramPoint{p.birth, p.death}
                                                         : DiagramPoint{p.death, p.birth};
    if (pt.death > pt.birth) d.points.push_back(pt);
  }
  std::sort(d.points.begin(), d.points.end());
  for (VertexId e : pairs.essential) d.essential.push_back(field.value(e));
  std::sort(d.essential.begin(), d.essential.end());
  return d;
}

// ---- AbsorptionForest ----------------------------------------------------

AbsorptionForest::AbsorptionForest(const PersistencePairSet& set)
    : kind_(set.kind), node_of_(set.vertex_count, kNoNode) {
  auto add = [&](VertexId v) {
    if (node_of_[v] == kNoNode) {
      node_of_[v] = static_cast<std::uint32_t>(vertex_.size());
      vertex_.push_back(v);
      pair_.push_back(kNoNode);
      persistence_.push_back(kInfinity);
    }
    return node_of_[v];
  };
  for (VertexId e : set.essential) add(e);
  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    const auto node = add(set.pairs[i].extremum);
    pair_[node] = static_cast<std::uint32_t>(i);
    persistence_[node] = set.pairs[i].persistence;
  }
  for (const auto& p : set.pairs) add(p.absorbed_into);

  const std::size_t m = vertex_.size();
  std::vector<std::uint32_t> parent(m);
  for (std::uint32_t k = 0; k < m; ++k) {
    parent[k] = pair_[k] == kNoNode ? k : node_of_[set.pairs[pair_[k]].absorbed_into];
  }

  depth_.assign(m, kNoNode);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t k = 0; k < m; ++k) {
    std::uint32_t x = k;
    while (depth_[x] == kNoNode && parent[x] != x) {
      stack.push_back(x);
      x = parent[x];
    }
    if (depth_[x] == kNoNode) depth_[x] = 0;
    std::uint32_t d = depth_[x];
    while (!stack.empty()) {
      depth_[stack.back()] = ++d;
      stack.pop_back();
    }
  }

  std::uint32_t max_depth = 0;
  for (auto d : depth_) max_depth = std::max(max_depth, d);
  std::size_t levels = 1;
  while ((std::uint64_t{1} << levels) <= max_depth) ++levels;
  up_.assign(levels, {});
  up_[0] = std::move(parent);
  for (std::size_t j = 1; j < levels; ++j) {
    up_[j].resize(m);
    for (std::uint32_t k = 0; k < m; ++k) up_[j][k] = up_[j - 1][up_[j - 1][k]];
  }
}

std::vector<VertexId> AbsorptionForest::targets(double eps) const {
  const std::size_t m = vertex_.size();
  std::vector<std::uint32_t> target(m, kNoNode);
  std::vector<std::uint32_t> stack;
  const auto& parent = up_[0];
  for (std::uint32_t k = 0; k < m; ++k) {
    std::uint32_t x = k;
    while (target[x] == kNoNode && persistence_[x] < eps && parent[x] != x) {
      stack.push_back(x);
      x = parent[x];
    }
    const std::uint32_t t = target[x] != kNoNode ? target[x] : x;
    target[x] = t;
    for (auto s : stack) target[s] = t;
    stack.clear();
  }
  std::vector<VertexId> out(node_of_.size(), kNoVertex);
  for (std::uint32_t k = 0; k < m; ++k) out[vertex_[k]] = vertex_[target[k]];
  return out;
}

std::optional<std::size_t> AbsorptionForest::pair_of(VertexId extremum) const {
  if (extremum >= node_of_.size()) return std::nullopt;
  const auto node = node_of_[extremum];
  if (node == kNoNode || pair_[node] == kNoNode) return std::nullopt;
  return pair_[node];
}

AbsorptionForest::MergeCost AbsorptionForest::merge_cost(VertexId va, VertexId vb) const {
  MergeCost none;
  if (va == vb || va >= node_of_.size() || vb >= node_of_.size()) return none;
  std::uint32_t a = node_of_[va];
  std::uint32_t b = node_of_[vb];
  if (a == kNoNode || b == kNoNode) return none;

  auto lift = [&](std::uint32_t x, std::uint32_t steps) {
    for (std::size_t j = 0; steps; ++j, steps >>= 1) {
      if (steps & 1u) x = up_[j][x];
    }
    return x;
  };
  auto pick = [&](std::uint32_t top_a, std::uint32_t top_b) {
    MergeCost c;
    std::uint32_t w = top_a;
    if (top_a == kNoNode || (top_b != kNoNode && (persistence_[top_b] > persistence_[top_a] ||
                                                  (persistence_[top_b] == persistence_[top_a] &&
                                                   vertex_[top_b] < vertex_[top_a])))) {
      w = top_b;
    }
    c.cost = persistence_[w];
    c.pair = pair_[w];
    return c;
  };

  // Bring the deeper node up to one level below the shallower one.
  if (depth_[a] < depth_[b]) std::swap(a, b);
  if (depth_[a] > depth_[b]) {
    const std::uint32_t below = lift(a, depth_[a] - depth_[b] - 1);
    if (up_[0][below] == b) return pick(below, kNoNode);
    a = up_[0][below];
  }
  for (std::size_t j = up_.size(); j-- > 0;) {
    if (up_[j][a] != up_[j][b]) {
      a = up_[j][a];
      b = up_[j][b];
    }
  }
  if (up_[0][a] != up_[0][b] || up_[0][a] == a) return none;  // different trees
  return pick(a, b);
}

}  // namespace msaug
