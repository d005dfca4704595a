#include "msaug/morse.hpp"

#include <atomic>

#include "msaug/parallel.hpp"

namespace msaug {
namespace {

// Open-addressing map from a packed (min, max) key to a region id.
class RegionTable {
public:
  explicit RegionTable(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < 2 * expected) cap <<= 1;
    slots_.assign(cap, Slot{});
  }

  // Returns the id for key, inserting next_id if absent.
  RegionId find_or_insert(std::uint64_t key, RegionId next_id) {
    if (2 * (count_ + 1) > slots_.size()) grow();
    return insert(key, next_id);
  }

private:
  struct Slot {
    std::uint64_t key = ~std::uint64_t{0};
    RegionId id = 0;
  };

  static std::size_t hash(std::uint64_t k) {
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdULL;
    k ^= k >> 33;
    return static_cast<std::size_t>(k);
  }

  RegionId insert(std::uint64_t key, RegionId id) {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash(key) & mask;; i = (i + 1) & mask) {
      if (slots_[i].key == key) return slots_[i].id;
      if (slots_[i].key == ~std::uint64_t{0}) {
        slots_[i] = {key, id};
        ++count_;
        return id;
      }
    }
  }

  void grow() {
    std::vector<Slot> old = std::move(slots_);
    slots_.assign(old.size() * 2, Slot{});
    count_ = 0;
    for (const auto& s : old) {
      if (s.key != ~std::uint64_t{0}) insert(s.key, s.id);
    }
  }

  std::vector<Slot> slots_;
  std::size_t count_ = 0;
};

// Follows `next` from every vertex to its fixpoint, writing the fixpoint back
// along each walked chain so later walks stop early. Concurrent writers only
// ever store the same final label for a vertex.
std::vector<VertexId> chain_roots(const std::vector<VertexId>& next) {
  const std::size_t n = next.size();
  std::vector<VertexId> label(n, kNoVertex);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::vector<VertexId> stack;
    for (std::size_t s = begin; s < end; ++s) {
      auto v = static_cast<VertexId>(s);
      if (std::atomic_ref<VertexId>(label[v]).load(std::memory_order_relaxed) != kNoVertex) continue;
      VertexId root = kNoVertex;
      for (;;) {
        const VertexId known = std::atomic_ref<VertexId>(label[v]).load(std::memory_order_relaxed);
        if (known != kNoVertex) {
          root = known;
          break;
        }
        stack.push_back(v);
        if (next[v] == kNoVertex) {
          root = v;
          break;
        }
        v = next[v];
      }
      for (VertexId u : stack) std::atomic_ref<VertexId>(label[u]).store(root, std::memory_order_relaxed);
      stack.clear();
    }
  });
  return label;
}

}  // namespace

DiscreteGradient build_gradient(const ScalarField& field) {
  const std::size_t n = field.size();
  DiscreteGradient g;
  g.ascend_to.assign(n, kNoVertex);
  g.descend_to.assign(n, kNoVertex);
  const auto rank = field.ranks();
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const auto v = static_cast<VertexId>(s);
      const VertexId rv = rank[v];
      VertexId up = kNoVertex, down = kNoVertex;
      VertexId up_rank = rv, down_rank = rv;
      field.for_each_neighbor(v, [&](VertexId u) {
        const VertexId ru = rank[u];
        if (ru > up_rank) {
          up_rank = ru;
          up = u;
        }
        if (ru < down_rank) {
          down_rank = ru;
          down = u;
        }
      });
      g.ascend_to[v] = up;
      g.descend_to[v] = down;
    }
  });
  return g;
}

CriticalSet find_critical(const DiscreteGradient& gradient, const ScalarField& field) {
  CriticalSet c;
  const std::size_t n = gradient.ascend_to.size();
  for (std::size_t s = 0; s < n; ++s) {
    const auto v = static_cast<VertexId>(s);
    if (gradient.descend_to[v] == kNoVertex) {
      c.minima.push_back(v);
      c.minima_values.push_back(field.value(v));
    }
    if (gradient.ascend_to[v] == kNoVertex) {
      c.maxima.push_back(v);
      c.maxima_values.push_back(field.value(v));
    }
  }
  return c;
}

Segmentation make_segmentation(std::vector<VertexId> min_label, std::vector<VertexId> max_label) {
  if (min_label.size() != max_label.size()) throw Error("label arrays differ in length");
  Segmentation seg;
  const std::size_t n = min_label.size();
  seg.region_id.resize(n);
  RegionTable table(64);
  for (std::size_t v = 0; v < n; ++v) {
    const std::uint64_t key = (std::uint64_t{min_label[v]} << 32) | max_label[v];
    const auto next = static_cast<RegionId>(seg.regions.size());
    const RegionId id = table.find_or_insert(key, next);
    if (id == next) seg.regions.push_back({min_label[v], max_label[v]});
    seg.region_id[v] = id;
  }
  seg.min_label = std::move(min_label);
  seg.max_label = std::move(max_label);
  return seg;
}

Segmentation segment(const ScalarField& field, const DiscreteGradient& gradient) {
  if (gradient.ascend_to.size() != field.size()) throw Error("gradient does not match the field");
  return make_segmentation(chain_roots(gradient.descend_to), chain_roots(gradient.ascend_to));
}

Segmentation segment(const ScalarField& field) { return segment(field, build_gradient(field)); }

}  // namespace msaug
