#include "msaug/hierarchy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "msaug/parallel.hpp"

namespace msaug {

ThresholdSchedule::ThresholdSchedule(std::vector<double> epsilons, bool allow_repeats)
    : epsilons_(std::move(epsilons)) {
  for (std::size_t i = 0; i < epsilons_.size(); ++i) {
    const double e = epsilons_[i];
    if (std::isnan(e) || e < 0) throw Error("thresholds must be >= 0");
    if (i > 0) {
      const double prev = epsilons_[i - 1];
      if (allow_repeats ? e < prev : e <= prev) {
        throw Error(allow_repeats ? "thresholds must be non-decreasing"
                                  : "thresholds must be strictly increasing");
      }
    }
  }
}

FractionSchedule thresholds_from_fractions(const PersistencePairSet& sub, const PersistencePairSet& sup,
                                           std::span<const double> fractions) {
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    const double q = fractions[i];
    if (!(q >= 0 && q <= 1)) throw Error("fractions must lie in [0, 1]");
    if (i > 0 && q <= fractions[i - 1]) throw Error("fractions must be strictly increasing");
  }

  std::vector<double> pool;
  pool.reserve(sub.pairs.size() + sup.pairs.size());
  for (const auto& p : sub.pairs) pool.push_back(p.persistence);
  for (const auto& p : sup.pairs) pool.push_back(p.persistence);
  std::sort(pool.begin(), pool.end());
  const std::size_t count = pool.size();

  FractionSchedule out;
  std::vector<double> eps;
  for (double q : fractions) {
    if (q == 0) {
      eps.push_back(0);
      continue;
    }
    if (count == 0) {
      out.empty_pool = true;
      eps.push_back(0);
      continue;
    }
    // ceil(q * count), snapping products like 0.3 * 10 = 3.0000000000000004
    const double x = q * static_cast<double>(count);
    const double nearest = std::round(x);
    const auto index = static_cast<std::size_t>(
        std::abs(x - nearest) <= 1e-9 * std::max(1.0, x) ? nearest : std::ceil(x));
    eps.push_back(index < count ? pool[index] : std::nextafter(pool.back(), kInfinity));
  }
  out.schedule = ThresholdSchedule(std::move(eps), /*allow_repeats=*/true);
  return out;
}

Segmentation simplify(const Segmentation& seg, const PersistencePairSet& sub,
                      const PersistencePairSet& sup, double eps) {
  if (sub.vertex_count != seg.size() || sup.vertex_count != seg.size()) {
    throw Error("pair sets do not match the segmentation");
  }
  return simplify(seg, AbsorptionForest(sub), AbsorptionForest(sup), eps);
}

Segmentation simplify(const Segmentation& seg, const AbsorptionForest& sub_forest,
                      const AbsorptionForest& sup_forest, double eps) {
  if (std::isnan(eps) || eps < 0) throw Error("epsilon must be >= 0");
  const auto to_min = sub_forest.targets(eps);
  const auto to_max = sup_forest.targets(eps);
  const std::size_t n = seg.size();
  if (to_min.size() != n || to_max.size() != n) throw Error("forests do not match the segmentation");

  std::vector<VertexId> min_label(n), max_label(n);
  std::atomic<bool> foreign{false};
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      const VertexId m = seg.min_label[v], M = seg.max_label[v];
      if (m >= n || M >= n || to_min[m] == kNoVertex || to_max[M] == kNoVertex) {
        foreign.store(true, std::memory_order_relaxed);
        return;
      }
      min_label[v] = to_min[m];
      max_label[v] = to_max[M];
    }
  });
  if (foreign.load()) throw Error("segmentation labels a vertex with an extremum the pair sets do not know");
  return make_segmentation(std::move(min_label), std::move(max_label));
}

Hierarchy build_hierarchy(const ScalarField& field, const ThresholdSchedule& schedule) {
  return build_hierarchy(field, sublevel_pairs(field), superlevel_pairs(field), schedule);
}

Hierarchy build_hierarchy(const ScalarField& field, PersistencePairSet sub, PersistencePairSet sup,
                          const ThresholdSchedule& schedule) {
  if (sub.kind != PairKind::sublevel || sup.kind != PairKind::superlevel || sub.vertex_count != field.size() ||
      sup.vertex_count != field.size()) {
    throw Error("build_hierarchy: pair sets do not belong to this field");
  }
  Hierarchy h{field, std::move(sub), std::move(sup), {}, {}};
  const AbsorptionForest sub_forest(h.sub);
  const AbsorptionForest sup_forest(h.sup);

  h.levels.reserve(schedule.size() + 1);
  auto base = segment(field);
  auto base_dual = build_dual(base, field, h.sub, h.sup, sub_forest, sup_forest);
  h.levels.push_back({0.0, std::move(base), std::move(base_dual)});

  for (double eps : schedule.epsilons()) {
    const auto& prev = h.levels.back().segmentation;
    auto next = simplify(prev, sub_forest, sup_forest, eps);

    std::vector<RegionId> image(prev.region_count());
    for (std::size_t v = 0; v < prev.size(); ++v) image[prev.region_id[v]] = next.region_id[v];
    h.merges.push_back(std::move(image));

    auto dual = build_dual(next, field, h.sub, h.sup, sub_forest, sup_forest);
    h.levels.push_back({eps, std::move(next), std::move(dual)});
  }
  return h;
}

}  // namespace msaug
