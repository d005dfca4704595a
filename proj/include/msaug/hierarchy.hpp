#pragma once

#include <span>
#include <vector>

#include "msaug/dual.hpp"
#include "msaug/morse.hpp"
#include "msaug/persistence.hpp"

namespace msaug {

/// Persistence thresholds for simplification levels 1..k.
class ThresholdSchedule {
public:
  ThresholdSchedule() = default;

  /// Validates that every threshold is >= 0 (inf allowed) and the sequence
  /// is strictly increasing, or merely non-decreasing when `allow_repeats`.
  explicit ThresholdSchedule(std::vector<double> epsilons, bool allow_repeats = false);

  std::span<const double> epsilons() const { return epsilons_; }
  std::size_t size() const { return epsilons_.size(); }
  bool empty() const { return epsilons_.empty(); }

private:
  std::vector<double> epsilons_;
};

struct FractionSchedule {
  ThresholdSchedule schedule;
  /// Set when no finite pair exists and a nonzero fraction was requested;
  /// the affected thresholds are 0.
  bool empty_pool = false;
};

/// Thresholds that cancel roughly the requested fraction of all finite pairs
/// (sublevel and superlevel pooled). With persistences sorted ascending as
/// p[0..c), fraction q maps to p[ceil(q c)]; q = 0 maps to 0, and an index
/// past the end maps to the next double above max p. Ties in persistence can
/// make consecutive thresholds equal, so the result allows repeats.
FractionSchedule thresholds_from_fractions(const PersistencePairSet& sub, const PersistencePairSet& sup,
                                           std::span<const double> fractions);

/// Cancels every pair with persistence < eps: each min label moves to its
/// absorbing ancestor in the sublevel forest, each max label likewise in the
/// superlevel forest, then region ids are rebuilt.
Segmentation simplify(const Segmentation& seg, const PersistencePairSet& sub,
                      const PersistencePairSet& sup, double eps);
Segmentation simplify(const Segmentation& seg, const AbsorptionForest& sub_forest,
                      const AbsorptionForest& sup_forest, double eps);

struct HierarchyLevel {
  double epsilon = 0;  // 0 for the base level
  Segmentation segmentation;
  DualGraph dual;
};

struct Hierarchy {
  ScalarField field;
  PersistencePairSet sub;
  PersistencePairSet sup;
  std::vector<HierarchyLevel> levels;  // levels[0] is the unsimplified base
  /// merges[l][r] is the level l+1 region that level-l region r becomes.
  std::vector<std::vector<RegionId>> merges;
};

Hierarchy build_hierarchy(const ScalarField& field, const ThresholdSchedule& schedule);
/// Same, reusing pair sets already computed for `field`.
Hierarchy build_hierarchy(const ScalarField& field, PersistencePairSet sub, PersistencePairSet sup,
                          const ThresholdSchedule& schedule);

}  // namespace msaug
