#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "msaug/field.hpp"

namespace msaug {

enum class PairKind { sublevel, superlevel };

std::string_view to_string(PairKind kind);

/// A 0-dimensional extremum/saddle pair. birth = f(extremum),
/// death = f(saddle), persistence = |death - birth|. absorbed_into is the
/// elder extremum that survived the merge at `saddle`.
struct PersistencePair {
  VertexId extremum = kNoVertex;
  VertexId saddle = kNoVertex;
  VertexId absorbed_into = kNoVertex;
  double birth = 0;
  double death = 0;
  double persistence = 0;
  PairKind kind = PairKind::sublevel;

  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

struct PersistencePairSet {
  PairKind kind = PairKind::sublevel;
  std::size_t vertex_count = 0;
  /// Sorted by (persistence, saddle rank, extremum rank) in the sweep direction.
  std::vector<PersistencePair> pairs;
  /// Extrema that never die: one per connected component, ascending vertex id.
  std::vector<VertexId> essential;
};

/// Elder-rule union-find over vertices in increasing rank.
PersistencePairSet sublevel_pairs(const ScalarField& field);
/// The same sweep in decreasing rank; pairs are (maximum, saddle).
PersistencePairSet superlevel_pairs(const ScalarField& field);

struct DiagramPoint {
  double birth;
  double death;
  friend auto operator<=>(const DiagramPoint&, const DiagramPoint&) = default;
};

/// Points always satisfy death > birth. Sublevel points are
/// (f(min), f(saddle)); superlevel points are (f(saddle), f(max)), i.e. the
/// superlevel pairs negated and swapped so they also sit above the diagonal.
/// Zero-persistence pairs (possible only with tied values) are dropped.
struct PersistenceDiagram {
  PairKind kind = PairKind::sublevel;
  std::vector<DiagramPoint> points;  // sorted
  std::vector<double> essential;     // f of each essential extremum, sorted
};

/// Throws Error if a pair's kind differs from the set's.
PersistenceDiagram diagram(const PersistencePairSet& pairs, const ScalarField& field);

/// Exact bottleneck distance. Finite points may match each other or the
/// diagonal; essential classes match each other in sorted order. Returns
/// +inf when the essential counts differ. Throws Error on mixed kinds.
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b);

/// The forest in which every dying extremum points at the elder extremum it
/// was absorbed into. Persistence never decreases from child to parent, so
/// cancelling everything below a threshold moves each extremum to its
/// nearest ancestor at or above the threshold.
class AbsorptionForest {
public:
  explicit AbsorptionForest(const PersistencePairSet& pairs);

  PairKind kind() const { return kind_; }

  /// Where each extremum ends up after cancelling all pairs with
  /// persistence < eps. Indexed by vertex id; non-extrema map to kNoVertex.
  std::vector<VertexId> targets(double eps) const;

  struct MergeCost {
    double cost = kInfinity;
    std::optional<std::size_t> pair;  // index into the pair set
  };

  /// The smallest threshold at which a and b carry the same label: the
  /// largest persistence on the forest path between them. Infinite (and no
  /// pair) when they lie in different trees or a == b.
  MergeCost merge_cost(VertexId a, VertexId b) const;

  /// Index of the pair in which `extremum` dies, if any.
  std::optional<std::size_t> pair_of(VertexId extremum) const;

private:
  static constexpr std::uint32_t kNoNode = 0xffffffffu;

  PairKind kind_;
  std::vector<std::uint32_t> node_of_;   // vertex -> node
  std::vector<VertexId> vertex_;         // node -> vertex
  std::vector<std::uint32_t> pair_;      // node -> pair index or kNoNode
  std::vector<double> persistence_;      // node -> persistence (inf for roots)
  std::vector<std::uint32_t> depth_;
  std::vector<std::vector<std::uint32_t>> up_;  // up_[j][node] = 2^j-th ancestor; roots point to themselves
};

}  // namespace msaug
