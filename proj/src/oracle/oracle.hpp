#pragma once

// Brute-force reference implementations. Each one recomputes its answer
// from the raw values and an independently enumerated neighborhood; none
// calls into the code path it is used to check.

#include <cstdint>
#include <random>
#include <vector>

#include "msaug/distance_transform.hpp"
#include "msaug/field.hpp"
#include "msaug/persistence.hpp"

namespace msaug::oracle {

/// Neighbors by explicit coordinate offsets (grids) or a scan of the edge
/// list (graphs).
std::vector<std::vector<VertexId>> neighbor_lists(const ScalarField& field);

/// (value, index) lexicographic comparison straight from the values.
bool precedes(const ScalarField& field, VertexId a, VertexId b);

/// Vertices with no lower / no higher neighbor.
std::vector<VertexId> local_minima(const ScalarField& field);
std::vector<VertexId> local_maxima(const ScalarField& field);

struct NaiveLabels {
  std::vector<VertexId> min_label;
  std::vector<VertexId> max_label;
};

/// Walks every vertex's steepest chain to its end, no memoization.
NaiveLabels naive_labels(const ScalarField& field);

/// Adds vertices one at a time in sweep order and recomputes connected
/// components from scratch by BFS after each step. Components that become
/// connected at step k all die there except the one holding the oldest
/// vertex. O(n^2); meant for fields up to a few hundred vertices.
std::vector<PersistencePair> sweep_pairs(const ScalarField& field, PairKind kind);

/// Multiset equality on (extremum, saddle, absorbed_into, birth, death).
bool same_pairs(std::vector<PersistencePair> a, std::vector<PersistencePair> b);

/// Region partition after cancelling every pair with persistence < eps,
/// starting from naive labels and the sweep oracle's pairs and repeating
/// the relabeling until nothing changes. Returned as canonical ids
/// (first appearance by vertex index).
std::vector<std::uint32_t> cancelled_partition(const ScalarField& field, double eps);
std::vector<std::uint32_t> cancelled_partition(NaiveLabels labels, const std::vector<PersistencePair>& sub,
                                               const std::vector<PersistencePair>& sup, double eps);

/// Canonical relabeling of any per-vertex labeling.
std::vector<std::uint32_t> canonical(const std::vector<std::uint64_t>& labels);

/// Unordered pairs of distinct region ids that touch across a domain edge.
std::vector<std::pair<std::uint32_t, std::uint32_t>> region_adjacency(const ScalarField& field,
                                                                     const std::vector<std::uint32_t>& region_id);

/// Nearest-obstacle squared distances by scanning every obstacle cell.
std::vector<std::int64_t> brute_squared_distance(const BinaryMask& mask);

// ---- generators ----------------------------------------------------------

/// Uniform values in [0, 1).
ScalarField random_grid(std::mt19937_64& rng, std::size_t h, std::size_t w);
/// Integer values in [0, levels); ties are common.
ScalarField random_int_grid(std::mt19937_64& rng, std::size_t h, std::size_t w, int levels);
/// Two Gaussian bumps of heights h1, h2 centred on grid points.
ScalarField two_bump_field(std::size_t size, double h1, double h2);

}  // namespace msaug::oracle
