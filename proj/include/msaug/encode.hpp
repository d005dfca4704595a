#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msaug/hierarchy.hpp"
#include "msaug/persistence.hpp"

namespace msaug {

// ---- CNN path -------------------------------------------------------------

enum class ChannelKind { f_min, f_max, region_id };

std::string_view to_string(ChannelKind kind);

/// Per level, one channel holding f(min label) and one holding f(max label)
/// at every vertex; level-major, min before max. shape = (channels, dims...).
struct ChannelStack {
  std::vector<std::size_t> shape;
  std::vector<double> data;
  std::vector<std::size_t> level_index;  // per channel
  std::vector<ChannelKind> kinds;        // per channel
  std::vector<double> norm_min;          // per channel
  std::vector<double> norm_max;

  std::size_t channels() const { return shape.empty() ? 0 : shape.front(); }
};

struct ChannelOptions {
  /// Appends a region-id channel after each level's pair (debugging aid;
  /// ids are not comparable across inputs).
  bool region_ids = false;
};

/// Throws Error for graph-domain hierarchies.
ChannelStack to_channels(const Hierarchy& h, ChannelOptions options = {});

// ---- GNN path -------------------------------------------------------------

enum class GnnEdgeType { intra, inter };

struct GnnNode {
  std::uint32_t global_id = 0;
  std::uint32_t level = 0;
  RegionId region = 0;
  double f_min = 0;
  double f_max = 0;
  double size_fraction = 0;
  /// Smallest finite weight among the node's intra-level edges, 0 if none.
  double cheapest_edge = 0;
};

struct GnnEdge {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  GnnEdgeType type = GnnEdgeType::intra;
  double weight = 0;  // intra only; inter edges carry 0
};

struct GnnGraph {
  std::vector<GnnNode> nodes;
  std::vector<GnnEdge> edges;
};

/// All levels' regions as nodes (dense ids, level-major), intra edges from
/// each level's dual graph and one inter edge per region to its image one
/// level up. `prune_base` drops level 0 and its outgoing inter edges.
GnnGraph to_gnn_graph(const Hierarchy& h, bool prune_base = false);

// ---- diagram vectorizations ----------------------------------------------

struct ImageRange {
  double birth_lo, birth_hi;
  double pers_lo, pers_hi;
};

/// Sum of unweighted Gaussians centred at (birth, death - birth), sampled at
/// pixel centres. grid is row-major with rows along persistence and columns
/// along birth, both ascending.
struct PersistenceImage {
  std::size_t resolution = 0;
  double sigma = 0;
  ImageRange range{};
  std::vector<double> grid;

  double at(std::size_t row, std::size_t col) const { return grid[row * resolution + col]; }
};

/// Each Gaussian term is rounded to a multiple of 2^-40 and accumulated in
/// integers, so the image does not depend on point order and images of
/// disjoint diagrams add exactly. Default range: the points' bounding box
/// grown by 3 sigma per side; an axis with zero extent gets unit width
/// centred on the shared coordinate; an empty diagram gets [0, 1]^2.
PersistenceImage persistence_image(const PersistenceDiagram& d, std::size_t resolution = 20,
                                   double sigma = 0.1, std::optional<ImageRange> range = std::nullopt);

struct PersistenceLandscape {
  std::size_t layers = 0;  // K
  std::size_t samples = 0; // T
  std::vector<double> t;
  std::vector<double> values;  // layers x samples, row-major

  double at(std::size_t k, std::size_t j) const { return values[k * samples + j]; }
};

/// Tent functions max(0, min(t - b, d - t)) sampled on T uniform points over
/// `range` (default [min birth, max death]; [0, 1] for an empty diagram),
/// keeping the K largest values per sample.
PersistenceLandscape persistence_landscape(const PersistenceDiagram& d, std::size_t layers = 5,
                                           std::size_t samples = 100,
                                           std::optional<std::pair<double, double>> range = std::nullopt);

}  // namespace msaug
