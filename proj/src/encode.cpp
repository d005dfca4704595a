#include "msaug/encode.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace msaug {

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::f_min: return "f_min";
    case ChannelKind::f_max: return "f_max";
    case ChannelKind::region_id: return "region_id";
  }
  return "unknown";
}

ChannelStack to_channels(const Hierarchy& h, ChannelOptions options) {
  if (!h.field.is_grid()) throw Error("channel encoding requires grid domain");
  const std::size_t n = h.field.size();
  const auto values = h.field.values();
  const std::size_t per_level = options.region_ids ? 3 : 2;

  ChannelStack cs;
  cs.shape.push_back(per_level * h.levels.size());
  cs.shape.insert(cs.shape.end(), h.field.shape().begin(), h.field.shape().end());
  cs.data.resize(cs.shape.front() * n);

  std::size_t c = 0;
  auto emit = [&](std::size_t level, ChannelKind kind, auto&& value_of) {
    double* out = cs.data.data() + c * n;
    double lo = kInfinity, hi = -kInfinity;
    for (std::size_t v = 0; v < n; ++v) {
      out[v] = value_of(v);
      lo = std::min(lo, out[v]);
      hi = std::max(hi, out[v]);
    }
    cs.level_index.push_back(level);
    cs.kinds.push_back(kind);
    cs.norm_min.push_back(lo);
    cs.norm_max.push_back(hi);
    ++c;
  };

  for (std::size_t l = 0; l < h.levels.size(); ++l) {
    const auto& seg = h.levels[l].segmentation;
    emit(l, ChannelKind::f_min, [&](std::size_t v) { return values[seg.min_label[v]]; });
    emit(l, ChannelKind::f_max, [&](std::size_t v) { return values[seg.max_label[v]]; });
    if (options.region_ids) {
      emit(l, ChannelKind::region_id, [&](std::size_t v) { return static_cast<double>(seg.region_id[v]); });
    }
  }
  return cs;
}

GnnGraph to_gnn_graph(const Hierarchy& h, bool prune_base) {
  GnnGraph g;
  const std::size_t first = prune_base && h.levels.size() > 1 ? 1 : 0;
  const auto n = static_cast<double>(h.field.size());

  std::vector<std::uint32_t> offset(h.levels.size(), 0);
  std::uint32_t next_id = 0;
  for (std::size_t l = first; l < h.levels.size(); ++l) {
    offset[l] = next_id;
    const auto& dual = h.levels[l].dual;
    std::vector<double> cheapest(dual.nodes.size(), kInfinity);
    for (const auto& e : dual.edges) {
      cheapest[e.a] = std::min(cheapest[e.a], e.weight);
      cheapest[e.b] = std::min(cheapest[e.b], e.weight);
    }
    for (const auto& node : dual.nodes) {
      GnnNode gn;
      gn.global_id = next_id++;
      gn.level = static_cast<std::uint32_t>(l);
      gn.region = node.region_id;
      gn.f_min = node.f_min;
      gn.f_max = node.f_max;
      gn.size_fraction = static_cast<double>(node.size) / n;
      gn.cheapest_edge = std::isfinite(cheapest[node.region_id]) ? cheapest[node.region_id] : 0.0;
      g.nodes.push_back(gn);
    }
  }

  for (std::size_t l = first; l < h.levels.size(); ++l) {
    for (const auto& e : h.levels[l].dual.edges) {
      g.edges.push_back({offset[l] + e.a, offset[l] + e.b, GnnEdgeType::intra, e.weight});
    }
    if (l + 1 < h.levels.size()) {
      const auto& image = h.merges[l];
      for (RegionId r = 0; r < image.size(); ++r) {
        g.edges.push_back({offset[l] + r, offset[l + 1] + image[r], GnnEdgeType::inter, 0.0});
      }
    }
  }
  return g;
}

namespace {

constexpr double kFixedScale = 1099511627776.0;  // 2^40

std::pair<double, double> axis_range(double lo, double hi, double sigma) {
  if (lo == hi) return {lo - 0.5, hi + 0.5};
  return {lo - 3 * sigma, hi + 3 * sigma};
}

}  // namespace

PersistenceImage persistence_image(const PersistenceDiagram& d, std::size_t resolution, double sigma,
                                   std::optional<ImageRange> range) {
  if (resolution == 0) throw Error("persistence image resolution must be >= 1");
  if (!(sigma > 0)) throw Error("persistence image sigma must be > 0");

  PersistenceImage img;
  img.resolution = resolution;
  img.sigma = sigma;
  if (range) {
    img.range = *range;
  } else if (d.points.empty()) {
    img.range = {0, 1, 0, 1};
  } else {
    double b_lo = kInfinity, b_hi = -kInfinity, p_lo = kInfinity, p_hi = -kInfinity;
    for (const auto& pt : d.points) {
      const double p = pt.death - pt.birth;
      b_lo = std::min(b_lo, pt.birth);
      b_hi = std::max(b_hi, pt.birth);
      p_lo = std::min(p_lo, p);
      p_hi = std::max(p_hi, p);
    }
    const auto [bl, bh] = axis_range(b_lo, b_hi, sigma);
    const auto [pl, ph] = axis_range(p_lo, p_hi, sigma);
    img.range = {bl, bh, pl, ph};
  }

  const double bw = (img.range.birth_hi - img.range.birth_lo) / static_cast<double>(resolution);
  const double pw = (img.range.pers_hi - img.range.pers_lo) / static_cast<double>(resolution);
  std::vector<double> xs(resolution), ys(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    xs[i] = img.range.birth_lo + (static_cast<double>(i) + 0.5) * bw;
    ys[i] = img.range.pers_lo + (static_cast<double>(i) + 0.5) * pw;
  }

  const double denom = 2 * sigma * sigma;
  std::vector<std::int64_t> acc(resolution * resolution, 0);
  std::vector<double> gx(resolution), gy(resolution);
  for (const auto& pt : d.points) {
    const double b = pt.birth;
    const double p = pt.death - pt.birth;
    // The kernel factors into a birth term and a persistence term.
    for (std::size_t i = 0; i < resolution; ++i) {
      gx[i] = std::exp(-(xs[i] - b) * (xs[i] - b) / denom);
      gy[i] = std::exp(-(ys[i] - p) * (ys[i] - p) / denom);
    }
    for (std::size_t r = 0; r < resolution; ++r) {
      for (std::size_t c = 0; c < resolution; ++c) {
        acc[r * resolution + c] += std::llround(gy[r] * gx[c] * kFixedScale);
      }
    }
  }
  img.grid.resize(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) img.grid[i] = static_cast<double>(acc[i]) / kFixedScale;
  return img;
}

PersistenceLandscape persistence_landscape(const PersistenceDiagram& d, std::size_t layers,
                                           std::size_t samples,
                                           std::optional<std::pair<double, double>> range) {
  if (layers < 1) throw Error("landscape needs at least one layer");
  if (samples < 2) throw Error("landscape needs at least two sample points");

  double lo = 0, hi = 1;
  if (range) {
    std::tie(lo, hi) = *range;
    if (!(lo < hi)) throw Error("landscape range must satisfy lo < hi");
  } else if (!d.points.empty()) {
    lo = kInfinity;
    hi = -kInfinity;
    for (const auto& pt : d.points) {
      lo = std::min(lo, pt.birth);
      hi = std::max(hi, pt.death);
    }
  }

  PersistenceLandscape ls;
  ls.layers = layers;
  ls.samples = samples;
  ls.t.resize(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    ls.t[j] = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(samples - 1);
  }
  ls.values.assign(layers * samples, 0.0);

  std::vector<double> tents;
  for (std::size_t j = 0; j < samples; ++j) {
    const double t = ls.t[j];
    tents.clear();
    for (const auto& pt : d.points) {
      const double v = std::min(t - pt.birth, pt.death - t);
      if (v > 0) tents.push_back(v);
    }
    const std::size_t keep = std::min(layers, tents.size());
    std::partial_sort(tents.begin(), tents.begin() + static_cast<std::ptrdiff_t>(keep), tents.end(),
                      std::greater<>());
    for (std::size_t k = 0; k < keep; ++k) ls.values[k * samples + j] = tents[k];
  }
  return ls;
}

}  // namespace msaug
