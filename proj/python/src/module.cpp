#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cmath>

#include "msaug/encode.hpp"
#include "msaug/hierarchy.hpp"

namespace py = pybind11;
using namespace msaug;

namespace {

using InArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using EdgeArray = py::array_t<std::int64_t, py::array::c_style | py::array::forcecast>;

// Hands the vector's buffer to numpy without copying.
template <class T>
py::array_t<T> adopt(std::vector<T>&& v, std::vector<py::ssize_t> shape) {
  auto* owned = new std::vector<T>(std::move(v));
  py::capsule free_when_done(owned, [](void* p) { delete static_cast<std::vector<T>*>(p); });
  return py::array_t<T>(std::move(shape), owned->data(), free_when_done);
}

std::vector<py::ssize_t> domain_shape(const ScalarField& f) {
  return {f.shape().begin(), f.shape().end()};
}

std::vector<Edge> read_edges(const EdgeArray& edges) {
  if (edges.ndim() != 2 || edges.shape(1) != 2) throw Error("edges must have shape (E, 2)");
  std::vector<Edge> out(edges.shape(0));
  auto e = edges.unchecked<2>();
  for (py::ssize_t i = 0; i < edges.shape(0); ++i) {
    if (e(i, 0) < 0 || e(i, 1) < 0) throw Error("edge endpoints must be non-negative");
    out[i] = {static_cast<VertexId>(std::min<std::int64_t>(e(i, 0), kNoVertex)),
              static_cast<VertexId>(std::min<std::int64_t>(e(i, 1), kNoVertex))};
  }
  return out;
}

ScalarField make_field(const InArray& values, const std::optional<EdgeArray>& edges) {
  std::vector<double> v(values.data(), values.data() + values.size());
  if (edges) {
    if (values.ndim() != 1) throw Error("graph values must be one-dimensional");
    const auto list = read_edges(*edges);
    py::gil_scoped_release release;
    return ScalarField::graph(std::move(v), list);
  }
  std::vector<std::size_t> shape(values.shape(), values.shape() + values.ndim());
  DomainKind kind;
  if (values.ndim() == 2) {
    kind = DomainKind::grid2d;
  } else if (values.ndim() == 3) {
    kind = DomainKind::grid3d;
  } else {
    throw Error("grid values must be 2- or 3-dimensional; pass edges= for a graph");
  }
  py::gil_scoped_release release;
  return ScalarField::grid(kind, std::move(shape), std::move(v));
}

Hierarchy hierarchy(const ScalarField& field, const std::optional<std::vector<double>>& epsilons,
                    const std::optional<std::vector<double>>& fractions) {
  if (epsilons.has_value() == fractions.has_value()) throw Error("pass exactly one of epsilons or fractions");
  py::gil_scoped_release release;
  auto sub = sublevel_pairs(field);
  auto sup = superlevel_pairs(field);
  const auto schedule =
      fractions ? thresholds_from_fractions(sub, sup, *fractions).schedule : ThresholdSchedule(*epsilons);
  return build_hierarchy(field, std::move(sub), std::move(sup), schedule);
}

PersistenceDiagram read_diagram(const InArray& birth, const InArray& death) {
  if (birth.ndim() != 1 || death.ndim() != 1 || birth.size() != death.size()) {
    throw Error("birth and death must be 1-D arrays of equal length");
  }
  PersistenceDiagram d;
  for (py::ssize_t i = 0; i < birth.size(); ++i) {
    const double b = birth.data()[i], e = death.data()[i];
    if (!std::isfinite(b) || !std::isfinite(e)) throw Error("diagram points must be finite");
    if (!(e > b)) throw Error("diagram points need death > birth");
    d.points.push_back({b, e});
  }
  std::sort(d.points.begin(), d.points.end());
  return d;
}

py::array_t<double> channels_array(ChannelStack&& cs) {
  std::vector<py::ssize_t> shape(cs.shape.begin(), cs.shape.end());
  return adopt(std::move(cs.data), std::move(shape));
}

py::dict gnn_dict(const GnnGraph& g) {
  const auto n = static_cast<py::ssize_t>(g.nodes.size());
  const auto m = static_cast<py::ssize_t>(g.edges.size());
  std::vector<double> features;
  std::vector<std::uint32_t> level, region;
  features.reserve(n * 4);
  for (const auto& v : g.nodes) {
    features.insert(features.end(), {v.f_min, v.f_max, v.size_fraction, v.cheapest_edge});
    level.push_back(v.level);
    region.push_back(v.region);
  }
  std::vector<std::int64_t> index(2 * m);
  std::vector<std::int8_t> type(m);
  std::vector<double> weight(m);
  for (py::ssize_t i = 0; i < m; ++i) {
    index[i] = g.edges[i].src;
    index[m + i] = g.edges[i].dst;
    type[i] = g.edges[i].type == GnnEdgeType::inter;
    weight[i] = g.edges[i].weight;
  }
  py::dict out;
  out["features"] = adopt(std::move(features), {n, 4});
  out["edge_index"] = adopt(std::move(index), {2, m});
  out["edge_type"] = adopt(std::move(type), {m});
  out["edge_weight"] = adopt(std::move(weight), {m});
  out["level"] = adopt(std::move(level), {n});
  out["region"] = adopt(std::move(region), {n});
  return out;
}

std::optional<ImageRange> image_range(const std::optional<std::array<double, 4>>& r) {
  if (!r) return std::nullopt;
  return ImageRange{(*r)[0], (*r)[1], (*r)[2], (*r)[3]};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Morse-Smale segmentation hierarchies and their encodings";
  m.attr("__version__") = MSAUG_VERSION;
  py::register_exception<Error>(m, "MsaugError", PyExc_ValueError);

  py::class_<Hierarchy>(m, "Hierarchy")
      .def_property_readonly("levels", [](const Hierarchy& h) { return h.levels.size(); })
      .def_property_readonly("epsilons",
                             [](const Hierarchy& h) {
                               std::vector<double> e;
                               for (const auto& l : h.levels) e.push_back(l.epsilon);
                               return e;
                             })
      .def_property_readonly("region_counts",
                             [](const Hierarchy& h) {
                               std::vector<std::size_t> c;
                               for (const auto& l : h.levels) c.push_back(l.segmentation.region_count());
                               return c;
                             })
      .def(
          "region_id",
          [](const Hierarchy& h, std::size_t level) {
            const auto& seg = h.levels.at(level).segmentation;
            std::vector<std::uint32_t> ids(seg.region_id.begin(), seg.region_id.end());
            return adopt(std::move(ids), domain_shape(h.field));
          },
          py::arg("level") = 0)
      .def(
          "merges", [](const Hierarchy& h, std::size_t level) { return h.merges.at(level); },
          py::arg("level"), "Level l+1 region of each level-l region.")
      .def(
          "diagram",
          [](const Hierarchy& h, const std::string& kind) {
            if (kind != "sublevel" && kind != "superlevel") throw Error("kind must be sublevel or superlevel");
            const auto d = diagram(kind == "sublevel" ? h.sub : h.sup, h.field);
            std::vector<double> b, e;
            for (const auto& p : d.points) {
              b.push_back(p.birth);
              e.push_back(p.death);
            }
            const auto k = static_cast<py::ssize_t>(b.size());
            return py::make_tuple(adopt(std::move(b), {k}), adopt(std::move(e), {k}));
          },
          py::arg("kind") = "sublevel", "Finite points as (birth, death) arrays.");

  m.def(
      "segment",
      [](const InArray& values, std::optional<EdgeArray> edges) {
        const auto field = make_field(values, edges);
        Segmentation seg;
        {
          py::gil_scoped_release release;
          seg = segment(field);
        }
        const auto shape = domain_shape(field);
        std::vector<std::uint32_t> regions;
        for (const auto& r : seg.regions) regions.insert(regions.end(), {r.min, r.max});
        const auto count = static_cast<py::ssize_t>(seg.region_count());
        py::dict out;
        out["region_id"] = adopt(std::move(seg.region_id), shape);
        out["min_label"] = adopt(std::move(seg.min_label), shape);
        out["max_label"] = adopt(std::move(seg.max_label), shape);
        out["regions"] = adopt(std::move(regions), {count, 2});
        return out;
      },
      py::arg("values"), py::arg("edges") = py::none());

  m.def(
      "build_hierarchy",
      [](const InArray& values, std::optional<std::vector<double>> epsilons,
         std::optional<std::vector<double>> fractions, std::optional<EdgeArray> edges) {
        return hierarchy(make_field(values, edges), epsilons, fractions);
      },
      py::arg("values"), py::kw_only(), py::arg("epsilons") = py::none(), py::arg("fractions") = py::none(),
      py::arg("edges") = py::none());

  m.def(
      "to_channels",
      [](const Hierarchy& h, bool region_ids) {
        ChannelStack cs;
        {
          py::gil_scoped_release release;
          cs = to_channels(h, {region_ids});
        }
        return channels_array(std::move(cs));
      },
      py::arg("hierarchy"), py::arg("region_ids") = false);

  m.def(
      "to_gnn_graph",
      [](const Hierarchy& h, bool prune_base) {
        GnnGraph g;
        {
          py::gil_scoped_release release;
          g = to_gnn_graph(h, prune_base);
        }
        return gnn_dict(g);
      },
      py::arg("hierarchy"), py::arg("prune_base") = false);

  m.def(
      "persistence_image",
      [](const InArray& birth, const InArray& death, std::size_t resolution, double sigma,
         std::optional<std::array<double, 4>> range) {
        const auto d = read_diagram(birth, death);
        PersistenceImage img;
        {
          py::gil_scoped_release release;
          img = persistence_image(d, resolution, sigma, image_range(range));
        }
        const auto r = static_cast<py::ssize_t>(img.resolution);
        return adopt(std::move(img.grid), {r, r});
      },
      py::arg("birth"), py::arg("death"), py::arg("resolution") = 20, py::arg("sigma") = 0.1,
      py::arg("range") = py::none(), "range = (birth_lo, birth_hi, pers_lo, pers_hi)");

  m.def(
      "persistence_landscape",
      [](const InArray& birth, const InArray& death, std::size_t layers, std::size_t samples,
         std::optional<std::pair<double, double>> range) {
        const auto d = read_diagram(birth, death);
        PersistenceLandscape pl;
        {
          py::gil_scoped_release release;
          pl = persistence_landscape(d, layers, samples, range);
        }
        const auto k = static_cast<py::ssize_t>(pl.layers), t = static_cast<py::ssize_t>(pl.samples);
        return adopt(std::move(pl.values), {k, t});
      },
      py::arg("birth"), py::arg("death"), py::arg("layers") = 5, py::arg("samples") = 100,
      py::arg("range") = py::none());

  m.def(
      "augment_image",
      [](const InArray& image, std::vector<double> fractions, bool region_ids) {
        if (image.ndim() != 2) throw Error("augment_image expects a 2-D array");
        const auto h = hierarchy(make_field(image, std::nullopt), std::nullopt, fractions);
        ChannelStack cs;
        {
          py::gil_scoped_release release;
          cs = to_channels(h, {region_ids});
        }
        return channels_array(std::move(cs));
      },
      py::arg("image"), py::arg("fractions"), py::arg("region_ids") = false);

  m.def(
      "augment_graph",
      [](const InArray& values, const EdgeArray& edges, std::vector<double> epsilons, bool prune_base) {
        const auto h = hierarchy(make_field(values, edges), epsilons, std::nullopt);
        GnnGraph g;
        {
          py::gil_scoped_release release;
          g = to_gnn_graph(h, prune_base);
        }
        return gnn_dict(g);
      },
      py::arg("values"), py::arg("edges"), py::arg("epsilons"), py::arg("prune_base") = false);
}
