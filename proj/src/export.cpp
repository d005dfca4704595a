#include "msaug/export.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace msaug {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

std::string dump_json(const json& j) { return j.dump(1) + "\n"; }

json region_table_json(const Segmentation& seg, const ScalarField& field) {
  json out = json::array();
  for (RegionId r = 0; r < seg.region_count(); ++r) {
    const auto& key = seg.regions[r];
    out.push_back({{"id", r},
                   {"min_vertex", key.min},
                   {"max_vertex", key.max},
                   {"f_min", json_number(field.value(key.min))},
                   {"f_max", json_number(field.value(key.max))}});
  }
  return out;
}

namespace {

json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return {{"kind", std::string(to_string(w->kind))},
          {"extremum", w->extremum},
          {"saddle", w->saddle},
          {"absorbed_into", w->absorbed_into},
          {"direct", w->direct}};
}

json dual_nodes_json(const DualGraph& g) {
  json nodes = json::array();
  for (const auto& n : g.nodes) {
    nodes.push_back({{"id", n.region_id},
                     {"min", n.min_vertex},
                     {"max", n.max_vertex},
                     {"f_min", json_number(n.f_min)},
                     {"f_max", json_number(n.f_max)},
                     {"size", n.size}});
  }
  return nodes;
}

json dual_edges_json(const DualGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges) {
    edges.push_back({{"a", e.a}, {"b", e.b}, {"weight", json_number(e.weight)}, {"witness", witness_json(e.witness)}});
  }
  return edges;
}

}  // namespace

json dual_json(const DualGraph& g) { return {{"nodes", dual_nodes_json(g)}, {"edges", dual_edges_json(g)}}; }

std::string dual_edges_csv(const DualGraph& g) {
  std::ostringstream os;
  os << "a,b,weight,witness_kind,witness_extremum,witness_saddle,direct\n";
  for (const auto& e : g.edges) {
    os << e.a << ',' << e.b << ',' << format_double(e.weight) << ',';
    if (e.witness) {
      os << to_string(e.witness->kind) << ',' << e.witness->extremum << ',' << e.witness->saddle << ','
         << (e.witness->direct ? 1 : 0);
    } else {
      os << ",,,";
    }
    os << '\n';
  }
  return os.str();
}

json hierarchy_json(const Hierarchy& h) {
  json levels = json::array();
  for (const auto& level : h.levels) {
    levels.push_back({{"epsilon", json_number(level.epsilon)},
                      {"regions", dual_nodes_json(level.dual)},
                      {"dual_edges", dual_edges_json(level.dual)}});
  }
  json merges = json::array();
  for (std::size_t l = 0; l < h.merges.size(); ++l) {
    for (RegionId r = 0; r < h.merges[l].size(); ++r) {
      merges.push_back({{"level", l}, {"from_region", r}, {"to_region", h.merges[l][r]}});
    }
  }
  return {{"levels", std::move(levels)}, {"merges", std::move(merges)}};
}

std::string diagram_csv(const PersistencePairSet& pairs, const ScalarField& field, bool header) {
  std::ostringstream os;
  if (header) os << "birth,death,extremum_vertex,saddle_vertex,kind\n";
  const auto kind = to_string(pairs.kind);
  for (const auto& p : pairs.pairs) {
    os << format_double(p.birth) << ',' << format_double(p.death) << ',' << p.extremum << ',' << p.saddle
       << ',' << kind << '\n';
  }
  for (VertexId e : pairs.essential) {
    os << format_double(field.value(e)) << ",inf," << e << ",," << kind << '\n';
  }
  return os.str();
}

json gnn_json(const GnnGraph& g) {
  json nodes = json::array();
  for (const auto& n : g.nodes) {
    nodes.push_back({{"id", n.global_id},
                     {"level", n.level},
                     {"region", n.region},
                     {"features", {json_number(n.f_min), json_number(n.f_max), json_number(n.size_fraction),
                                   json_number(n.cheapest_edge)}}});
  }
  json edges = json::array();
  for (const auto& e : g.edges) {
    json rec = {{"src", e.src}, {"dst", e.dst}, {"type", e.type == GnnEdgeType::intra ? "intra" : "inter"}};
    if (e.type == GnnEdgeType::intra) rec["weight"] = json_number(e.weight);
    edges.push_back(std::move(rec));
  }
  return {{"feature_names", {"f_min", "f_max", "size_fraction", "cheapest_edge"}},
          {"nodes", std::move(nodes)},
          {"edges", std::move(edges)}};
}

std::string gnn_nodes_csv(const GnnGraph& g) {
  std::ostringstream os;
  os << "id,level,region,f_min,f_max,size_fraction,cheapest_edge\n";
  for (const auto& n : g.nodes) {
    os << n.global_id << ',' << n.level << ',' << n.region << ',' << format_double(n.f_min) << ','
       << format_double(n.f_max) << ',' << format_double(n.size_fraction) << ','
       << format_double(n.cheapest_edge) << '\n';
  }
  return os.str();
}

std::string gnn_edges_csv(const GnnGraph& g) {
  std::ostringstream os;
  os << "src,dst,type,weight\n";
  for (const auto& e : g.edges) {
    os << e.src << ',' << e.dst << ',' << (e.type == GnnEdgeType::intra ? "intra" : "inter") << ','
       << (e.type == GnnEdgeType::intra ? format_double(e.weight) : "") << '\n';
  }
  return os.str();
}

json channel_metadata_json(const ChannelStack& cs) {
  json channels = json::array();
  for (std::size_t c = 0; c < cs.channels(); ++c) {
    channels.push_back({{"index", c},
                        {"level", cs.level_index[c]},
                        {"content", std::string(to_string(cs.kinds[c]))},
                        {"min", json_number(cs.norm_min[c])},
                        {"max", json_number(cs.norm_max[c])}});
  }
  return {{"shape", cs.shape}, {"channels", std::move(channels)}};
}

std::vector<std::int32_t> region_id_array(const Segmentation& seg) {
  return {seg.region_id.begin(), seg.region_id.end()};
}

}  // namespace msaug
