#include <fstream>
#include <sstream>

#include <json.hpp>

#include "msaug/io.hpp"

namespace msaug {
namespace {

using json = nlohmann::json;

std::vector<Edge> edges_from_json(const json& j) {
  std::vector<Edge> edges;
  edges.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw Error("each edge must be a pair [i, j]");
    const auto a = e[0].get<long long>();
    const auto b = e[1].get<long long>();
    if (a < 0 || b < 0 || a >= kNoVertex || b >= kNoVertex) {
      throw Error("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                  ") has an endpoint out of range");
    }
    edges.emplace_back(static_cast<VertexId>(a), static_cast<VertexId>(b));
  }
  return edges;
}

std::vector<std::string> csv_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

bool starts_numeric(const std::string& s) {
  const auto p = s.find_first_not_of(" \t");
  return p != std::string::npos && (std::isdigit(static_cast<unsigned char>(s[p])) || s[p] == '-' ||
                                    s[p] == '+' || s[p] == '.');
}

}  // namespace

ScalarField parse_graph_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("invalid graph JSON: ") + e.what());
  }
  if (!j.contains("values") || !j.contains("edges")) {
    throw Error("graph JSON needs 'values' and 'edges'");
  }
  try {
    auto values = j.at("values").get<std::vector<double>>();
    const auto edges = edges_from_json(j.at("edges"));
    return ScalarField::graph(std::move(values), edges);
  } catch (const json::exception& e) {
    throw Error(std::string("invalid graph JSON: ") + e.what());
  }
}

ScalarField read_graph_json(const fs::path& path) {
  const auto bytes = read_file_bytes(path);
  return parse_graph_json(std::string(bytes.begin(), bytes.end()));
}

ScalarField read_graph_csv(const fs::path& values_csv, const fs::path& edges_csv) {
  auto vlines = csv_lines(values_csv);
  auto elines = csv_lines(edges_csv);
  if (!vlines.empty() && !starts_numeric(vlines.front())) vlines.erase(vlines.begin());
  if (!elines.empty() && !starts_numeric(elines.front())) elines.erase(elines.begin());

  std::vector<double> values;
  values.reserve(vlines.size());
  for (const auto& l : vlines) {
    try {
      values.push_back(std::stod(l));
    } catch (const std::exception&) {
      throw Error("bad value line '" + l + "' in " + values_csv.string());
    }
  }
  std::vector<Edge> edges;
  edges.reserve(elines.size());
  for (const auto& l : elines) {
    std::stringstream ss(l);
    long long a = -1, b = -1;
    char sep = 0;
    if (!(ss >> a >> sep >> b) || sep != ',') {
      throw Error("bad edge line '" + l + "' in " + edges_csv.string());
    }
    if (a < 0 || b < 0 || a >= kNoVertex || b >= kNoVertex) {
      throw Error("edge (" + std::to_string(a) + ", " + std::to_string(b) + ") has an endpoint out of range");
    }
    edges.emplace_back(static_cast<VertexId>(a), static_cast<VertexId>(b));
  }
  return ScalarField::graph(std::move(values), edges);
}

void write_field_snapshot(const ScalarField& field, const fs::path& dir, const std::string& stem) {
  fs::create_directories(dir);
  const std::vector<std::size_t> shape(field.shape().begin(), field.shape().end());
  write_npy(dir / (stem + ".npy"), shape, field.values());

  json meta;
  meta["kind"] = std::string(to_string(field.kind()));
  meta["shape"] = shape;
  meta["n"] = field.size();
  if (!field.is_grid()) {
    json edges = json::array();
    field.for_each_edge([&](VertexId u, VertexId v) { edges.push_back({u, v}); });
    meta["edges"] = std::move(edges);
  }
  write_text_file(dir / (stem + ".json"), meta.dump(2) + "\n");
}

ScalarField read_field_snapshot(const fs::path& dir, const std::string& stem) {
  const auto bytes = read_file_bytes(dir / (stem + ".json"));
  const json meta = json::parse(bytes.begin(), bytes.end());
  const auto kind = parse_domain_kind(meta.at("kind").get<std::string>());
  auto arr = read_npy(dir / (stem + ".npy"));
  if (arr.data.size() != meta.at("n").get<std::size_t>()) throw Error("snapshot size mismatch");
  if (kind == DomainKind::graph) {
    const auto edges = edges_from_json(meta.at("edges"));
    return ScalarField::graph(std::move(arr.data), edges);
  }
  return ScalarField::grid(kind, meta.at("shape").get<std::vector<std::size_t>>(), std::move(arr.data));
}

}  // namespace msaug
