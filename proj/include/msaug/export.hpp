#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "msaug/encode.hpp"
#include "msaug/hierarchy.hpp"

namespace msaug {

using json = nlohmann::json;

/// Shortest round-trip text for a double; "inf" / "-inf" / "nan" otherwise.
std::string format_double(double x);

/// JSON numbers cannot hold infinity; non-finite values become strings.
json json_number(double x);

/// [{id, min_vertex, max_vertex, f_min, f_max}]
json region_table_json(const Segmentation& seg, const ScalarField& field);

/// {nodes: [{id, min, max, f_min, f_max, size}],
///  edges: [{a, b, weight, witness: {extremum, saddle, absorbed_into, kind, direct} | null}]}
json dual_json(const DualGraph& g);
std::string dual_edges_csv(const DualGraph& g);

/// {levels: [{epsilon, regions, dual_edges}], merges: [{level, from_region, to_region}]}
json hierarchy_json(const Hierarchy& h);

/// birth,death,extremum_vertex,saddle_vertex,kind with raw f values;
/// essential classes last, with death = inf.
std::string diagram_csv(const PersistencePairSet& pairs, const ScalarField& field, bool header = true);

json gnn_json(const GnnGraph& g);
std::string gnn_nodes_csv(const GnnGraph& g);
std::string gnn_edges_csv(const GnnGraph& g);

json channel_metadata_json(const ChannelStack& cs);

/// Region ids shaped like the domain (int32), for the segmentation export.
std::vector<std::int32_t> region_id_array(const Segmentation& seg);

std::string dump_json(const json& j);

}  // namespace msaug
