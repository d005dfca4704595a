#include <doctest.h>

#include "helpers.hpp"
#include "msaug/export.hpp"

using namespace msaug;

TEST_SUITE("export") {

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2) == "2");
  CHECK(format_double(kInfinity) == "inf");
  CHECK(format_double(-kInfinity) == "-inf");
  CHECK(json_number(kInfinity) == "inf");
  CHECK(json_number(1.5) == 1.5);
}

TEST_CASE("diagram csv lists finite pairs then essential classes") {
  const auto f = test::seven();
  CHECK(diagram_csv(sublevel_pairs(f), f) ==
        "birth,death,extremum_vertex,saddle_vertex,kind\n"
        "0,2,4,2,sublevel\n"
        "0,inf,0,,sublevel\n");
  CHECK(diagram_csv(superlevel_pairs(f), f, false) == "2,0,2,4,superlevel\n2,inf,6,,superlevel\n");
}

TEST_CASE("dual json and csv") {
  const auto f = test::seven();
  const auto g = build_dual(segment(f), f, sublevel_pairs(f), superlevel_pairs(f));
  const auto j = dual_json(g);
  CHECK(j["nodes"].size() == 3);
  CHECK(j["edges"][0]["witness"]["kind"] == "sublevel");
  CHECK(j["edges"][1]["witness"]["absorbed_into"] == 6);
  CHECK(dual_edges_csv(g) ==
        "a,b,weight,witness_kind,witness_extremum,witness_saddle,direct\n"
        "0,1,2,sublevel,4,2,1\n"
        "1,2,2,superlevel,2,4,1\n");
}

TEST_CASE("hierarchy json lists every merge") {
  const auto h = build_hierarchy(test::seven(), ThresholdSchedule({0.5, 2.5}));
  const auto j = hierarchy_json(h);
  CHECK(j["levels"].size() == 3);
  CHECK(j["levels"][0]["epsilon"] == 0.0);
  CHECK(j["levels"][2]["regions"].size() == 1);
  CHECK(j["merges"].size() == 6);
  CHECK(j["merges"][5] == json{{"level", 1}, {"from_region", 2}, {"to_region", 0}});
}

TEST_CASE("gnn exports agree") {
  const auto g = to_gnn_graph(build_hierarchy(test::seven(), ThresholdSchedule({0.5, 2.5})), true);
  const auto j = gnn_json(g);
  CHECK(j["nodes"].size() == 4);
  CHECK(j["edges"].size() == 5);
  CHECK(j["feature_names"].size() == 4);
  const auto nodes = gnn_nodes_csv(g);
  CHECK(std::count(nodes.begin(), nodes.end(), '\n') == 5);
  const auto edges = gnn_edges_csv(g);
  CHECK(edges.rfind("src,dst,type,weight\n0,1,intra,2\n", 0) == 0);
  CHECK(edges.find("0,3,inter,\n") != std::string::npos);
}

TEST_CASE("channel metadata") {
  const auto cs = to_channels(build_hierarchy(test::ramp(4), ThresholdSchedule({1.0})));
  const auto j = channel_metadata_json(cs);
  CHECK(j["shape"] == json{4, 4, 4});
  CHECK(j["channels"][3]["content"] == "f_max");
  CHECK(j["channels"][3]["level"] == 1);
}

}
