#include <doctest.h>

#include "airynet/io.hpp"

using namespace airynet;

TEST_CASE("graph json round trip") {
    const auto j = io::json::parse(R"({
      "vertices": ["v"],
      "edges": [{"id": "e1", "a": 0.0, "b": 1.0, "from": "v", "to": "v",
                 "alpha": 1.0, "beta": 0.0}]
    })");
    const MetricGraph g = io::graph_from_json(j);
    CHECK(g.vertices().size() == 1);
    CHECK(g.edges().size() == 1);
    CHECK(validate_graph(g).ok());
    const MetricGraph g2 = io::graph_from_json(io::to_json(g));
    CHECK(io::to_json(g2) == io::to_json(g));
}

TEST_CASE("semi-infinite endpoints parse from strings") {
    const auto j = io::json::parse(R"({
      "vertices": ["v"],
      "edges": [{"id": "e1", "a": "-inf", "b": 0.0, "to": "v"},
                {"id": "e2", "a": 0.0, "b": "inf", "from": "v"}]
    })");
    const MetricGraph g = io::graph_from_json(j);
    CHECK_FALSE(g.edge(0).left_finite());
    CHECK_FALSE(g.edge(1).right_finite());
    CHECK(validate_graph(g).ok());
    const auto round = io::to_json(g);
    CHECK(round["edges"][0]["a"] == "-inf");
    CHECK(round["edges"][1]["b"] == "inf");
}

TEST_CASE("unknown fields are rejected") {
    const auto j = io::json::parse(R"({
      "vertices": ["v"], "edges": [], "extra": 1
    })");
    CHECK_THROWS_WITH_AS(io::graph_from_json(j), doctest::Contains("unknown field"), Error);
    const auto j2 = io::json::parse(R"({
      "vertices": ["v"],
      "edges": [{"id": "e1", "a": 0.0, "b": 1.0, "from": "v", "to": "v", "gamma": 2}]
    })");
    CHECK_THROWS_WITH_AS(io::graph_from_json(j2), doctest::Contains("gamma"), Error);
}

TEST_CASE("boundary condition json round trip") {
    BoundaryOperator bc;
    Eigen::MatrixXcd block(3, 3);
    block.setZero();
    block(0, 0) = Complex(1.0, -2.0);
    block(2, 1) = Complex(0.0, 3.5);
    bc.vertex_blocks["v"] = block;
    const auto j = io::to_json(bc);
    const BoundaryOperator bc2 = io::bc_from_json(j);
    CHECK((bc2.vertex_blocks.at("v") - block).norm() == 0.0);
    CHECK(io::to_json(bc2) == j);
}

TEST_CASE("boundary condition entry count is checked") {
    const auto j = io::json::parse(R"({
      "vertex_blocks": {"v": {"rows": 3, "cols": 3, "entries": [[1, 0]]}}
    })");
    CHECK_THROWS_WITH_AS(io::bc_from_json(j), doctest::Contains("entry count"), Error);
}

TEST_CASE("degenerate block shapes survive the round trip") {
    BoundaryOperator bc;
    bc.vertex_blocks["w"] = Eigen::MatrixXcd::Zero(3, 0);
    const BoundaryOperator bc2 = io::bc_from_json(io::to_json(bc));
    CHECK(bc2.vertex_blocks.at("w").rows() == 3);
    CHECK(bc2.vertex_blocks.at("w").cols() == 0);
}

TEST_CASE("json serialization is deterministic") {
    const auto cs = builtin("two_halflines_unitary");
    CHECK(io::to_json(cs.graph).dump() == io::to_json(cs.graph).dump());
    CHECK(io::to_json(cs.bc).dump() == io::to_json(cs.bc).dump());
}

TEST_CASE("run record serializers carry the format tag") {
    RunRecord rec;
    rec.times = {0.0, 0.1};
    rec.norm2 = {1.0, 0.9};
    rec.dissipation_predicted = {-1.0, -0.9};
    rec.dissipation_measured = {-1.0, -1.0};
    rec.traces_right = {Eigen::VectorXcd::Zero(3), Eigen::VectorXcd::Zero(3)};
    rec.traces_left = rec.traces_right;
    const std::string csv = io::run_record_to_csv(rec);
    CHECK(csv.rfind("# airynet-run-v1", 0) == 0);
    CHECK(csv.find("tr_r2_im") != std::string::npos);
    const auto j = io::run_record_to_json(rec);
    CHECK(j["format"] == "airynet-run-v1");
    CHECK(j["norm2"].size() == 2);
}

TEST_CASE("matrix market dump lists nonzeros with 1-based indices") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 3);
    m(0, 2) = Complex(1.5, -0.5);
    m(1, 0) = Complex(0.0, 2.0);
    const std::string mm = io::to_matrix_market(m, "test");
    CHECK(mm.rfind("%%MatrixMarket matrix coordinate complex general", 0) == 0);
    CHECK(mm.find("2 3 2") != std::string::npos);
    CHECK(mm.find("2 1 0 2") != std::string::npos);
    CHECK(mm.find("1 3 1.5 -0.5") != std::string::npos);
}

TEST_CASE("classification report serializes certificates") {
    const auto cs = builtin("loop_diag(2,0.5)");
    const auto rep = classify(cs.graph, cs.bc);
    const auto j = io::to_json(rep);
    CHECK(j["global"]["verdict"] == "bi_contractive");
    CHECK(j["per_vertex"]["v"]["verdict"] == "bi_contractive");
    CHECK(j["agrees"] == true);
    CHECK(j["global"].contains("residual_norms"));
    CHECK(j["global"].contains("min_eigenvalue"));
    CHECK(j["global"].contains("tolerance"));
}
