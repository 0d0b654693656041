#include <doctest.h>

#include "airynet/boundary.hpp"
#include "airynet/graph.hpp"

using namespace airynet;

namespace {

MetricGraph loop_graph() {
    Edge e{"e1", 0.0, 1.0, "v", "v", 1.0, 0.0};
    return MetricGraph({"v"}, {e});
}

}  // namespace

TEST_CASE("loop graph validates") {
    const auto rep = validate_graph(loop_graph());
    CHECK(rep.ok());
    CHECK(rep.min_length == doctest::Approx(1.0));
}

TEST_CASE("reversed interval is a violation") {
    Edge e{"e1", 1.0, 0.0, "v", "v", 1.0, 0.0};
    const auto rep = validate_graph(MetricGraph({"v"}, {e}));
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.find("a_e < b_e fails") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("negative alpha is a violation") {
    Edge e{"e1", 0.0, 1.0, "v", "v", -1.0, 0.0};
    const auto rep = validate_graph(MetricGraph({"v"}, {e}));
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.find("alpha must be positive") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("dangling endpoint and duplicate ids are violations") {
    Edge e1{"e1", 0.0, 1.0, std::nullopt, "v", 1.0, 0.0};
    Edge e2{"e1", 0.0, 1.0, "v", "v", 1.0, 0.0};
    const auto rep = validate_graph(MetricGraph({"v"}, {e1, e2}));
    CHECK(rep.violations.size() >= 2);
}

TEST_CASE("incidence of the loop") {
    const auto inc = incidence(loop_graph(), "v");
    REQUIRE(inc.left.size() == 1);
    REQUIRE(inc.right.size() == 1);
    CHECK(inc.left[0] == 0);
    CHECK(inc.right[0] == 0);
    CHECK_THROWS_AS(incidence(loop_graph(), "nope"), Error);
}

TEST_CASE("incidence of an all-outgoing star") {
    const auto cs = builtin("star(0,3)");
    const auto inc = incidence(cs.graph, "v");
    CHECK(inc.left.size() == 3);
    CHECK(inc.right.empty());
}

TEST_CASE("incidence of the two-half-line graph") {
    const auto cs = builtin("two_halflines_unitary");
    const auto inc = incidence(cs.graph, "v");
    REQUIRE(inc.left.size() == 1);
    REQUIRE(inc.right.size() == 1);
    CHECK(cs.graph.edge(inc.left[0]).id == "e2");   // the outgoing [0, inf)
    CHECK(cs.graph.edge(inc.right[0]).id == "e1");  // the incoming (-inf, 0]
}

TEST_CASE("trace layout of the loop") {
    const auto layout = trace_layout(loop_graph(), Side::Left);
    REQUIRE(layout.dimension() == 3);
    for (int k = 0; k < 3; ++k) {
        CHECK(layout.entries[k].edge_index == 0);
        CHECK(layout.entries[k].component == k);
    }
}

TEST_CASE("trace layout orders edge blocks by id") {
    Edge e1{"a_edge", 0.0, 1.0, "v", "w", 1.0, 0.0};
    Edge e2{"b_edge", 0.0, 1.0, "w", "v", 2.0, 0.0};
    MetricGraph g({"v", "w"}, {e2, e1});  // intentionally unsorted input
    const auto layout = trace_layout(g, Side::Right);
    REQUIRE(layout.dimension() == 6);
    CHECK(g.edge(layout.entries[0].edge_index).id == "a_edge");
    CHECK(g.edge(layout.entries[3].edge_index).id == "b_edge");
}

TEST_CASE("half-line graph has a 3-dimensional right layout") {
    const auto cs = builtin("two_halflines_unitary");
    CHECK(trace_layout(cs.graph, Side::Right).dimension() == 3);
    CHECK(trace_layout(cs.graph, Side::Left).dimension() == 3);
}

TEST_CASE("incidence partitions the endpoint sets") {
    const auto cs = builtin("star(2,3)");
    std::size_t left_total = 0, right_total = 0;
    for (const auto& v : cs.graph.vertices()) {
        const auto inc = incidence(cs.graph, v);
        left_total += inc.left.size();
        right_total += inc.right.size();
    }
    CHECK(left_total == cs.graph.left_edges().size());
    CHECK(right_total == cs.graph.right_edges().size());
}

TEST_CASE("layout position round-trips") {
    const auto cs = builtin("star(2,2)");
    for (Side side : {Side::Left, Side::Right}) {
        const auto layout = trace_layout(cs.graph, side);
        for (std::size_t p = 0; p < layout.dimension(); ++p) {
            const auto& ent = layout.entries[p];
            CHECK(layout.position(ent.edge_index, ent.component) == p);
        }
    }
}

TEST_CASE("every finite edge appears on both sides") {
    Edge e1{"e1", 0.0, 1.0, "v", "w", 1.0, 0.0};
    Edge e2{"e2", 0.0, 2.0, "w", "v", 1.0, 0.0};
    MetricGraph g({"v", "w"}, {e1, e2});
    CHECK(g.left_edges().size() == g.edges().size());
    CHECK(g.right_edges().size() == g.edges().size());
}
