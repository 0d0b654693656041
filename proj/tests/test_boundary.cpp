#include <doctest.h>

#include <cmath>

#include "airynet/boundary.hpp"
#include "airynet/random.hpp"

using namespace airynet;

namespace {

MetricGraph loop_graph(double alpha = 1.0, double beta = 0.0) {
    Edge e{"e1", 0.0, 1.0, "v", "v", alpha, beta};
    return MetricGraph({"v"}, {e});
}

Eigen::MatrixXcd diag3(double a, double b, double c) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
    m.diagonal() << a, b, c;
    return m;
}

}  // namespace

TEST_CASE("assemble_global on the loop is the block itself") {
    BoundaryOperator bc;
    bc.vertex_blocks["v"] = Eigen::MatrixXcd::Identity(3, 3);
    const Eigen::MatrixXcd l = assemble_global(loop_graph(), bc);
    CHECK((l - Eigen::MatrixXcd::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("assemble_global scatters two independent vertex blocks") {
    // two-vertex cycle: e1 from v to w, e2 from w to v
    Edge e1{"e1", 0.0, 1.0, "v", "w", 1.0, 0.0};
    Edge e2{"e2", 0.0, 1.0, "w", "v", 1.0, 0.0};
    MetricGraph g({"v", "w"}, {e1, e2});
    BoundaryOperator bc;
    Rng rng(9);
    bc.vertex_blocks["v"] = rng.complex_gaussian(3, 3);  // e1 left <- e2 right
    bc.vertex_blocks["w"] = rng.complex_gaussian(3, 3);  // e2 left <- e1 right
    const Eigen::MatrixXcd l = assemble_global(g, bc);
    REQUIRE(l.rows() == 6);
    REQUIRE(l.cols() == 6);
    // left layout: [e1, e2]; right layout: [e1, e2]
    CHECK((l.block<3, 3>(0, 3) - bc.vertex_blocks["v"]).norm() == 0.0);
    CHECK((l.block<3, 3>(3, 0) - bc.vertex_blocks["w"]).norm() == 0.0);
    CHECK(l.block<3, 3>(0, 0).norm() == 0.0);  // off-block entries exactly zero
    CHECK(l.block<3, 3>(3, 3).norm() == 0.0);
}

TEST_CASE("assemble_global reports shape mismatches by vertex") {
    BoundaryOperator bc;
    bc.vertex_blocks["v"] = Eigen::MatrixXcd::Identity(2, 2);
    CHECK_THROWS_WITH_AS(assemble_global(loop_graph(), bc),
                         doctest::Contains("vertex 'v'"), Error);
}

TEST_CASE("classify the periodic loop as unitary") {
    const auto cs = builtin("loop_periodic");
    const auto rep = classify(cs.graph, cs.bc);
    CHECK(rep.combined_verdict == Verdict::Unitary);
    CHECK(rep.global.verdict == Verdict::Unitary);
    CHECK(rep.agrees);
}

TEST_CASE("classify the half-line example as unitary") {
    const auto cs = builtin("two_halflines_unitary");
    const auto rep = classify(cs.graph, cs.bc);
    CHECK(rep.combined_verdict == Verdict::Unitary);
    CHECK(rep.agrees);
}

TEST_CASE("classify loop_diag(2, 0.5) as strictly bi-contractive") {
    const auto cs = builtin("loop_diag(2,0.5)");
    const auto rep = classify(cs.graph, cs.bc);
    CHECK(rep.combined_verdict == Verdict::BiContractive);
    CHECK(rep.agrees);
    const auto& block = rep.per_vertex.at("v");
    CHECK(block.contraction.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_FALSE(block.unitary.unitary);
}

TEST_CASE("classify the doubled identity as neither") {
    BoundaryOperator bc;
    bc.vertex_blocks["v"] = 2.0 * Eigen::MatrixXcd::Identity(3, 3);
    const auto rep = classify(loop_graph(), bc);
    CHECK(rep.combined_verdict == Verdict::Neither);
    CHECK(rep.agrees);
}

TEST_CASE("loop_diag is bi-contractive exactly for |b| <= 1") {
    for (double a : {0.5, 1.0, 2.0})
        for (double b : {0.0, 0.5, -0.5, 1.0, -1.0, 1.001, -1.001}) {
            BoundaryOperator bc;
            bc.vertex_blocks["v"] = diag3(a, b, 1.0 / a);
            const auto rep = classify(loop_graph(), bc);
            if (std::abs(b) < 1.0)
                CHECK(rep.combined_verdict == Verdict::BiContractive);
            else if (std::abs(b) == 1.0)
                CHECK(rep.combined_verdict == Verdict::Unitary);
            else
                CHECK(rep.combined_verdict == Verdict::Neither);
        }
}

TEST_CASE("sampled unitaries pass the checker across seeds and graphs") {
    const auto star = builtin("star(2,2)");
    const KreinForm fr = build_form(star.graph, Side::Right);
    const KreinForm fl = build_form(star.graph, Side::Left);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Eigen::MatrixXcd l = sample_unitary(star.graph, "v", seed);
        CHECK(is_krein_unitary(fr, fl, l, 1e-10).unitary);
    }
}

TEST_CASE("sampling is deterministic per seed") {
    const MetricGraph g = loop_graph();
    const Eigen::MatrixXcd l1 = sample_unitary(g, "v", 7);
    const Eigen::MatrixXcd l2 = sample_unitary(g, "v", 7);
    CHECK((l1 - l2).norm() == 0.0);
    const Eigen::MatrixXcd l3 = sample_unitary(g, "v", 8);
    CHECK((l1 - l3).norm() > 0.0);
}

TEST_CASE("sampling an unbalanced vertex fails with the signature explanation") {
    const auto star = builtin("star(0,3)");
    CHECK_THROWS_WITH_AS(sample_unitary(star.graph, "v", 1),
                         doctest::Contains("dim mismatch 0 vs 9"), Error);
    CHECK_THROWS_AS(sample_bicontraction(star.graph, "v", 1, 0.5), Error);
}

TEST_CASE("bi-contraction sampler round-trips through classify") {
    const MetricGraph g = loop_graph();
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        BoundaryOperator bc;
        bc.vertex_blocks["v"] = sample_bicontraction(g, "v", seed, 1.0);
        const auto rep = classify(g, bc);
        CHECK(rep.combined_verdict == Verdict::BiContractive);
        CHECK(rep.per_vertex.at("v").contraction.min_eigenvalue > 1e-3);
    }
}

TEST_CASE("strictness zero reproduces a Krein unitary") {
    const MetricGraph g = loop_graph();
    BoundaryOperator bc;
    bc.vertex_blocks["v"] = sample_bicontraction(g, "v", 3, 0.0);
    CHECK(classify(g, bc).combined_verdict == Verdict::Unitary);
}

TEST_CASE("products of bi-contractions stay bi-contractive") {
    const MetricGraph g = loop_graph();
    const KreinForm fr = build_form(g, Side::Right);
    const KreinForm fl = build_form(g, Side::Left);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Eigen::MatrixXcd m1 = sample_bicontraction(g, "v", 2 * seed, 0.7);
        const Eigen::MatrixXcd m2 = sample_bicontraction(g, "v", 2 * seed + 1, 0.3);
        const Eigen::MatrixXcd prod = m1 * m2;  // forms coincide on the loop
        CHECK(is_krein_contractive(fr, fl, prod).contractive);
        CHECK(is_krein_contractive(fl, fr, krein_adjoint(fr, fl, prod)).contractive);
    }
}

TEST_CASE("local and global classification agree on random two-vertex graphs") {
    Rng rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
        // Two vertices joined by two edges; orientations drawn at random.
        const bool flip1 = rng.uniform() < 0.5;
        const bool flip2 = rng.uniform() < 0.5;
        Edge e1{"e1", 0.0, 1.0 + rng.uniform(), flip1 ? "w" : "v", flip1 ? "v" : "w",
                0.3 + rng.uniform(), -1.0 + 2.0 * rng.uniform()};
        Edge e2{"e2", 0.0, 1.0 + rng.uniform(), flip2 ? "v" : "w", flip2 ? "w" : "v",
                0.3 + rng.uniform(), -1.0 + 2.0 * rng.uniform()};
        MetricGraph g({"v", "w"}, {e1, e2});
        BoundaryOperator bc;
        for (const auto& v : g.vertices()) {
            const Incidence inc = incidence(g, v);
            const int mode = static_cast<int>(rng.uniform() * 3);
            const Eigen::Index rows = 3 * inc.left.size(), cols = 3 * inc.right.size();
            if (mode == 0 && rows == cols && rows > 0)
                bc.vertex_blocks[v] = sample_unitary(g, v, trial * 10 + 1);
            else if (mode == 1 && rows == cols && rows > 0)
                bc.vertex_blocks[v] = sample_bicontraction(g, v, trial * 10 + 2, 0.8);
            else
                bc.vertex_blocks[v] = rng.complex_gaussian(rows, cols);
        }
        const auto rep = classify(g, bc);
        CHECK(rep.agrees);
        ++checked;
    }
    CHECK(checked == 50);
}

TEST_CASE("builtin two_halflines carries the expected matrix") {
    const auto cs = builtin("two_halflines_unitary");
    const auto& l = cs.bc.vertex_blocks.at("v");
    CHECK(l(1, 0) == Complex(std::sqrt(2.0), 0));
    CHECK(l(2, 1) == Complex(std::sqrt(2.0), 0));
    CHECK(l(0, 0) == Complex(1, 0));
}

TEST_CASE("builtin loop_diag rejects a = 0 and unknown names are errors") {
    CHECK_THROWS_AS(builtin("loop_diag(0,1)"), Error);
    CHECK_THROWS_AS(builtin("no_such_case"), Error);
}

TEST_CASE("balanced star builtin ships a unitary block") {
    const auto cs = builtin("star(2,2)");
    const auto rep = classify(cs.graph, cs.bc);
    CHECK(rep.combined_verdict == Verdict::Unitary);
}

TEST_CASE("truncation closes the half-line pair with an absorbing vertex") {
    const auto cs = builtin("two_halflines_unitary");
    const auto trunc = truncate_halflines(cs.graph, cs.bc, 10.0);
    REQUIRE(trunc.graph.vertices().size() == 2);
    for (const Edge& e : trunc.graph.edges()) {
        CHECK(e.left_finite());
        CHECK(e.right_finite());
        CHECK(e.length() == doctest::Approx(10.0));
    }
    const auto rep = classify(trunc.graph, trunc.bc);
    CHECK(rep.combined_verdict == Verdict::BiContractive);
    CHECK(rep.per_vertex.at("v").verdict == Verdict::Unitary);
    CHECK(rep.per_vertex.at("__far_0").verdict == Verdict::BiContractive);
}

TEST_CASE("truncation of an all-outgoing star is rejected") {
    // outgoing half-lines truncate to dangling right endpoints
    const auto cs = builtin("star(0,2)");
    CHECK_THROWS_WITH_AS(truncate_halflines(cs.graph, cs.bc, 5.0),
                         doctest::Contains("dangling right endpoint"), Error);
}

TEST_CASE("truncating leftover incoming ends produces zero-trace closures") {
    const auto cs = builtin("star(2,1)");
    const auto trunc = truncate_halflines(cs.graph, cs.bc, 5.0);
    const auto rep = classify(trunc.graph, trunc.bc);
    // the lone far end gets a 3x0 block: contractive but not adjoint-contractive
    CHECK(rep.per_vertex.at("__far_1").verdict == Verdict::ContractiveOnly);
}
