#include <doctest.h>

#include "airynet/convergence.hpp"

using namespace airynet;

TEST_CASE("temporal sweep shows second order against the analytic wave") {
    const auto cs = builtin("loop_periodic");
    const ConvergenceTable table =
        convergence_study(cs.graph, cs.bc, 1, {16, 24, 32}, {4e-4, 2e-4, 1e-4}, 0.02);
    REQUIRE(table.rows.size() == 6);
    // spatial rows sit at the time-error floor and must not grow
    for (int i = 1; i < 3; ++i)
        CHECK(table.rows[i].error <= table.rows[i - 1].error * 1.01);
    // halving dt quarters the error
    for (int i = 4; i < 6; ++i) {
        CHECK(table.rows[i].observed_ratio >= 3.5);
        CHECK(table.rows[i].observed_ratio <= 4.5);
    }
}

TEST_CASE("identical configurations produce identical tables") {
    const auto cs = builtin("loop_periodic");
    const auto t1 = convergence_study(cs.graph, cs.bc, 1, {16, 24}, {2e-4, 1e-4}, 0.01);
    const auto t2 = convergence_study(cs.graph, cs.bc, 1, {16, 24}, {2e-4, 1e-4}, 0.01);
    REQUIRE(t1.rows.size() == t2.rows.size());
    for (std::size_t i = 0; i < t1.rows.size(); ++i) {
        CHECK(t1.rows[i].error == t2.rows[i].error);
        CHECK(t1.rows[i].dt == t2.rows[i].dt);
    }
    CHECK(t1.to_csv() == t2.to_csv());
}

TEST_CASE("csv output carries the header and one line per row") {
    const auto cs = builtin("loop_periodic");
    const auto t = convergence_study(cs.graph, cs.bc, 1, {16}, {1e-3}, 0.005);
    const std::string csv = t.to_csv();
    CHECK(csv.rfind("# airynet-convergence-v1", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // comment + header + 2 rows
}
