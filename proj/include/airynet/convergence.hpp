#pragma once

#include <string>
#include <vector>

#include "airynet/evolution.hpp"

namespace airynet {

/// One row of a convergence table: either a spatial sweep entry (varying
/// order at the smallest dt) or a temporal sweep entry (varying dt at the
/// largest order). Errors are Clenshaw-Curtis L2 distances at t_end
/// against the plane-wave solution of the periodic loop, or against a
/// matrix-exponential reference when no analytic solution applies.
struct ConvergenceRow {
    std::string kind;  // "spatial" | "temporal"
    int order = 0;
    double dt = 0.0;
    double error = 0.0;
    double observed_ratio = 0.0;  // error of the previous row / this row
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    std::string to_csv() const;
};

/// Runs the sweep with Crank-Nicolson on the Chebyshev path, plane-wave
/// data with the given wavenumber. Deterministic: identical configuration
/// yields an identical table.
ConvergenceTable convergence_study(const MetricGraph& g, const BoundaryOperator& bc,
                                   int wave_number, const std::vector<int>& orders,
                                   const std::vector<double>& dts, double t_end);

}  // namespace airynet
