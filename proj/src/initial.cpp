#include "airynet/initial.hpp"

#include <cmath>
#include <numbers>

namespace airynet {

Eigen::VectorXcd plane_wave_state(const DiscreteSystem& sys, int k, double period) {
    const double kappa = 2.0 * std::numbers::pi * k / period;
    Eigen::VectorXcd u(sys.total_nodes);
    for (std::size_t e = 0; e < sys.grids.size(); ++e) {
        const EdgeGrid& g = sys.grids[e];
        for (Eigen::Index j = 0; j < g.nodes.size(); ++j)
            u[sys.offsets[e] + j] = std::exp(Complex(0.0, kappa * g.nodes[j]));
    }
    return u;
}

Eigen::VectorXcd gaussian_state(const DiscreteSystem& sys, double center, double width) {
    if (!(width > 0.0)) throw Error("gaussian width must be positive");
    Eigen::VectorXcd u(sys.total_nodes);
    for (std::size_t e = 0; e < sys.grids.size(); ++e) {
        const EdgeGrid& g = sys.grids[e];
        for (Eigen::Index j = 0; j < g.nodes.size(); ++j) {
            const double d = g.nodes[j] - center;
            u[sys.offsets[e] + j] = std::exp(-d * d / (2.0 * width * width));
        }
    }
    return u;
}

Eigen::VectorXcd lifted_state(const DiscreteSystem& sys,
                              const std::vector<LiftedFunction>& lifts) {
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(sys.total_nodes);
    for (const LiftedFunction& f : lifts) {
        bool found = false;
        for (std::size_t e = 0; e < sys.grids.size(); ++e) {
            if (sys.grids[e].edge_id != f.edge_id()) continue;
            const EdgeGrid& g = sys.grids[e];
            for (Eigen::Index j = 0; j < g.nodes.size(); ++j)
                u[sys.offsets[e] + j] += f.eval(g.nodes[j])[0];
            found = true;
        }
        if (!found) throw Error("lift refers to edge '" + f.edge_id() + "' not in the system");
    }
    return u;
}

Complex dispersion_phase(double alpha, double beta, double kappa, double t) {
    return std::exp(Complex(0.0, (beta * kappa - alpha * kappa * kappa * kappa) * t));
}

}  // namespace airynet
