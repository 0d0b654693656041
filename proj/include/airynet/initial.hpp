#pragma once

#include <Eigen/Dense>

#include "airynet/discretization.hpp"
#include "airynet/lift.hpp"

namespace airynet {

/// Nodal samples of exp(i kappa x) with kappa = 2 pi k / period; the
/// default period 1 makes integer k periodic on the unit loop.
Eigen::VectorXcd plane_wave_state(const DiscreteSystem& sys, int k, double period = 1.0);

/// Nodal samples of exp(-(x - center)^2 / (2 width^2)) in the global edge
/// coordinate.
Eigen::VectorXcd gaussian_state(const DiscreteSystem& sys, double center, double width);

/// Nodal samples of a sum of boundary lifts.
Eigen::VectorXcd lifted_state(const DiscreteSystem& sys, const std::vector<LiftedFunction>& lifts);

/// The plane-wave phase factor exp(i (beta kappa - alpha kappa^3) t) of the
/// periodic loop.
Complex dispersion_phase(double alpha, double beta, double kappa, double t);

}  // namespace airynet
