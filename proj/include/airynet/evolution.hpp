#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "airynet/discretization.hpp"

namespace airynet {

enum class Scheme { CrankNicolson, MatrixExponential };

const char* scheme_name(Scheme s);
Scheme parse_scheme(const std::string& s);

struct EvolutionConfig {
    double dt = 1e-4;
    double t_end = 0.1;
    Scheme scheme = Scheme::CrankNicolson;
    bool record_traces = true;
};

/// Time series of one run. All series share the same length; norm2 is the
/// Clenshaw-Curtis estimate of the squared L2 norm. The predicted
/// dissipation rate is the boundary-form expression
/// -<x|x>_r + <Lx|Lx>_l with x the right traces; the measured rate is the
/// centered difference of norm2.
struct RunRecord {
    std::vector<double> times;
    std::vector<double> norm2;
    std::vector<double> dissipation_predicted;
    std::vector<double> dissipation_measured;
    std::vector<Eigen::VectorXcd> traces_right;
    std::vector<Eigen::VectorXcd> traces_left;
    double projection_residual = 0.0;  // of the initial state
    double max_constraint_residual = 0.0;
    EvolutionConfig config;
    std::uint64_t graph_fingerprint = 0;
    std::uint64_t bc_fingerprint = 0;

    double norm_ratio() const {
        return norm2.empty() ? 1.0 : std::sqrt(norm2.back() / norm2.front());
    }
};

/// One Crank-Nicolson step c -> (I - dt/2 A)^{-1} (I + dt/2 A) c with the
/// factorization cached across steps. The Cayley transform is exactly
/// unitary for skew-Hermitian A and a contraction for dissipative A.
class CnStepper {
  public:
    CnStepper(const Eigen::MatrixXcd& a, double dt);
    Eigen::VectorXcd step(const Eigen::VectorXcd& c) const;
    double dt() const { return dt_; }

  private:
    double dt_;
    Eigen::MatrixXcd forward_;
    Eigen::PartialPivLU<Eigen::MatrixXcd> backward_;
};

Eigen::VectorXcd step_cn(const DiscreteSystem& sys, const Eigen::VectorXcd& reduced, double dt);

/// Reference propagator exp(dt A_red) c via scaling-and-squaring; the
/// dense exponential is capped at dimension 2000.
Eigen::VectorXcd step_expm(const DiscreteSystem& sys, const Eigen::VectorXcd& reduced, double dt);

/// Raised when a run produces a non-finite state.
class InstabilityError : public Error {
  public:
    InstabilityError(const std::string& what, long step) : Error(what), step_index(step) {}
    long step_index;
};

/// Integrates the constrained system from the given nodal state. The
/// state is mass-orthogonally projected onto the constraint manifold first
/// and the projection residual recorded.
RunRecord run(const DiscreteSystem& sys, const Eigen::VectorXcd& init,
              const EvolutionConfig& config);

/// The exact-skewness reference path for the periodic loop: equispaced
/// nodes and circulant Fourier differentiation matrices, which make
/// A = alpha D3 + beta D1 exactly skew-symmetric with eigenvalues
/// i (beta k - alpha k^3) on the wavenumbers k of the loop. Requires the
/// loop graph with the identity condition and even n.
DiscreteSystem build_fourier_loop(const MetricGraph& g, const BoundaryOperator& bc, int n);

}  // namespace airynet
