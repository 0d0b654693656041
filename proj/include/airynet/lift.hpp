#pragma once

#include <array>
#include <vector>

#include "airynet/krein.hpp"

namespace airynet {

/// The degree-7 polynomial blend with a C^3 join: s(0) = 0, s(1) = 1 and
/// vanishing first to third derivatives at both ends. Returns s and its
/// first three derivatives.
std::array<double, 4> smoothstep7(double t);

/// A boundary lift on one edge: u(x) = (t0 + t1 xi + t2/2 xi^2) phi(xi)
/// in the distance xi from the chosen endpoint, where phi is 1 on the
/// plateau [0, plateau_end], blends down over [plateau_end, cutoff_end]
/// and vanishes identically beyond. The cutoff sits at half the support
/// window s = min(l_min, edge length), so lifts from opposite endpoints of
/// an edge never overlap. The traces at the chosen endpoint equal
/// (t0, t1, t2) exactly and all traces at the far endpoint vanish.
class LiftedFunction {
  public:
    LiftedFunction(const Edge& edge, Side side, std::array<Complex, 3> triple,
                   double support_window);

    const std::string& edge_id() const { return edge_id_; }
    Side side() const { return side_; }
    const std::array<Complex, 3>& triple() const { return triple_; }
    double plateau_end() const { return plateau_end_; }
    double cutoff_end() const { return cutoff_end_; }

    /// u, u', u'', u''' at a point of the edge interval.
    std::array<Complex, 4> eval(double x) const;

    /// Panel boundaries for exact piecewise-polynomial quadrature, in edge
    /// coordinates.
    std::vector<double> knots() const;

  private:
    std::string edge_id_;
    Side side_;
    std::array<Complex, 3> triple_;
    double a_, b_;
    double plateau_end_, cutoff_end_;  // distances from the chosen endpoint
};

/// Lifts a trace vector into per-edge functions: one LiftedFunction per
/// edge of the side, carrying that edge's (t0, t1, t2) from `values`.
std::vector<LiftedFunction> lift_traces(const MetricGraph& g, Side side,
                                        const TraceVector& values);

/// Quadrature check of the boundary identity
///   <u|Av> + <Au|v> = -<B_r Tr_r u, Tr_r v> + <B_l Tr_l u, Tr_l v>
/// with A = alpha d^3 + beta d per edge. The left side is integrated with
/// composite Gauss-Legendre panels split at both functions' knots; the
/// right side uses the exact traces. Returns |lhs - rhs| / (1 + |lhs|).
/// Orders below 4 are rejected.
double check_greens_identity(const MetricGraph& g, const LiftedFunction& u,
                             const LiftedFunction& v, int quad_order);

/// Both sides of the identity, for tests that pin their values.
struct GreensIdentity {
    Complex lhs = 0.0;
    Complex rhs = 0.0;
    double residual = 0.0;
};
GreensIdentity greens_identity_parts(const MetricGraph& g, const LiftedFunction& u,
                                     const LiftedFunction& v, int quad_order);

}  // namespace airynet
