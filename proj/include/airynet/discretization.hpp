#pragma once

#include <Eigen/Dense>

#include "airynet/boundary.hpp"
#include "airynet/krein.hpp"

namespace airynet {

/// Collocation grid of one edge: order+1 Chebyshev-Gauss-Lobatto nodes on
/// [a_e, b_e] with dense differentiation matrices, Clenshaw-Curtis
/// quadrature weights and the exact Gram (mass) matrix of the nodal
/// Lagrange basis. Built once, immutable.
struct EdgeGrid {
    std::string edge_id;
    int order = 0;  // polynomial order; order+1 nodes
    Eigen::VectorXd nodes;
    Eigen::MatrixXd d1, d2, d3;
    Eigen::VectorXd weights;  // Clenshaw-Curtis, sums to the edge length
    Eigen::MatrixXd mass;     // exact Lagrange Gram matrix
};

/// Builds the grid and validates differentiation exactness on monomials up
/// to degree 3 and the quadrature weight sum. Requires a finite edge and
/// order >= 8.
EdgeGrid build_grid(const Edge& e, int order);

/// The assembled constrained system for one graph + boundary condition:
/// a block-diagonal free generator, trace extraction matrices, the
/// constraint C = T_l - L T_r, a mass-orthonormal basis Z of null(C) and
/// the reduced generator A_red = Z^dagger A_free Z. States are vectors of
/// nodal values concatenated in edge layout order.
struct DiscreteSystem {
    MetricGraph graph;
    BoundaryOperator bc;
    std::vector<EdgeGrid> grids;          // in edge layout order
    std::vector<Eigen::Index> offsets;    // state offset of each edge block
    Eigen::Index total_nodes = 0;

    Eigen::MatrixXcd a_free;       // alpha D3 + beta D1 per edge
    Eigen::MatrixXcd t_left;       // 3|E_l| x N trace extraction
    Eigen::MatrixXcd t_right;      // 3|E_r| x N
    Eigen::MatrixXcd l_global;     // assembled boundary operator
    Eigen::MatrixXcd constraint;   // C = t_left - l_global t_right
    Eigen::MatrixXcd basis;        // Z, mass-orthonormal: Z^* M Z = I
    Eigen::MatrixXcd a_red;        // Z^* M A_free Z

    Eigen::VectorXd quad_weights;  // global Clenshaw-Curtis weights
    Eigen::MatrixXd mass;          // global block-diagonal Gram matrix
    KreinForm form_left, form_right;
    bool fourier = false;          // built by the periodic Fourier path

    /// Quadrature estimate of the squared L2 norm of a nodal state.
    double norm2(const Eigen::VectorXcd& state) const;
    /// Mass-weighted projection of a state onto the constraint manifold,
    /// returned in reduced coordinates.
    Eigen::VectorXcd reduce(const Eigen::VectorXcd& state) const;
    Eigen::VectorXcd expand(const Eigen::VectorXcd& reduced) const { return basis * reduced; }
};

/// Extracts the boundary traces of a nodal state: per edge the value and
/// the first and second derivative at a_e (left) and b_e (right), read off
/// the differentiation-matrix endpoint rows.
struct Traces {
    TraceVector right;
    TraceVector left;
};
Traces discrete_traces(const DiscreteSystem& sys, const Eigen::VectorXcd& state);

/// Builds the constrained generator. All edges must be finite (truncate
/// semi-infinite ones first); `order` applies to every edge unless
/// `per_edge_order` overrides it. Throws if the constraint matrix is
/// rank-deficient, naming the first vertex whose rows are dependent.
DiscreteSystem build_generator(const MetricGraph& g, const BoundaryOperator& bc, int order);
DiscreteSystem build_generator(const MetricGraph& g, const BoundaryOperator& bc,
                               const std::map<std::string, int>& per_edge_order,
                               int default_order);

}  // namespace airynet
