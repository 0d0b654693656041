#pragma once

#include <Eigen/Dense>

namespace airynet::spectral {

/// Chebyshev-Gauss-Lobatto nodes of the given polynomial order, mapped to
/// [a, b]. Returns order+1 strictly increasing points including both
/// endpoints.
Eigen::VectorXd cgl_nodes(int order, double a, double b);

/// Barycentric weights matching cgl_nodes (up to an irrelevant common
/// factor).
Eigen::VectorXd cgl_barycentric_weights(int order);

/// Differentiation matrices of orders 1..kmax on arbitrary distinct nodes,
/// built from barycentric weights with the diagonal fixed by the
/// negative-sum rule. Exact for polynomials up to the grid order.
std::vector<Eigen::MatrixXd> differentiation_matrices(const Eigen::VectorXd& nodes,
                                                      const Eigen::VectorXd& bary,
                                                      int kmax);

/// Clenshaw-Curtis quadrature weights on the order+1 CGL nodes mapped to
/// [a, b]; the weights sum to b - a.
Eigen::VectorXd clenshaw_curtis_weights(int order, double a, double b);

/// Gauss-Legendre rule with n points on [a, b] (Golub-Welsch).
struct Quadrature {
    Eigen::VectorXd points;
    Eigen::VectorXd weights;
};
Quadrature gauss_legendre(int n, double a, double b);

/// Values of the Lagrange cardinal functions of the node set at the query
/// points: out(q, j) = l_j(x_q). Barycentric evaluation.
Eigen::MatrixXd lagrange_values(const Eigen::VectorXd& nodes, const Eigen::VectorXd& bary,
                                const Eigen::VectorXd& queries);

/// Exact Gram matrix of the Lagrange basis on [a, b],
/// M(i,j) = integral of l_i * l_j. Symmetric positive definite; computed
/// with a Gauss rule that integrates the degree-2*order products exactly.
Eigen::MatrixXd lagrange_gram(const Eigen::VectorXd& nodes, const Eigen::VectorXd& bary,
                              double a, double b);

/// Fourier differentiation matrix of odd order k on n equispaced points of
/// a periodic interval of the given length (n even). Exactly
/// skew-symmetric.
Eigen::MatrixXd fourier_diff(int n, double length, int k);

}  // namespace airynet::spectral
