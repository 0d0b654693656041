#include <doctest.h>

#include <cmath>
#include <numbers>

#include "airynet/graph.hpp"
#include "airynet/spectral.hpp"

using namespace airynet;

TEST_CASE("lobatto nodes include the endpoints and increase") {
    const auto x = spectral::cgl_nodes(8, 0.0, 1.0);
    REQUIRE(x.size() == 9);
    CHECK(x[0] == 0.0);
    CHECK(x[8] == 1.0);
    for (int i = 0; i + 1 < x.size(); ++i) CHECK(x[i] < x[i + 1]);
}

TEST_CASE("differentiation matrices are exact on monomials") {
    const int order = 16;
    const auto x = spectral::cgl_nodes(order, 0.0, 1.0);
    const auto bary = spectral::cgl_barycentric_weights(order);
    const auto d = spectral::differentiation_matrices(x, bary, 3);
    const Eigen::VectorXd x3 = x.array().cube();
    CHECK(((d[0] * x3 - 3.0 * x.array().square().matrix()).cwiseAbs().maxCoeff()) < 1e-12);
    CHECK(((d[1] * x3 - 6.0 * x).cwiseAbs().maxCoeff()) < 1e-11);
    // relative to the exact constant value 6
    CHECK(((d[2] * x3).array() - 6.0).abs().maxCoeff() / 6.0 < 1e-10);
}

TEST_CASE("clenshaw-curtis integrates polynomials of the grid degree") {
    const int order = 12;
    const auto x = spectral::cgl_nodes(order, 0.0, 1.0);
    const auto w = spectral::clenshaw_curtis_weights(order, 0.0, 1.0);
    CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(w.minCoeff() > 0.0);
    // degree-12 monomial: integral over [0,1] is 1/13
    const Eigen::VectorXd p = x.array().pow(12);
    CHECK(std::abs(w.dot(p) - 1.0 / 13.0) < 1e-14);
}

TEST_CASE("gauss-legendre integrates high-degree polynomials exactly") {
    const auto q = spectral::gauss_legendre(10, -1.0, 2.0);
    double total = 0.0;
    for (int i = 0; i < q.points.size(); ++i)
        total += q.weights[i] * std::pow(q.points[i], 19);
    const double exact = (std::pow(2.0, 20) - std::pow(-1.0, 20)) / 20.0;
    CHECK(total == doctest::Approx(exact).epsilon(1e-13));
}

TEST_CASE("gram matrix reproduces exact products") {
    const int order = 10;
    const auto x = spectral::cgl_nodes(order, 0.0, 2.0);
    const auto bary = spectral::cgl_barycentric_weights(order);
    const auto m = spectral::lagrange_gram(x, bary, 0.0, 2.0);
    // u = x^3, v = x^4: integral of x^7 over [0,2] = 2^8/8 = 32
    const Eigen::VectorXd u = x.array().pow(3);
    const Eigen::VectorXd v = x.array().pow(4);
    CHECK(u.dot(m * v) == doctest::Approx(32.0).epsilon(1e-12));
    CHECK((m - m.transpose()).norm() < 1e-12 * m.norm());
}

TEST_CASE("fourier differentiation is exactly skew and diagonalized by waves") {
    const int n = 32;
    const auto d1 = spectral::fourier_diff(n, 1.0, 1);
    const auto d3 = spectral::fourier_diff(n, 1.0, 3);
    CHECK((d1 + d1.transpose()).norm() < 1e-12 * d1.norm());
    CHECK((d3 + d3.transpose()).norm() < 1e-12 * d3.norm());
    // e^{2 pi i x} is an eigenvector with eigenvalue 2 pi i (resp. (2 pi i)^3)
    Eigen::VectorXcd wave(n);
    for (int j = 0; j < n; ++j)
        wave[j] = std::exp(Complex(0.0, 2.0 * std::numbers::pi * j / n));
    const double kappa = 2.0 * std::numbers::pi;
    CHECK((d1.cast<Complex>() * wave - Complex(0, kappa) * wave).norm() < 1e-10);
    CHECK((d3.cast<Complex>() * wave - Complex(0, -kappa * kappa * kappa) * wave).norm() < 1e-7);
}
