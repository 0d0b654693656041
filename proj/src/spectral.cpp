#include "airynet/spectral.hpp"

#include <cmath>
#include <numbers>

#include "airynet/graph.hpp"

namespace airynet::spectral {

namespace {
constexpr double kPi = std::numbers::pi;
}

Eigen::VectorXd cgl_nodes(int order, double a, double b) {
    if (order < 1) throw Error("grid order must be at least 1");
    Eigen::VectorXd x(order + 1);
    for (int j = 0; j <= order; ++j) {
        const double xi = -std::cos(kPi * j / order);  // increasing on [-1, 1]
        x[j] = a + (b - a) * (xi + 1.0) / 2.0;
    }
    x[0] = a;
    x[order] = b;
    return x;
}

Eigen::VectorXd cgl_barycentric_weights(int order) {
    Eigen::VectorXd w(order + 1);
    for (int j = 0; j <= order; ++j) w[j] = (j % 2 == 0) ? 1.0 : -1.0;
    w[0] *= 0.5;
    w[order] *= 0.5;
    return w;
}

std::vector<Eigen::MatrixXd> differentiation_matrices(const Eigen::VectorXd& nodes,
                                                      const Eigen::VectorXd& bary, int kmax) {
    const int n = static_cast<int>(nodes.size());
    std::vector<Eigen::MatrixXd> out;
    Eigen::MatrixXd prev;
    for (int k = 1; k <= kmax; ++k) {
        Eigen::MatrixXd d(n, n);
        for (int i = 0; i < n; ++i) {
            double diag = 0.0;
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                const double ratio = bary[j] / bary[i];
                const double dx = nodes[i] - nodes[j];
                double v;
                if (k == 1)
                    v = ratio / dx;
                else
                    v = static_cast<double>(k) / dx * (ratio * prev(i, i) - prev(i, j));
                d(i, j) = v;
                diag -= v;
            }
            d(i, i) = diag;
        }
        out.push_back(std::move(d));
        prev = out.back();
    }
    return out;
}

Eigen::VectorXd clenshaw_curtis_weights(int order, double a, double b) {
    const int n = order;
    Eigen::VectorXd w(n + 1);
    for (int j = 0; j <= n; ++j) {
        double s = 0.0;
        for (int k = 0; k <= n; k += 2) {
            const double ek = (k == 0 || k == n) ? 0.5 : 1.0;
            s += ek * (2.0 / (1.0 - k * k)) * std::cos(k * j * kPi / n);
        }
        const double ej = (j == 0 || j == n) ? 0.5 : 1.0;
        w[j] = ej * (2.0 / n) * s;
    }
    return w * ((b - a) / 2.0);
}

Quadrature gauss_legendre(int n, double a, double b) {
    if (n < 1) throw Error("quadrature needs at least one point");
    // Golub-Welsch: eigenvalues of the symmetric tridiagonal Jacobi matrix.
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        const double c = i / std::sqrt(4.0 * i * i - 1.0);
        jac(i, i - 1) = c;
        jac(i - 1, i) = c;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    Quadrature q;
    q.points.resize(n);
    q.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = es.eigenvalues()[i];
        const double w = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
        q.points[i] = a + (b - a) * (x + 1.0) / 2.0;
        q.weights[i] = w * (b - a) / 2.0;
    }
    return q;
}

Eigen::MatrixXd lagrange_values(const Eigen::VectorXd& nodes, const Eigen::VectorXd& bary,
                                const Eigen::VectorXd& queries) {
    const int n = static_cast<int>(nodes.size());
    const int m = static_cast<int>(queries.size());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, n);
    for (int q = 0; q < m; ++q) {
        int hit = -1;
        for (int j = 0; j < n; ++j) {
            if (std::abs(queries[q] - nodes[j]) < 1e-14 * (1.0 + std::abs(nodes[j]))) {
                hit = j;
                break;
            }
        }
        if (hit >= 0) {
            out(q, hit) = 1.0;
            continue;
        }
        double denom = 0.0;
        for (int j = 0; j < n; ++j) denom += bary[j] / (queries[q] - nodes[j]);
        for (int j = 0; j < n; ++j) out(q, j) = bary[j] / (queries[q] - nodes[j]) / denom;
    }
    return out;
}

Eigen::MatrixXd lagrange_gram(const Eigen::VectorXd& nodes, const Eigen::VectorXd& bary,
                              double a, double b) {
    const int order = static_cast<int>(nodes.size()) - 1;
    const Quadrature q = gauss_legendre(order + 2, a, b);
    const Eigen::MatrixXd p = lagrange_values(nodes, bary, q.points);
    return p.transpose() * q.weights.asDiagonal() * p;
}

Eigen::MatrixXd fourier_diff(int n, double length, int k) {
    if (n % 2 != 0) throw Error("fourier grid size must be even");
    if (k != 1 && k != 3) throw Error("fourier_diff supports orders 1 and 3");
    const double h = 2.0 * kPi / n;
    Eigen::MatrixXd d1 = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double sgn = ((i - j) % 2 == 0) ? 1.0 : -1.0;
            d1(i, j) = 0.5 * sgn / std::tan((i - j) * h / 2.0);
        }
    d1 *= 2.0 * kPi / length;
    if (k == 1) return d1;
    return d1 * d1 * d1;
}

}  // namespace airynet::spectral
