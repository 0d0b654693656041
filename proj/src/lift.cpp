#include "airynet/lift.hpp"

#include <algorithm>
#include <cmath>

#include "airynet/spectral.hpp"

namespace airynet {

std::array<double, 4> smoothstep7(double t) {
    // s = 35 t^4 - 84 t^5 + 70 t^6 - 20 t^7
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double t4 = t3 * t;
    return {
        ((((-20.0 * t + 70.0) * t - 84.0) * t + 35.0)) * t4,
        (((-140.0 * t + 420.0) * t - 420.0) * t + 140.0) * t3,
        (((-840.0 * t + 2100.0) * t - 1680.0) * t + 420.0) * t2,
        (((-4200.0 * t + 8400.0) * t - 5040.0) * t + 840.0) * t,
    };
}

LiftedFunction::LiftedFunction(const Edge& edge, Side side, std::array<Complex, 3> triple,
                               double support_window)
    : edge_id_(edge.id), side_(side), triple_(triple), a_(edge.a), b_(edge.b) {
    if (!edge.left_finite() || !edge.right_finite())
        throw Error("lift requires a finite edge");
    const double s = std::min(support_window, edge.length());
    if (!(s > 0.0)) throw Error("lift support window must be positive");
    plateau_end_ = s / 4.0;
    cutoff_end_ = s / 2.0;
}

std::array<Complex, 4> LiftedFunction::eval(double x) const {
    const double sgn = side_ == Side::Left ? 1.0 : -1.0;
    const double xi = side_ == Side::Left ? x - a_ : b_ - x;

    // Polynomial part z(xi) = t0 + t1 sgn xi + t2/2 xi^2 and derivatives
    // with respect to xi.
    const Complex z0 = triple_[0] + triple_[1] * sgn * xi + triple_[2] * 0.5 * xi * xi;
    const Complex z1 = triple_[1] * sgn + triple_[2] * xi;
    const Complex z2 = triple_[2];

    double p0 = 0.0, p1 = 0.0, p2 = 0.0, p3 = 0.0;
    if (xi <= plateau_end_) {
        p0 = 1.0;
    } else if (xi < cutoff_end_) {
        const double w = cutoff_end_ - plateau_end_;
        const auto s = smoothstep7((xi - plateau_end_) / w);
        p0 = 1.0 - s[0];
        p1 = -s[1] / w;
        p2 = -s[2] / (w * w);
        p3 = -s[3] / (w * w * w);
    }

    const Complex u0 = z0 * p0;
    const Complex u1 = z1 * p0 + z0 * p1;
    const Complex u2 = z2 * p0 + 2.0 * z1 * p1 + z0 * p2;
    const Complex u3 = 3.0 * z2 * p1 + 3.0 * z1 * p2 + z0 * p3;
    // Chain rule: d/dx = sgn d/dxi.
    return {u0, sgn * u1, u2, sgn * u3};
}

std::vector<double> LiftedFunction::knots() const {
    if (side_ == Side::Left) return {a_, a_ + plateau_end_, a_ + cutoff_end_, b_};
    return {a_, b_ - cutoff_end_, b_ - plateau_end_, b_};
}

std::vector<LiftedFunction> lift_traces(const MetricGraph& g, Side side,
                                        const TraceVector& values) {
    if (values.side != side) throw Error("lift_traces: trace side mismatch");
    const auto side_edges = side == Side::Left ? g.left_edges() : g.right_edges();
    if (values.values.size() != static_cast<Eigen::Index>(3 * side_edges.size()))
        throw Error("lift_traces: trace vector length mismatch");
    const double window = g.min_edge_length();
    std::vector<LiftedFunction> out;
    for (std::size_t s = 0; s < side_edges.size(); ++s) {
        const Edge& e = g.edge(side_edges[s]);
        const std::array<Complex, 3> triple = {values.values[3 * s], values.values[3 * s + 1],
                                               values.values[3 * s + 2]};
        out.emplace_back(e, side, triple, window);
    }
    return out;
}

namespace {

std::size_t edge_index_of(const MetricGraph& g, const std::string& id) {
    for (std::size_t i = 0; i < g.edges().size(); ++i)
        if (g.edge(i).id == id) return i;
    throw Error("lift refers to unknown edge '" + id + "'");
}

/// Trace triple of a lift at one endpoint of its edge.
Eigen::Vector3cd endpoint_traces(const LiftedFunction& f, double x) {
    const auto e = f.eval(x);
    return Eigen::Vector3cd(e[0], e[1], e[2]);
}

}  // namespace

GreensIdentity greens_identity_parts(const MetricGraph& g, const LiftedFunction& u,
                                     const LiftedFunction& v, int quad_order) {
    if (quad_order < 4) throw Error("quadrature order too low (need at least 4)");

    const std::size_t eu = edge_index_of(g, u.edge_id());
    const std::size_t ev = edge_index_of(g, v.edge_id());

    GreensIdentity out;

    // lhs = <u|Av> + <Au|v>, edge by edge; only shared edges contribute.
    if (eu == ev) {
        const Edge& e = g.edge(eu);
        std::vector<double> knots = u.knots();
        const auto kv = v.knots();
        knots.insert(knots.end(), kv.begin(), kv.end());
        std::sort(knots.begin(), knots.end());
        knots.erase(std::unique(knots.begin(), knots.end(),
                                [](double x, double y) { return std::abs(x - y) < 1e-14; }),
                    knots.end());
        const spectral::Quadrature base = spectral::gauss_legendre(quad_order, 0.0, 1.0);
        Complex lhs = 0.0;
        for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
            const double lo = knots[k], hi = knots[k + 1];
            if (hi - lo < 1e-14) continue;
            for (int q = 0; q < quad_order; ++q) {
                const double x = lo + (hi - lo) * base.points[q];
                const double w = (hi - lo) * base.weights[q];
                const auto fu = u.eval(x);
                const auto fv = v.eval(x);
                const Complex au = e.alpha * fu[3] + e.beta * fu[1];
                const Complex av = e.alpha * fv[3] + e.beta * fv[1];
                lhs += w * (fu[0] * std::conj(av) + au * std::conj(fv[0]));
            }
        }
        out.lhs = lhs;
    }

    // rhs from the exact traces scattered into the global trace spaces.
    const KreinForm fr = build_form(g, Side::Right);
    const KreinForm fl = build_form(g, Side::Left);
    const auto scatter = [&](const LiftedFunction& f, Side side, const KreinForm& form) {
        Eigen::VectorXcd tr = Eigen::VectorXcd::Zero(form.dimension());
        const std::size_t ei = edge_index_of(g, f.edge_id());
        const Edge& e = g.edge(ei);
        const auto side_edges = side == Side::Left ? g.left_edges() : g.right_edges();
        const auto it = std::find(side_edges.begin(), side_edges.end(), ei);
        if (it == side_edges.end()) return tr;  // no finite endpoint on this side
        const Eigen::Index slot = 3 * (it - side_edges.begin());
        tr.segment<3>(slot) = endpoint_traces(f, side == Side::Left ? e.a : e.b);
        return tr;
    };
    const Eigen::VectorXcd tru_r = scatter(u, Side::Right, fr);
    const Eigen::VectorXcd trv_r = scatter(v, Side::Right, fr);
    const Eigen::VectorXcd tru_l = scatter(u, Side::Left, fl);
    const Eigen::VectorXcd trv_l = scatter(v, Side::Left, fl);
    out.rhs = -krein_inner(fr, tru_r, trv_r) + krein_inner(fl, tru_l, trv_l);

    out.residual = std::abs(out.lhs - out.rhs) / (1.0 + std::abs(out.lhs));
    return out;
}

double check_greens_identity(const MetricGraph& g, const LiftedFunction& u,
                             const LiftedFunction& v, int quad_order) {
    return greens_identity_parts(g, u, v, quad_order).residual;
}

}  // namespace airynet
