#include "airynet/evolution.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <memory>
#include <sstream>

#include "airynet/io.hpp"
#include "airynet/random.hpp"
#include "airynet/spectral.hpp"

namespace airynet {

const char* scheme_name(Scheme s) {
    return s == Scheme::CrankNicolson ? "crank_nicolson" : "matrix_exponential";
}

Scheme parse_scheme(const std::string& s) {
    if (s == "crank_nicolson" || s == "cn") return Scheme::CrankNicolson;
    if (s == "matrix_exponential" || s == "expm") return Scheme::MatrixExponential;
    throw Error("unknown scheme '" + s + "'");
}

CnStepper::CnStepper(const Eigen::MatrixXcd& a, double dt) : dt_(dt) {
    const Eigen::Index n = a.rows();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    forward_ = id + (dt / 2.0) * a;
    backward_.compute(id - (dt / 2.0) * a);
    if (n > 0 && backward_.rcond() < 1e-14)
        throw Error("Crank-Nicolson solve is numerically singular; use a smaller dt");
}

Eigen::VectorXcd CnStepper::step(const Eigen::VectorXcd& c) const {
    return backward_.solve(forward_ * c);
}

Eigen::VectorXcd step_cn(const DiscreteSystem& sys, const Eigen::VectorXcd& reduced, double dt) {
    CnStepper st(sys.a_red, dt);
    return st.step(reduced);
}

Eigen::VectorXcd step_expm(const DiscreteSystem& sys, const Eigen::VectorXcd& reduced, double dt) {
    if (sys.a_red.rows() > 2000)
        throw Error("matrix exponential capped at dimension 2000");
    const Eigen::MatrixXcd propagator = (dt * sys.a_red).exp();
    return propagator * reduced;
}

namespace {

double predicted_rate(const DiscreteSystem& sys, const Eigen::VectorXcd& right_traces) {
    const Eigen::VectorXcd lx = sys.l_global * right_traces;
    const Complex a = krein_inner(sys.form_right, right_traces, right_traces);
    const Complex b = krein_inner(sys.form_left, lx, lx);
    return -a.real() + b.real();
}

}  // namespace

RunRecord run(const DiscreteSystem& sys, const Eigen::VectorXcd& init,
              const EvolutionConfig& config) {
    if (!(config.dt > 0.0)) throw Error("dt must be positive");
    if (config.t_end < 0.0) throw Error("t_end must be nonnegative");
    if (init.size() != sys.total_nodes) throw Error("initial state size mismatch");

    RunRecord rec;
    rec.config = config;
    rec.graph_fingerprint = fnv1a(io::to_json(sys.graph).dump());
    rec.bc_fingerprint = fnv1a(io::to_json(sys.bc).dump());

    // Project onto the constraint manifold; report how much was removed.
    Eigen::VectorXcd c = sys.reduce(init);
    const Eigen::VectorXcd projected = sys.expand(c);
    const double init_norm = std::sqrt(std::abs(
        (init.adjoint() * (sys.mass * init))(0).real()));
    const Eigen::VectorXcd defect = projected - init;
    const double defect_norm =
        std::sqrt(std::abs((defect.adjoint() * (sys.mass * defect))(0).real()));
    rec.projection_residual = init_norm > 0 ? defect_norm / init_norm : 0.0;

    long steps = 0;
    double dt = config.dt;
    if (config.t_end > 0.0) {
        steps = std::lround(std::ceil(config.t_end / config.dt - 1e-12));
        steps = std::max<long>(steps, 1);
        dt = config.t_end / static_cast<double>(steps);
    }
    rec.config.dt = dt;

    std::unique_ptr<CnStepper> cn;
    Eigen::MatrixXcd propagator;
    if (steps > 0) {
        if (config.scheme == Scheme::CrankNicolson)
            cn = std::make_unique<CnStepper>(sys.a_red, dt);
        else
            propagator = (dt * sys.a_red).exp();
    }

    const auto record_sample = [&](double t, const Eigen::VectorXcd& reduced) {
        const Eigen::VectorXcd u = sys.expand(reduced);
        const double n2 = sys.norm2(u);
        if (!std::isfinite(n2))
            throw InstabilityError("state became non-finite at t = " + std::to_string(t),
                                   static_cast<long>(rec.times.size()));
        rec.times.push_back(t);
        rec.norm2.push_back(n2);
        const Traces tr = discrete_traces(sys, u);
        rec.dissipation_predicted.push_back(predicted_rate(sys, tr.right.values));
        if (config.record_traces) {
            rec.traces_right.push_back(tr.right.values);
            rec.traces_left.push_back(tr.left.values);
        }
        if (sys.constraint.rows() > 0) {
            const double res = (sys.constraint * u).norm() /
                               (1.0 + tr.left.values.norm() + tr.right.values.norm());
            rec.max_constraint_residual = std::max(rec.max_constraint_residual, res);
        }
    };

    record_sample(0.0, c);
    for (long k = 1; k <= steps; ++k) {
        c = cn ? cn->step(c) : Eigen::VectorXcd(propagator * c);
        record_sample(k * dt, c);
    }

    // Measured rate: centered differences of norm2, one-sided at the ends.
    const std::size_t m = rec.norm2.size();
    rec.dissipation_measured.assign(m, 0.0);
    if (m >= 2) {
        rec.dissipation_measured[0] = (rec.norm2[1] - rec.norm2[0]) / dt;
        rec.dissipation_measured[m - 1] = (rec.norm2[m - 1] - rec.norm2[m - 2]) / dt;
        for (std::size_t k = 1; k + 1 < m; ++k)
            rec.dissipation_measured[k] = (rec.norm2[k + 1] - rec.norm2[k - 1]) / (2.0 * dt);
    }
    return rec;
}

DiscreteSystem build_fourier_loop(const MetricGraph& g, const BoundaryOperator& bc, int n) {
    if (g.edges().size() != 1 || !g.edges()[0].from || !g.edges()[0].to ||
        *g.edges()[0].from != *g.edges()[0].to)
        throw Error("the Fourier path needs a single-edge loop graph");
    const Edge& e = g.edges()[0];
    if (!e.left_finite() || !e.right_finite()) throw Error("the loop edge must be finite");
    const auto it = bc.vertex_blocks.find(*e.from);
    if (it == bc.vertex_blocks.end() ||
        !it->second.isApprox(Eigen::MatrixXcd::Identity(3, 3), 1e-14))
        throw Error("the Fourier path needs the identity (periodic) condition");
    if (n < 4 || n % 2 != 0) throw Error("the Fourier path needs an even grid size >= 4");

    DiscreteSystem sys;
    sys.graph = g;
    sys.bc = bc;
    sys.fourier = true;
    const double len = e.length();
    const double h = len / n;

    EdgeGrid grid;
    grid.edge_id = e.id;
    grid.order = n;  // n equispaced nodes; the right endpoint is node 0 again
    grid.nodes.resize(n);
    for (int j = 0; j < n; ++j) grid.nodes[j] = e.a + h * j;
    grid.d1 = spectral::fourier_diff(n, len, 1);
    grid.d3 = spectral::fourier_diff(n, len, 3);
    grid.d2 = grid.d1 * grid.d1;
    grid.weights = Eigen::VectorXd::Constant(n, h);
    grid.mass = h * Eigen::MatrixXd::Identity(n, n);
    sys.grids.push_back(std::move(grid));
    sys.offsets.push_back(0);
    sys.total_nodes = n;

    const EdgeGrid& gr = sys.grids[0];
    sys.a_free = (e.alpha * gr.d3 + e.beta * gr.d1).cast<Complex>();
    sys.quad_weights = gr.weights;
    sys.mass = gr.mass;

    // Periodicity is built into the grid: both trace triples are read at
    // node 0, so the identity constraint holds identically.
    sys.t_left = Eigen::MatrixXcd::Zero(3, n);
    sys.t_left(0, 0) = 1.0;
    sys.t_left.row(1) = gr.d1.row(0).cast<Complex>();
    sys.t_left.row(2) = gr.d2.row(0).cast<Complex>();
    sys.t_right = sys.t_left;
    sys.l_global = Eigen::MatrixXcd::Identity(3, 3);
    sys.constraint = Eigen::MatrixXcd::Zero(0, n);
    sys.basis = (1.0 / std::sqrt(h)) * Eigen::MatrixXcd::Identity(n, n);
    sys.a_red = sys.a_free;  // basis is a scalar multiple of the identity
    sys.form_left = build_form(g, Side::Left);
    sys.form_right = build_form(g, Side::Right);
    return sys;
}

}  // namespace airynet
