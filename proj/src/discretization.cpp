#include "airynet/discretization.hpp"

#include <cmath>
#include <sstream>

#include "airynet/spectral.hpp"

namespace airynet {

EdgeGrid build_grid(const Edge& e, int order) {
    if (!e.left_finite() || !e.right_finite())
        throw Error("edge '" + e.id + "' is semi-infinite; truncate it before discretizing");
    if (order < 8) throw Error("grid order must be at least 8");
    EdgeGrid g;
    g.edge_id = e.id;
    g.order = order;
    g.nodes = spectral::cgl_nodes(order, e.a, e.b);
    const Eigen::VectorXd bary = spectral::cgl_barycentric_weights(order);
    auto ds = spectral::differentiation_matrices(g.nodes, bary, 3);
    g.d1 = std::move(ds[0]);
    g.d2 = std::move(ds[1]);
    g.d3 = std::move(ds[2]);
    g.weights = spectral::clenshaw_curtis_weights(order, e.a, e.b);
    g.mass = spectral::lagrange_gram(g.nodes, bary, e.a, e.b);

    // Build-time sanity: differentiate monomials exactly, integrate 1.
    const double scale = std::max(std::abs(e.a), std::abs(e.b)) + 1.0;
    for (int p = 0; p <= 3; ++p) {
        Eigen::VectorXd xp = g.nodes.array().pow(p) / std::pow(scale, p);
        Eigen::VectorXd expect = p == 0 ? Eigen::VectorXd::Zero(order + 1).eval()
                                        : (p * g.nodes.array().pow(p - 1) / std::pow(scale, p))
                                              .matrix()
                                              .eval();
        if (((g.d1 * xp - expect).cwiseAbs().maxCoeff()) > 1e-8)
            throw Error("differentiation exactness check failed on edge '" + e.id + "'");
    }
    if (std::abs(g.weights.sum() - e.length()) > 1e-10 * e.length())
        throw Error("quadrature weight sum check failed on edge '" + e.id + "'");
    return g;
}

double DiscreteSystem::norm2(const Eigen::VectorXcd& state) const {
    return (quad_weights.array() * state.array().abs2()).sum();
}

Eigen::VectorXcd DiscreteSystem::reduce(const Eigen::VectorXcd& state) const {
    return basis.adjoint() * (mass * state);
}

Traces discrete_traces(const DiscreteSystem& sys, const Eigen::VectorXcd& state) {
    if (state.size() != sys.total_nodes) throw Error("discrete_traces: state size mismatch");
    Traces tr;
    tr.left.side = Side::Left;
    tr.right.side = Side::Right;
    tr.left.values = sys.t_left * state;
    tr.right.values = sys.t_right * state;
    return tr;
}

namespace {

/// Locates the vertex whose constraint rows fail to be independent, for
/// the rank-deficiency diagnostic.
std::string find_deficient_vertex(const MetricGraph& g, const Eigen::MatrixXcd& c,
                                  const std::vector<std::size_t>& left_edges) {
    for (const std::string& v : g.vertices()) {
        const Incidence inc = incidence(g, v);
        if (inc.left.empty()) continue;
        Eigen::MatrixXcd rows(3 * inc.left.size(), c.cols());
        Eigen::Index r = 0;
        for (std::size_t e : inc.left) {
            const auto it = std::find(left_edges.begin(), left_edges.end(), e);
            const Eigen::Index slot = 3 * (it - left_edges.begin());
            rows.middleRows(r, 3) = c.middleRows(slot, 3);
            r += 3;
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(rows);
        const auto& sv = svd.singularValues();
        if (sv.size() && sv.minCoeff() <= 1e-12 * sv.maxCoeff()) return v;
    }
    return "(unknown)";
}

}  // namespace

DiscreteSystem build_generator(const MetricGraph& g, const BoundaryOperator& bc, int order) {
    return build_generator(g, bc, {}, order);
}

DiscreteSystem build_generator(const MetricGraph& g, const BoundaryOperator& bc,
                               const std::map<std::string, int>& per_edge_order,
                               int default_order) {
    const ValidationReport rep = validate_graph(g);
    if (!rep.ok()) throw Error("invalid graph: " + rep.violations.front());

    DiscreteSystem sys;
    sys.graph = g;
    sys.bc = bc;
    for (const Edge& e : g.edges()) {
        int order = default_order;
        if (const auto it = per_edge_order.find(e.id); it != per_edge_order.end())
            order = it->second;
        sys.offsets.push_back(sys.total_nodes);
        sys.grids.push_back(build_grid(e, order));
        sys.total_nodes += order + 1;
    }

    sys.a_free = Eigen::MatrixXcd::Zero(sys.total_nodes, sys.total_nodes);
    sys.mass = Eigen::MatrixXd::Zero(sys.total_nodes, sys.total_nodes);
    sys.quad_weights = Eigen::VectorXd::Zero(sys.total_nodes);
    for (std::size_t i = 0; i < sys.grids.size(); ++i) {
        const EdgeGrid& gr = sys.grids[i];
        const Edge& e = g.edge(i);
        const Eigen::Index off = sys.offsets[i];
        const Eigen::Index n = gr.order + 1;
        sys.a_free.block(off, off, n, n) = (e.alpha * gr.d3 + e.beta * gr.d1).cast<Complex>();
        sys.mass.block(off, off, n, n) = gr.mass;
        sys.quad_weights.segment(off, n) = gr.weights;
    }

    const auto left = g.left_edges();
    const auto right = g.right_edges();
    sys.t_left = Eigen::MatrixXcd::Zero(3 * left.size(), sys.total_nodes);
    sys.t_right = Eigen::MatrixXcd::Zero(3 * right.size(), sys.total_nodes);
    for (std::size_t s = 0; s < left.size(); ++s) {
        const std::size_t ei = left[s];
        const EdgeGrid& gr = sys.grids[ei];
        const Eigen::Index off = sys.offsets[ei];
        const Eigen::Index n = gr.order + 1;
        sys.t_left(3 * s + 0, off) = 1.0;
        sys.t_left.row(3 * s + 1).segment(off, n) = gr.d1.row(0).cast<Complex>();
        sys.t_left.row(3 * s + 2).segment(off, n) = gr.d2.row(0).cast<Complex>();
    }
    for (std::size_t s = 0; s < right.size(); ++s) {
        const std::size_t ei = right[s];
        const EdgeGrid& gr = sys.grids[ei];
        const Eigen::Index off = sys.offsets[ei];
        const Eigen::Index n = gr.order + 1;
        sys.t_right(3 * s + 0, off + n - 1) = 1.0;
        sys.t_right.row(3 * s + 1).segment(off, n) = gr.d1.row(n - 1).cast<Complex>();
        sys.t_right.row(3 * s + 2).segment(off, n) = gr.d2.row(n - 1).cast<Complex>();
    }

    sys.l_global = assemble_global(g, bc);
    sys.constraint = sys.t_left - sys.l_global * sys.t_right;
    sys.form_left = build_form(g, Side::Left);
    sys.form_right = build_form(g, Side::Right);

    // Null-space basis of C from the SVD, then mass-orthonormalized via
    // Cholesky + QR so that Z^* M Z = I.
    Eigen::Index nullity = sys.total_nodes;
    Eigen::MatrixXcd z0;
    if (sys.constraint.rows() > 0) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys.constraint, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double smax = sv.size() ? sv.maxCoeff() : 0.0;
        Eigen::Index rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv[i] > 1e-10 * smax) ++rank;
        if (rank < sys.constraint.rows()) {
            const std::string v = find_deficient_vertex(g, sys.constraint, left);
            throw Error("constraint matrix is rank-deficient near vertex '" + v + "'");
        }
        nullity = sys.total_nodes - rank;
        z0 = svd.matrixV().rightCols(nullity);
    } else {
        z0 = Eigen::MatrixXcd::Identity(sys.total_nodes, sys.total_nodes);
    }
    const Eigen::LLT<Eigen::MatrixXd> llt(sys.mass);
    if (llt.info() != Eigen::Success) throw Error("mass matrix is not positive definite");
    const Eigen::MatrixXd r = llt.matrixU();
    const Eigen::MatrixXcd w = r.cast<Complex>() * z0;
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(w);
    const Eigen::MatrixXcd q = Eigen::MatrixXcd(qr.householderQ()).leftCols(nullity);
    sys.basis = r.cast<Complex>().triangularView<Eigen::Upper>().solve(q);
    sys.a_red = sys.basis.adjoint() * sys.mass * sys.a_free * sys.basis;
    return sys;
}

}  // namespace airynet
