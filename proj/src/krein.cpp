#include "airynet/krein.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace airynet {

Eigen::Matrix3cd form_block(double alpha, double beta) {
    Eigen::Matrix3cd b = Eigen::Matrix3cd::Zero();
    b(0, 0) = -beta;
    b(0, 2) = -alpha;
    b(1, 1) = alpha;
    b(2, 0) = -alpha;
    return b;
}

namespace {

KreinForm assemble_form(const MetricGraph& g, Side side, const std::vector<std::size_t>& edges) {
    KreinForm form;
    form.side = side;
    form.layout.side = side;
    for (std::size_t i : edges)
        for (int k = 0; k < 3; ++k) form.layout.entries.push_back({i, k});
    const Eigen::Index dim = static_cast<Eigen::Index>(3 * edges.size());
    form.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t s = 0; s < edges.size(); ++s) {
        const Edge& e = g.edge(edges[s]);
        form.matrix.block<3, 3>(3 * s, 3 * s) = form_block(e.alpha, e.beta);
    }
    return form;
}

}  // namespace

KreinForm build_form(const MetricGraph& g, Side side) {
    return assemble_form(g, side, side == Side::Left ? g.left_edges() : g.right_edges());
}

KreinForm build_vertex_form(const MetricGraph& g, const std::string& v, Side side) {
    const Incidence inc = incidence(g, v);
    return assemble_form(g, side, side == Side::Left ? inc.left : inc.right);
}

Complex krein_inner(const KreinForm& form, const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
    if (x.size() != form.dimension() || y.size() != form.dimension())
        throw Error("krein_inner: dimension mismatch");
    return y.adjoint() * (form.matrix * x);
}

Complex krein_inner(const KreinForm& form, const TraceVector& x, const TraceVector& y) {
    if (x.side != form.side || y.side != form.side)
        throw Error("krein_inner: trace side does not match the form");
    return krein_inner(form, x.values, y.values);
}

Signature signature(const KreinForm& form) {
    Signature sig;
    if (form.dimension() == 0) return sig;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(form.matrix, Eigen::EigenvaluesOnly);
    const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double lam = es.eigenvalues()[i];
        if (std::abs(lam) < 1e-12 * scale)
            throw Error("signature: near-singular form (corrupt input?)");
        (lam > 0 ? sig.n_plus : sig.n_minus)++;
    }
    return sig;
}

Eigen::MatrixXcd krein_adjoint(const KreinForm& form_right, const KreinForm& form_left,
                               const Eigen::MatrixXcd& l) {
    if (l.rows() != form_left.dimension() || l.cols() != form_right.dimension())
        throw Error("krein_adjoint: operator shape does not match the forms");
    if (form_right.dimension() == 0)
        return Eigen::MatrixXcd::Zero(0, form_left.dimension());
    // L# = B_r^{-1} L^* B_l
    return form_right.matrix.partialPivLu().solve(l.adjoint() * form_left.matrix);
}

UnitaryCertificate is_krein_unitary(const KreinForm& form_in, const KreinForm& form_out,
                                    const Eigen::MatrixXcd& l, double tol) {
    UnitaryCertificate cert;
    cert.tolerance = tol;
    if (l.rows() != form_out.dimension() || l.cols() != form_in.dimension())
        throw Error("is_krein_unitary: operator shape does not match the forms");
    if (form_in.dimension() != form_out.dimension()) {
        cert.reason = "dimension mismatch, no unitary exists";
        return cert;
    }
    if (form_in.dimension() == 0) {
        cert.unitary = true;
        cert.min_singular_value = cert.max_singular_value = 1.0;
        return cert;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(l);
    cert.min_singular_value = svd.singularValues().minCoeff();
    cert.max_singular_value = svd.singularValues().maxCoeff();
    if (cert.min_singular_value <= tol * cert.max_singular_value) {
        cert.reason = "operator is numerically singular";
        return cert;
    }
    const Eigen::MatrixXcd residual = l.adjoint() * form_out.matrix * l - form_in.matrix;
    cert.form_residual = residual.norm();
    const double scale = form_in.matrix.norm();
    cert.relative_residual = cert.form_residual / scale;
    if (cert.form_residual > tol * scale) {
        cert.reason = "form identity violated";
        return cert;
    }
    cert.unitary = true;
    return cert;
}

ContractionCertificate is_krein_contractive(const KreinForm& form_in, const KreinForm& form_out,
                                            const Eigen::MatrixXcd& l, double tol) {
    ContractionCertificate cert;
    cert.tolerance = tol;
    if (l.rows() != form_out.dimension() || l.cols() != form_in.dimension())
        throw Error("is_krein_contractive: operator shape does not match the forms");
    if (form_in.dimension() == 0) {
        cert.contractive = true;
        return cert;
    }
    Eigen::MatrixXcd diff = form_in.matrix - l.adjoint() * form_out.matrix * l;
    diff = ((diff + diff.adjoint()) / 2.0).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff, Eigen::EigenvaluesOnly);
    cert.min_eigenvalue = es.eigenvalues().minCoeff();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> esb(form_in.matrix, Eigen::EigenvaluesOnly);
    cert.scale = esb.eigenvalues().cwiseAbs().maxCoeff();
    cert.contractive = cert.min_eigenvalue >= -tol * cert.scale;
    return cert;
}

bool exists_unitary(const KreinForm& form_in, const KreinForm& form_out) {
    if (form_in.dimension() != form_out.dimension()) return false;
    return signature(form_in) == signature(form_out);
}

JFactor j_factor(const KreinForm& form) {
    const Eigen::Index n = form.dimension();
    JFactor f;
    if (n == 0) {
        f.s.resize(0, 0);
        f.j.resize(0);
        return f;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(form.matrix);
    // Sort eigenvalues descending so the positive ones come first.
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return es.eigenvalues()[a] > es.eigenvalues()[b];
    });
    Eigen::VectorXd lam(n);
    Eigen::MatrixXcd q(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        lam[i] = es.eigenvalues()[order[i]];
        q.col(i) = es.eigenvectors().col(order[i]);
    }
    f.j.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) f.j[i] = lam[i] > 0 ? 1.0 : -1.0;
    // S = |Lambda|^{1/2} Q^*, so that S^* J S = Q Lambda Q^* = B.
    f.s = lam.cwiseAbs().cwiseSqrt().asDiagonal() * q.adjoint();
    return f;
}

}  // namespace airynet
