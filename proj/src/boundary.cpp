#include "airynet/boundary.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "airynet/random.hpp"

namespace airynet {

namespace {

/// Slot offsets (into the side's trace layout) of the edges incident at
/// each vertex.
std::vector<Eigen::Index> side_offsets(const std::vector<std::size_t>& side_edges,
                                       const std::vector<std::size_t>& vertex_edges) {
    std::vector<Eigen::Index> out;
    for (std::size_t e : vertex_edges) {
        const auto it = std::find(side_edges.begin(), side_edges.end(), e);
        if (it == side_edges.end()) throw Error("internal: edge missing from side layout");
        out.push_back(3 * static_cast<Eigen::Index>(it - side_edges.begin()));
    }
    return out;
}

}  // namespace

Eigen::MatrixXcd assemble_global(const MetricGraph& g, const BoundaryOperator& bc) {
    const auto left = g.left_edges();
    const auto right = g.right_edges();
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(3 * left.size(), 3 * right.size());
    for (const std::string& v : g.vertices()) {
        const Incidence inc = incidence(g, v);
        const auto it = bc.vertex_blocks.find(v);
        const Eigen::Index rows = 3 * static_cast<Eigen::Index>(inc.left.size());
        const Eigen::Index cols = 3 * static_cast<Eigen::Index>(inc.right.size());
        if (it == bc.vertex_blocks.end()) {
            if (rows == 0 && cols == 0) continue;
            throw Error("no boundary block for vertex '" + v + "'");
        }
        const Eigen::MatrixXcd& block = it->second;
        if (block.rows() != rows || block.cols() != cols) {
            std::ostringstream os;
            os << "boundary block shape mismatch at vertex '" << v << "': expected " << rows
               << "x" << cols << ", got " << block.rows() << "x" << block.cols();
            throw Error(os.str());
        }
        const auto row_off = side_offsets(left, inc.left);
        const auto col_off = side_offsets(right, inc.right);
        for (std::size_t i = 0; i < row_off.size(); ++i)
            for (std::size_t j = 0; j < col_off.size(); ++j)
                l.block<3, 3>(row_off[i], col_off[j]) = block.block<3, 3>(3 * i, 3 * j);
    }
    for (const auto& [v, block] : bc.vertex_blocks)
        if (!g.has_vertex(v)) throw Error("boundary block for unknown vertex '" + v + "'");
    return l;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Unitary: return "unitary";
        case Verdict::BiContractive: return "bi_contractive";
        case Verdict::ContractiveOnly: return "contractive_only";
        case Verdict::AdjointContractiveOnly: return "adjoint_contractive_only";
        case Verdict::Neither: return "neither";
    }
    return "neither";
}

namespace {

BlockReport classify_block(const KreinForm& form_r, const KreinForm& form_l,
                           const Eigen::MatrixXcd& l, double tol) {
    BlockReport rep;
    rep.unitary = is_krein_unitary(form_r, form_l, l, tol);
    rep.contraction = is_krein_contractive(form_r, form_l, l, tol);
    const Eigen::MatrixXcd lsharp = krein_adjoint(form_r, form_l, l);
    rep.adjoint_contraction = is_krein_contractive(form_l, form_r, lsharp, tol);
    if (rep.unitary.unitary)
        rep.verdict = Verdict::Unitary;
    else if (rep.contraction.contractive && rep.adjoint_contraction.contractive)
        rep.verdict = Verdict::BiContractive;
    else if (rep.contraction.contractive)
        rep.verdict = Verdict::ContractiveOnly;
    else if (rep.adjoint_contraction.contractive)
        rep.verdict = Verdict::AdjointContractiveOnly;
    else
        rep.verdict = Verdict::Neither;
    return rep;
}

}  // namespace

ClassifyReport classify(const MetricGraph& g, const BoundaryOperator& bc, double tol) {
    ClassifyReport rep;
    bool all_unitary = true, all_contr = true, all_adj = true;
    for (const std::string& v : g.vertices()) {
        const KreinForm fr = build_vertex_form(g, v, Side::Right);
        const KreinForm fl = build_vertex_form(g, v, Side::Left);
        Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(fl.dimension(), fr.dimension());
        if (const auto it = bc.vertex_blocks.find(v); it != bc.vertex_blocks.end()) {
            if (it->second.rows() != fl.dimension() || it->second.cols() != fr.dimension()) {
                std::ostringstream os;
                os << "boundary block shape mismatch at vertex '" << v << "': expected "
                   << fl.dimension() << "x" << fr.dimension() << ", got " << it->second.rows()
                   << "x" << it->second.cols();
                throw Error(os.str());
            }
            block = it->second;
        } else if (fl.dimension() != 0 || fr.dimension() != 0) {
            throw Error("no boundary block for vertex '" + v + "'");
        }
        const BlockReport br = classify_block(fr, fl, block, tol);
        all_unitary &= br.unitary.unitary;
        all_contr &= br.contraction.contractive;
        all_adj &= br.adjoint_contraction.contractive;
        rep.per_vertex.emplace(v, br);
    }
    if (all_unitary)
        rep.combined_verdict = Verdict::Unitary;
    else if (all_contr && all_adj)
        rep.combined_verdict = Verdict::BiContractive;
    else if (all_contr)
        rep.combined_verdict = Verdict::ContractiveOnly;
    else if (all_adj)
        rep.combined_verdict = Verdict::AdjointContractiveOnly;
    else
        rep.combined_verdict = Verdict::Neither;

    rep.global = classify_block(build_form(g, Side::Right), build_form(g, Side::Left),
                                assemble_global(g, bc), tol);
    rep.agrees = rep.global.verdict == rep.combined_verdict;
    return rep;
}

namespace {

/// exp(J A) for a random skew-Hermitian A is both J-unitary and
/// J*-unitary: M^* J M = J and M J M^* = J.
Eigen::MatrixXcd random_j_unitary(const Eigen::VectorXd& j, Rng& rng) {
    const Eigen::Index n = j.size();
    Eigen::MatrixXcd gmat = rng.complex_gaussian(n, n);
    Eigen::MatrixXcd skew = (gmat - gmat.adjoint()) / 2.0;
    const double nrm = skew.norm();
    if (nrm > 1.0) skew /= nrm;  // keep exp well inside its accurate range
    const Eigen::MatrixXcd ja = j.asDiagonal() * skew;
    return ja.exp();
}

Eigen::MatrixXcd random_haar_unitary(Eigen::Index n, Rng& rng) {
    Eigen::MatrixXcd gmat = rng.complex_gaussian(n, n);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gmat);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex d = r(i, i);
        q.col(i) *= (std::abs(d) > 0) ? d / std::abs(d) : Complex(1, 0);
    }
    return q;
}

struct VertexForms {
    KreinForm right;
    KreinForm left;
};

VertexForms balanced_vertex_forms(const MetricGraph& g, const std::string& vertex) {
    VertexForms f{build_vertex_form(g, vertex, Side::Right),
                  build_vertex_form(g, vertex, Side::Left)};
    if (f.right.dimension() != f.left.dimension() || f.right.dimension() == 0) {
        std::ostringstream os;
        os << "no Krein-unitary exists: dim mismatch " << f.right.dimension() << " vs "
           << f.left.dimension() << " at vertex '" << vertex << "'";
        throw Error(os.str());
    }
    return f;
}

}  // namespace

Eigen::MatrixXcd sample_unitary(const MetricGraph& g, const std::string& vertex,
                                std::uint64_t seed) {
    const VertexForms f = balanced_vertex_forms(g, vertex);
    const JFactor jr = j_factor(f.right);
    const JFactor jl = j_factor(f.left);
    Rng rng(seed);
    const Eigen::MatrixXcd m = random_j_unitary(jl.j, rng);
    return jl.s.partialPivLu().solve(m * jr.s);
}

Eigen::MatrixXcd sample_bicontraction(const MetricGraph& g, const std::string& vertex,
                                      std::uint64_t seed, double strictness) {
    if (strictness < 0.0 || strictness > 1.0)
        throw Error("strictness must lie in [0, 1]");
    const VertexForms f = balanced_vertex_forms(g, vertex);
    const JFactor jr = j_factor(f.right);
    const JFactor jl = j_factor(f.left);
    const Eigen::Index n = jl.j.size();
    const Eigen::Index npos = static_cast<Eigen::Index>((jl.j.array() > 0).count());
    Rng rng(seed);
    const Eigen::MatrixXcd u1 = random_j_unitary(jl.j, rng);
    const Eigen::MatrixXcd u2 = random_j_unitary(jl.j, rng);
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
    d.topLeftCorner(npos, npos) = (1.0 - strictness / 2.0) * random_haar_unitary(npos, rng);
    d.bottomRightCorner(n - npos, n - npos) =
        (1.0 + strictness / 2.0) * random_haar_unitary(n - npos, rng);
    const Eigen::MatrixXcd m = u1 * d * u2;
    return jl.s.partialPivLu().solve(m * jr.s);
}

namespace {

MetricGraph make_loop(double alpha, double beta) {
    Edge e;
    e.id = "e1";
    e.a = 0.0;
    e.b = 1.0;
    e.from = "v";
    e.to = "v";
    e.alpha = alpha;
    e.beta = beta;
    return MetricGraph({"v"}, {e});
}

MetricGraph make_two_halflines() {
    Edge in, out;
    in.id = "e1";
    in.a = -kInf;
    in.b = 0.0;
    in.to = "v";
    out.id = "e2";
    out.a = 0.0;
    out.b = kInf;
    out.from = "v";
    return MetricGraph({"v"}, {in, out});
}

MetricGraph make_star(int n_in, int n_out) {
    if (n_in < 0 || n_out < 0 || n_in + n_out == 0)
        throw Error("star needs a positive number of edges");
    std::vector<Edge> edges;
    for (int i = 0; i < n_in; ++i) {
        Edge e;
        std::ostringstream os;
        os << "in" << (i < 9 ? "0" : "") << i + 1;
        e.id = os.str();
        e.a = -kInf;
        e.b = 0.0;
        e.to = "v";
        edges.push_back(e);
    }
    for (int i = 0; i < n_out; ++i) {
        Edge e;
        std::ostringstream os;
        os << "out" << (i < 9 ? "0" : "") << i + 1;
        e.id = os.str();
        e.a = 0.0;
        e.b = kInf;
        e.from = "v";
        edges.push_back(e);
    }
    return MetricGraph({"v"}, std::move(edges));
}

/// Parses "name", "name(x)" or "name(x,y)".
struct ParsedName {
    std::string name;
    std::vector<double> args;
};

ParsedName parse_builtin_name(const std::string& s) {
    ParsedName p;
    const auto open = s.find('(');
    if (open == std::string::npos) {
        p.name = s;
        return p;
    }
    if (s.back() != ')') throw Error("malformed builtin name '" + s + "'");
    p.name = s.substr(0, open);
    std::string args = s.substr(open + 1, s.size() - open - 2);
    std::istringstream is(args);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            p.args.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw Error("malformed builtin argument '" + tok + "'");
        }
    }
    return p;
}

Eigen::MatrixXcd canonical_unitary(const MetricGraph& g, const std::string& vertex) {
    // The A = 0 sampler case: L = S_l^{-1} S_r.
    const VertexForms f = balanced_vertex_forms(g, vertex);
    return j_factor(f.left).s.partialPivLu().solve(j_factor(f.right).s);
}

}  // namespace

BuiltinCase builtin(const std::string& name) {
    const ParsedName p = parse_builtin_name(name);
    BuiltinCase out;
    if (p.name == "loop_periodic") {
        double alpha = 1.0, beta = 0.0;
        if (p.args.size() == 2) {
            alpha = p.args[0];
            beta = p.args[1];
        } else if (!p.args.empty()) {
            throw Error("loop_periodic takes no arguments or (alpha,beta)");
        }
        out.graph = make_loop(alpha, beta);
        out.bc.vertex_blocks["v"] = Eigen::MatrixXcd::Identity(3, 3);
        return out;
    }
    if (p.name == "loop_diag") {
        if (p.args.size() != 2) throw Error("loop_diag needs (a,b)");
        const double a = p.args[0], b = p.args[1];
        if (a == 0.0) throw Error("loop_diag: a must be nonzero");
        out.graph = make_loop(1.0, 0.0);
        Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(3, 3);
        l(0, 0) = a;
        l(1, 1) = b;
        l(2, 2) = 1.0 / a;
        out.bc.vertex_blocks["v"] = l;
        return out;
    }
    if (p.name == "two_halflines_unitary") {
        if (!p.args.empty()) throw Error("two_halflines_unitary takes no arguments");
        out.graph = make_two_halflines();
        Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(3, 3);
        const double r2 = std::sqrt(2.0);
        l(0, 0) = 1;
        l(1, 0) = r2;
        l(1, 1) = 1;
        l(2, 0) = 1;
        l(2, 1) = r2;
        l(2, 2) = 1;
        out.bc.vertex_blocks["v"] = l;
        return out;
    }
    if (p.name == "star") {
        if (p.args.size() != 2) throw Error("star needs (n_in,n_out)");
        const int n_in = static_cast<int>(p.args[0]);
        const int n_out = static_cast<int>(p.args[1]);
        out.graph = make_star(n_in, n_out);
        if (n_in == n_out)
            out.bc.vertex_blocks["v"] = canonical_unitary(out.graph, "v");
        else
            out.bc.vertex_blocks["v"] = Eigen::MatrixXcd::Zero(3 * n_out, 3 * n_in);
        return out;
    }
    throw Error("unknown builtin '" + name + "'");
}

BuiltinCase truncate_halflines(const MetricGraph& g, const BoundaryOperator& bc, double length) {
    if (!(length > 0.0)) throw Error("truncation length must be positive");
    std::vector<std::string> vertices = g.vertices();
    std::vector<Edge> edges = g.edges();
    std::vector<std::size_t> new_left;   // edges that gained a finite start
    std::vector<std::size_t> new_right;  // edges that gained a finite end
    for (std::size_t i = 0; i < edges.size(); ++i) {
        Edge& e = edges[i];
        if (!e.left_finite()) {
            e.a = e.b - length;
            new_left.push_back(i);
        }
        if (!e.right_finite()) {
            e.b = e.a + length;
            new_right.push_back(i);
        }
    }
    if (new_left.size() < new_right.size())
        throw Error("cannot close truncated graph: a dangling right endpoint has no "
                    "everywhere-defined dissipative closure");
    BuiltinCase out;
    BoundaryOperator nbc = bc;
    const std::size_t pairs = new_right.size();
    for (std::size_t k = 0; k < pairs; ++k) {
        std::ostringstream os;
        os << "__far_" << k;
        const std::string v = os.str();
        vertices.push_back(v);
        edges[new_left[k]].from = v;
        edges[new_right[k]].to = v;
        Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(3, 3);
        l(0, 0) = 1.0;
        l(2, 2) = 1.0;
        nbc.vertex_blocks[v] = l;  // absorbing closure diag(1, 0, 1)
    }
    for (std::size_t k = pairs; k < new_left.size(); ++k) {
        std::ostringstream os;
        os << "__far_" << k;
        const std::string v = os.str();
        vertices.push_back(v);
        edges[new_left[k]].from = v;
        nbc.vertex_blocks[v] = Eigen::MatrixXcd::Zero(3, 0);  // zero-trace end
    }
    out.graph = MetricGraph(std::move(vertices), std::move(edges));
    out.bc = std::move(nbc);
    return out;
}

}  // namespace airynet
