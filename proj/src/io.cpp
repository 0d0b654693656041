#include "airynet/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace airynet::io {

namespace {

void reject_unknown_fields(const json& j, std::initializer_list<const char*> allowed,
                           const std::string& context) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw Error("unknown field '" + key + "' in " + context);
    }
}

double endpoint_from_json(const json& j, const std::string& context) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
    }
    throw Error("bad endpoint value in " + context);
}

json endpoint_to_json(double x) {
    if (x == kInf) return "inf";
    if (x == -kInf) return "-inf";
    return x;
}

}  // namespace

MetricGraph graph_from_json(const json& j) {
    reject_unknown_fields(j, {"vertices", "edges"}, "graph");
    if (!j.contains("vertices") || !j.contains("edges"))
        throw Error("graph needs 'vertices' and 'edges'");
    std::vector<std::string> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back(v.get<std::string>());
    std::vector<Edge> edges;
    for (const auto& je : j.at("edges")) {
        reject_unknown_fields(je, {"id", "a", "b", "from", "to", "alpha", "beta"}, "edge");
        Edge e;
        e.id = je.at("id").get<std::string>();
        e.a = endpoint_from_json(je.at("a"), "edge '" + e.id + "'");
        e.b = endpoint_from_json(je.at("b"), "edge '" + e.id + "'");
        if (je.contains("from")) e.from = je.at("from").get<std::string>();
        if (je.contains("to")) e.to = je.at("to").get<std::string>();
        e.alpha = je.value("alpha", 1.0);
        e.beta = je.value("beta", 0.0);
        edges.push_back(std::move(e));
    }
    return MetricGraph(std::move(vertices), std::move(edges));
}

json to_json(const MetricGraph& g) {
    json j;
    j["vertices"] = g.vertices();
    j["edges"] = json::array();
    for (const Edge& e : g.edges()) {
        json je;
        je["id"] = e.id;
        je["a"] = endpoint_to_json(e.a);
        je["b"] = endpoint_to_json(e.b);
        if (e.from) je["from"] = *e.from;
        if (e.to) je["to"] = *e.to;
        je["alpha"] = e.alpha;
        je["beta"] = e.beta;
        j["edges"].push_back(std::move(je));
    }
    return j;
}

BoundaryOperator bc_from_json(const json& j) {
    reject_unknown_fields(j, {"vertex_blocks"}, "boundary condition");
    if (!j.contains("vertex_blocks")) throw Error("boundary condition needs 'vertex_blocks'");
    BoundaryOperator bc;
    for (const auto& [vertex, jb] : j.at("vertex_blocks").items()) {
        reject_unknown_fields(jb, {"rows", "cols", "entries"}, "block of vertex '" + vertex + "'");
        const Eigen::Index rows = jb.at("rows").get<Eigen::Index>();
        const Eigen::Index cols = jb.at("cols").get<Eigen::Index>();
        if (rows < 0 || cols < 0) throw Error("negative block shape at vertex '" + vertex + "'");
        const auto& entries = jb.at("entries");
        if (static_cast<Eigen::Index>(entries.size()) != rows * cols)
            throw Error("entry count does not match rows*cols at vertex '" + vertex + "'");
        Eigen::MatrixXcd block(rows, cols);
        Eigen::Index k = 0;
        for (const auto& pair : entries) {
            if (!pair.is_array() || pair.size() != 2)
                throw Error("entries must be [re, im] pairs at vertex '" + vertex + "'");
            block(k / cols, k % cols) = Complex(pair[0].get<double>(), pair[1].get<double>());
            ++k;
        }
        bc.vertex_blocks.emplace(vertex, std::move(block));
    }
    return bc;
}

json to_json(const BoundaryOperator& bc) {
    json blocks = json::object();
    for (const auto& [vertex, block] : bc.vertex_blocks) {
        json jb;
        jb["rows"] = block.rows();
        jb["cols"] = block.cols();
        json entries = json::array();
        for (Eigen::Index i = 0; i < block.rows(); ++i)
            for (Eigen::Index j = 0; j < block.cols(); ++j)
                entries.push_back({block(i, j).real(), block(i, j).imag()});
        jb["entries"] = std::move(entries);
        blocks[vertex] = std::move(jb);
    }
    return json{{"vertex_blocks", std::move(blocks)}};
}

json to_json(const UnitaryCertificate& c) {
    json j;
    j["unitary"] = c.unitary;
    j["residual_norms"] = {{"form_identity", c.form_residual},
                           {"relative", c.relative_residual}};
    j["min_singular_value"] = c.min_singular_value;
    j["max_singular_value"] = c.max_singular_value;
    j["tolerance"] = c.tolerance;
    if (!c.reason.empty()) j["reason"] = c.reason;
    return j;
}

json to_json(const ContractionCertificate& c) {
    return json{{"contractive", c.contractive},
                {"min_eigenvalue", c.min_eigenvalue},
                {"scale", c.scale},
                {"tolerance", c.tolerance}};
}

json to_json(const BlockReport& r) {
    json j;
    j["verdict"] = verdict_name(r.verdict);
    j["tolerance"] = r.unitary.tolerance;
    j["residual_norms"] = {{"form_identity", r.unitary.form_residual},
                           {"relative", r.unitary.relative_residual}};
    j["min_eigenvalue"] =
        std::min(r.contraction.min_eigenvalue, r.adjoint_contraction.min_eigenvalue);
    j["unitary"] = to_json(r.unitary);
    j["contraction"] = to_json(r.contraction);
    j["adjoint_contraction"] = to_json(r.adjoint_contraction);
    return j;
}

json to_json(const ClassifyReport& r) {
    json j;
    j["global"] = to_json(r.global);
    j["combined_verdict"] = verdict_name(r.combined_verdict);
    j["agrees"] = r.agrees;
    json pv = json::object();
    for (const auto& [vertex, rep] : r.per_vertex) pv[vertex] = to_json(rep);
    j["per_vertex"] = std::move(pv);
    return j;
}

json run_record_to_json(const RunRecord& rec) {
    json j;
    j["format"] = "airynet-run-v1";
    j["config"] = {{"dt", rec.config.dt},
                   {"t_end", rec.config.t_end},
                   {"scheme", scheme_name(rec.config.scheme)}};
    j["graph_fingerprint"] = rec.graph_fingerprint;
    j["bc_fingerprint"] = rec.bc_fingerprint;
    j["projection_residual"] = rec.projection_residual;
    j["max_constraint_residual"] = rec.max_constraint_residual;
    j["times"] = rec.times;
    j["norm2"] = rec.norm2;
    j["dissipation_predicted"] = rec.dissipation_predicted;
    j["dissipation_measured"] = rec.dissipation_measured;
    const auto traces = [](const std::vector<Eigen::VectorXcd>& series) {
        json out = json::array();
        for (const auto& v : series) {
            json row = json::array();
            for (Eigen::Index i = 0; i < v.size(); ++i)
                row.push_back({v[i].real(), v[i].imag()});
            out.push_back(std::move(row));
        }
        return out;
    };
    j["traces_right"] = traces(rec.traces_right);
    j["traces_left"] = traces(rec.traces_left);
    return j;
}

std::string run_record_to_csv(const RunRecord& rec) {
    std::ostringstream os;
    os << "# airynet-run-v1\n";
    os << std::setprecision(17);
    os << "t,norm2,dissipation_predicted,dissipation_measured";
    const Eigen::Index nr = rec.traces_right.empty() ? 0 : rec.traces_right.front().size();
    const Eigen::Index nl = rec.traces_left.empty() ? 0 : rec.traces_left.front().size();
    for (Eigen::Index i = 0; i < nr; ++i) os << ",tr_r" << i << "_re,tr_r" << i << "_im";
    for (Eigen::Index i = 0; i < nl; ++i) os << ",tr_l" << i << "_re,tr_l" << i << "_im";
    os << "\n";
    for (std::size_t k = 0; k < rec.times.size(); ++k) {
        os << rec.times[k] << ',' << rec.norm2[k] << ',' << rec.dissipation_predicted[k] << ','
           << rec.dissipation_measured[k];
        if (k < rec.traces_right.size())
            for (Eigen::Index i = 0; i < nr; ++i)
                os << ',' << rec.traces_right[k][i].real() << ',' << rec.traces_right[k][i].imag();
        if (k < rec.traces_left.size())
            for (Eigen::Index i = 0; i < nl; ++i)
                os << ',' << rec.traces_left[k][i].real() << ',' << rec.traces_left[k][i].imag();
        os << "\n";
    }
    return os.str();
}

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error("parse error in '" + path + "': " + e.what());
    }
}

MetricGraph load_graph(const std::string& path) { return graph_from_json(parse_file(path)); }

BoundaryOperator load_bc(const std::string& path) { return bc_from_json(parse_file(path)); }

void save_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

void save_text(const std::string& text, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

std::string to_matrix_market(const Eigen::MatrixXcd& m, const std::string& comment) {
    std::ostringstream os;
    os << "%%MatrixMarket matrix coordinate complex general\n";
    if (!comment.empty()) os << "% " << comment << "\n";
    Eigen::Index nnz = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (m(i, j) != Complex(0, 0)) ++nnz;
    os << m.rows() << ' ' << m.cols() << ' ' << nnz << "\n";
    os << std::setprecision(17);
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (m(i, j) != Complex(0, 0))
                os << i + 1 << ' ' << j + 1 << ' ' << m(i, j).real() << ' ' << m(i, j).imag()
                   << "\n";
    return os.str();
}

}  // namespace airynet::io
