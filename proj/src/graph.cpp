#include "airynet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace airynet {

MetricGraph::MetricGraph(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& x, const Edge& y) { return x.id < y.id; });
}

bool MetricGraph::has_vertex(const std::string& v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

double MetricGraph::min_edge_length() const {
    double m = kInf;
    for (const Edge& e : edges_) m = std::min(m, e.length());
    return m;
}

std::vector<std::size_t> MetricGraph::left_edges() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].left_finite()) out.push_back(i);
    return out;
}

std::vector<std::size_t> MetricGraph::right_edges() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].right_finite()) out.push_back(i);
    return out;
}

ValidationReport validate_graph(const MetricGraph& g) {
    ValidationReport rep;
    std::set<std::string> seen;
    for (const Edge& e : g.edges()) {
        if (!seen.insert(e.id).second)
            rep.violations.push_back("duplicate edge id '" + e.id + "'");
        if (!(e.a < e.b))
            rep.violations.push_back("edge '" + e.id + "': a_e < b_e fails");
        if (!(e.alpha > 0.0))
            rep.violations.push_back("edge '" + e.id + "': alpha must be positive");
        if (std::isnan(e.a) || std::isnan(e.b) || std::isnan(e.alpha) || std::isnan(e.beta))
            rep.violations.push_back("edge '" + e.id + "': NaN parameter");

        if (e.left_finite()) {
            if (!e.from)
                rep.violations.push_back("edge '" + e.id + "': finite start point not attached");
            else if (!g.has_vertex(*e.from))
                rep.violations.push_back("edge '" + e.id + "': unknown vertex '" + *e.from + "'");
        } else if (e.from) {
            rep.violations.push_back("edge '" + e.id + "': attachment at an infinite endpoint");
        }
        if (e.right_finite()) {
            if (!e.to)
                rep.violations.push_back("edge '" + e.id + "': finite end point not attached");
            else if (!g.has_vertex(*e.to))
                rep.violations.push_back("edge '" + e.id + "': unknown vertex '" + *e.to + "'");
        } else if (e.to) {
            rep.violations.push_back("edge '" + e.id + "': attachment at an infinite endpoint");
        }

        if (e.alpha > 0.0) {
            rep.alpha_max = std::max(rep.alpha_max, e.alpha);
            rep.inv_alpha_max = std::max(rep.inv_alpha_max, 1.0 / e.alpha);
        }
        rep.beta_abs_max = std::max(rep.beta_abs_max, std::abs(e.beta));
        rep.min_length = std::min(rep.min_length, e.length());
    }
    if (!g.edges().empty() && !(rep.min_length > 0.0))
        rep.violations.push_back("positive lower bound on the edge lengths fails");
    return rep;
}

Incidence incidence(const MetricGraph& g, const std::string& v) {
    if (!g.has_vertex(v)) throw Error("unknown vertex id '" + v + "'");
    Incidence inc;
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const Edge& e = g.edge(i);
        if (e.from && *e.from == v) inc.left.push_back(i);
        if (e.to && *e.to == v) inc.right.push_back(i);
    }
    return inc;
}

std::size_t TraceLayout::position(std::size_t edge_index, int component) const {
    for (std::size_t p = 0; p < entries.size(); ++p)
        if (entries[p].edge_index == edge_index && entries[p].component == component) return p;
    std::ostringstream os;
    os << "edge index " << edge_index << " has no slot on the " << side_name(side) << " side";
    throw Error(os.str());
}

TraceLayout trace_layout(const MetricGraph& g, Side side) {
    TraceLayout layout;
    layout.side = side;
    const auto idx = side == Side::Left ? g.left_edges() : g.right_edges();
    for (std::size_t i : idx)
        for (int k = 0; k < 3; ++k) layout.entries.push_back({i, k});
    return layout;
}

}  // namespace airynet
