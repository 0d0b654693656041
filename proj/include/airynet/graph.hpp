#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace airynet {

using Complex = std::complex<double>;

/// Error type for all invalid-input and invalid-state conditions.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

constexpr double kInf = std::numeric_limits<double>::infinity();

/// A directed edge identified with the real interval (a, b).
/// Semi-infinite edges use a = -inf / b = +inf; the corresponding
/// attachment (`from` / `to`) must then be absent.
struct Edge {
    std::string id;
    double a = 0.0;
    double b = 1.0;
    std::optional<std::string> from;  // vertex at a, present iff a finite
    std::optional<std::string> to;    // vertex at b, present iff b finite
    double alpha = 1.0;               // third-derivative coefficient, > 0
    double beta = 0.0;                // first-derivative coefficient

    bool left_finite() const { return a > -kInf; }
    bool right_finite() const { return b < kInf; }
    double length() const { return b - a; }
};

enum class Side { Left, Right };

inline const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }

/// A metric graph: vertices, edges-as-intervals, endpoint attachments and
/// per-edge coefficients. Edges are kept sorted by id; that order fixes the
/// layout of all boundary trace spaces. Immutable after construction.
class MetricGraph {
  public:
    MetricGraph() = default;
    MetricGraph(std::vector<std::string> vertices, std::vector<Edge> edges);

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t i) const { return edges_.at(i); }

    bool has_vertex(const std::string& v) const;

    /// Infimum of edge lengths (the stored positive lower bound).
    double min_edge_length() const;

    /// Indices (into edges()) of edges with a finite start / end point,
    /// in layout order.
    std::vector<std::size_t> left_edges() const;
    std::vector<std::size_t> right_edges() const;

  private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;  // sorted by id
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
    /// Bounds recorded for the coefficient sequences (trivial for finite
    /// graphs but part of the model's assumptions).
    double alpha_max = 0.0;
    double inv_alpha_max = 0.0;  // max of 1/alpha
    double beta_abs_max = 0.0;
    double min_length = kInf;
};

/// Checks the model assumptions: a < b with a positive lower bound on the
/// lengths, alpha > 0, every finite endpoint attached to a known vertex,
/// no duplicate edge ids. Violations are data, not exceptions.
ValidationReport validate_graph(const MetricGraph& g);

/// Edges starting at v (left endpoints) and terminating at v (right
/// endpoints), in layout order. Throws on an unknown vertex id.
struct Incidence {
    std::vector<std::size_t> left;   // E_{l,v}: edges e with from == v
    std::vector<std::size_t> right;  // E_{r,v}: edges e with to == v
};
Incidence incidence(const MetricGraph& g, const std::string& v);

/// Index layout of one boundary trace space: for each edge of the side in
/// sorted-id order, three consecutive slots for the endpoint value and the
/// first and second derivative.
struct TraceLayout {
    Side side = Side::Left;
    struct Entry {
        std::size_t edge_index;  // into MetricGraph::edges()
        int component;           // 0, 1, 2
    };
    std::vector<Entry> entries;

    std::size_t dimension() const { return entries.size(); }
    /// Position of (edge, component); throws if the edge is not on this side.
    std::size_t position(std::size_t edge_index, int component) const;
};

TraceLayout trace_layout(const MetricGraph& g, Side side);

}  // namespace airynet
