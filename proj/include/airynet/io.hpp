#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "airynet/boundary.hpp"
#include "airynet/evolution.hpp"

namespace airynet::io {

using nlohmann::json;

/// Graph file schema:
///   {"vertices": ["v", ...],
///    "edges": [{"id": "e1", "a": 0.0, "b": 1.0, "from": "v", "to": "v",
///               "alpha": 1.0, "beta": 0.0}, ...]}
/// Semi-infinite edges use "a": "-inf" / "b": "inf" and omit the
/// corresponding attachment. Unknown fields are rejected.
MetricGraph graph_from_json(const json& j);
json to_json(const MetricGraph& g);

/// Boundary-condition file schema:
///   {"vertex_blocks": {"v": {"rows": R, "cols": C,
///                            "entries": [[re, im], ...]}}}
/// with entries flattened row-major.
BoundaryOperator bc_from_json(const json& j);
json to_json(const BoundaryOperator& bc);

json to_json(const UnitaryCertificate& c);
json to_json(const ContractionCertificate& c);
json to_json(const BlockReport& r);
json to_json(const ClassifyReport& r);

json run_record_to_json(const RunRecord& rec);
/// CSV columns: t, norm2, dissipation_predicted, dissipation_measured,
/// then the right- and left-trace components as re/im pairs in layout
/// order. The first line is a format-version comment.
std::string run_record_to_csv(const RunRecord& rec);

MetricGraph load_graph(const std::string& path);
BoundaryOperator load_bc(const std::string& path);
void save_json(const json& j, const std::string& path);
void save_text(const std::string& text, const std::string& path);
json parse_file(const std::string& path);

/// Debug dump in MatrixMarket coordinate format (complex general entries,
/// 1-based indices, zeros skipped).
std::string to_matrix_market(const Eigen::MatrixXcd& m, const std::string& comment);

}  // namespace airynet::io
