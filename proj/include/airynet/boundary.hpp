#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "airynet/krein.hpp"

namespace airynet {

/// Per-vertex boundary operators L_v. Each block maps the right-trace
/// space of the edges ending at v into the left-trace space of the edges
/// starting at v, so it has shape 3|E_{l,v}| x 3|E_{r,v}| (degenerate
/// shapes like 3x0 or 0x0 included). Together the blocks impose
/// L Tr_r u = Tr_l u.
struct BoundaryOperator {
    std::map<std::string, Eigen::MatrixXcd> vertex_blocks;
};

/// Scatters the vertex blocks into the global operator of shape
/// 3|E_l| x 3|E_r|; entries outside the vertex blocks are exactly zero.
/// Throws on a shape mismatch, naming the vertex.
Eigen::MatrixXcd assemble_global(const MetricGraph& g, const BoundaryOperator& bc);

enum class Verdict {
    Unitary,
    BiContractive,
    ContractiveOnly,
    AdjointContractiveOnly,
    Neither,
};

const char* verdict_name(Verdict v);

/// Result of checking one operator block against its pair of forms.
struct BlockReport {
    Verdict verdict = Verdict::Neither;
    UnitaryCertificate unitary;
    ContractionCertificate contraction;          // B_r - L^* B_l L >= 0
    ContractionCertificate adjoint_contraction;  // B_l - (L#)^* B_r L# >= 0
};

struct ClassifyReport {
    std::map<std::string, BlockReport> per_vertex;
    BlockReport global;            // computed directly on the assembled L
    Verdict combined_verdict;      // conjunction of the per-vertex verdicts
    bool agrees = false;           // global verdict == combined verdict
};

/// Classifies the boundary condition per vertex (against the restricted
/// forms) and globally (against the assembled operator); the two routes
/// must agree for block-diagonal conditions.
ClassifyReport classify(const MetricGraph& g, const BoundaryOperator& bc, double tol = 1e-10);

/// Draws a Krein-unitary block for a balanced vertex: with B = S^* J S on
/// both sides, L = S_l^{-1} exp(J A) S_r for a random skew-Hermitian A.
/// Deterministic for a fixed seed; throws if the vertex is unbalanced.
Eigen::MatrixXcd sample_unitary(const MetricGraph& g, const std::string& vertex,
                                std::uint64_t seed);

/// Draws a block that is contractive together with its adjoint. In
/// J-coordinates M = U1 diag(P, Q) U2 with J-unitary U1, U2, P shrunk to
/// singular values 1 - strictness/2 and Q expanded to 1 + strictness/2;
/// strictness 0 reproduces the unitary case.
Eigen::MatrixXcd sample_bicontraction(const MetricGraph& g, const std::string& vertex,
                                      std::uint64_t seed, double strictness);

struct BuiltinCase {
    MetricGraph graph;
    BoundaryOperator bc;
};

/// Named example setups:
///   two_halflines_unitary      the coupled pair of half-lines with the
///                              sqrt(2) lower-triangular condition
///   star(n_in,n_out)           half-line star; canonical Krein-unitary
///                              block when balanced, zero block otherwise
///   loop_periodic              unit loop, identity condition
///   loop_periodic(alpha,beta)  same with explicit coefficients
///   loop_diag(a,b)             unit loop with diag(a, b, 1/a)
BuiltinCase builtin(const std::string& name);

/// Replaces every semi-infinite edge end by a finite endpoint at distance
/// `length` and closes the new ends: pairs of (new left, new right) ends
/// are joined at fresh vertices with the absorbing block diag(1, 0, 1);
/// leftover new left ends get zero-trace (3x0) closures. A leftover new
/// right end admits no everywhere-defined dissipative closure and is an
/// error. Finite graphs pass through unchanged.
BuiltinCase truncate_halflines(const MetricGraph& g, const BoundaryOperator& bc, double length);

}  // namespace airynet
