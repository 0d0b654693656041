#pragma once

#include <Eigen/Dense>

#include "airynet/graph.hpp"

namespace airynet {

/// A trace vector: one (value, first derivative, second derivative) triple
/// per edge endpoint of one side, flattened in layout order.
struct TraceVector {
    Side side = Side::Left;
    Eigen::VectorXcd values;
};

/// The indefinite Hermitian form on one boundary trace space. Block
/// diagonal with the 3x3 block
///
///     [ -beta   0   -alpha ]
///     [   0   alpha    0   ]
///     [ -alpha  0      0   ]
///
/// per edge of the side; every block has signature (2, 1). The inner
/// product convention throughout is <x|y> = y^* B x, linear in the first
/// argument. The adjoint and unitarity formulas below depend on this
/// choice.
struct KreinForm {
    Side side = Side::Left;
    TraceLayout layout;
    Eigen::MatrixXcd matrix;

    Eigen::Index dimension() const { return matrix.rows(); }
};

/// The 3x3 boundary form block of a single edge.
Eigen::Matrix3cd form_block(double alpha, double beta);

/// Builds the block-diagonal form of a whole side of the graph.
KreinForm build_form(const MetricGraph& g, Side side);

/// Builds the form restricted to the edges incident at one vertex
/// (E_{l,v} or E_{r,v} blocks only).
KreinForm build_vertex_form(const MetricGraph& g, const std::string& v, Side side);

/// <x|y> = y^* B x. Conjugate symmetric since B is Hermitian.
Complex krein_inner(const KreinForm& form, const TraceVector& x, const TraceVector& y);
Complex krein_inner(const KreinForm& form, const Eigen::VectorXcd& x, const Eigen::VectorXcd& y);

/// Counts of positive and negative eigenvalues. The forms here are always
/// invertible; an eigenvalue below 1e-12 * ||B|| in magnitude signals
/// corrupt input and throws.
struct Signature {
    int n_plus = 0;
    int n_minus = 0;
    bool operator==(const Signature&) const = default;
};
Signature signature(const KreinForm& form);

/// The adjoint with respect to the two indefinite forms:
/// L# = B_r^{-1} L^* B_l, the unique matrix with <Lx|y>_l = <x|L#y>_r.
/// L maps the right trace space into the left one; L# maps back.
Eigen::MatrixXcd krein_adjoint(const KreinForm& form_right, const KreinForm& form_left,
                               const Eigen::MatrixXcd& l);

struct UnitaryCertificate {
    bool unitary = false;
    double form_residual = 0.0;     // || L^* B_out L - B_in ||_F
    double relative_residual = 0.0; // form_residual / ||B_in||_F
    double min_singular_value = 0.0;
    double max_singular_value = 0.0;
    double tolerance = 0.0;
    std::string reason;  // set when the verdict is false
};

struct ContractionCertificate {
    bool contractive = false;
    double min_eigenvalue = 0.0;  // smallest eigenvalue of B_in - L^* B_out L
    double scale = 0.0;           // spectral norm of B_in
    double tolerance = 0.0;
};

/// Krein unitarity in finite dimensions: equal dimensions, invertibility
/// (smallest singular value above tol * largest) and the form identity
/// L^* B_out L = B_in up to tol * ||B_in||. Dense domain and range are
/// automatic here, so this is equivalent to the operator-theoretic
/// definition.
UnitaryCertificate is_krein_unitary(const KreinForm& form_in, const KreinForm& form_out,
                                    const Eigen::MatrixXcd& l, double tol = 1e-10);

/// Krein contraction: B_in - L^* B_out L positive semidefinite up to
/// -tol * ||B_in|| on the smallest eigenvalue.
ContractionCertificate is_krein_contractive(const KreinForm& form_in, const KreinForm& form_out,
                                            const Eigen::MatrixXcd& l, double tol = 1e-10);

/// Whether any Krein-unitary map between the two trace spaces exists:
/// equal dimension and equal signature. For these forms that reduces to
/// equally many edges on both sides.
bool exists_unitary(const KreinForm& form_in, const KreinForm& form_out);

/// Congruence factor B = S^* J S with J = diag(I_{2m}, -I_m), computed from
/// the eigendecomposition with eigenvalues sorted descending (positive
/// first). Used by the boundary-condition samplers.
struct JFactor {
    Eigen::MatrixXcd s;
    Eigen::VectorXd j;  // +1 / -1 diagonal
};
JFactor j_factor(const KreinForm& form);

}  // namespace airynet
