#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <utility>
#include <vector>

#include "bifree/model.hpp"

namespace bifree {

using SparseC = Eigen::SparseMatrix<cplx>;

/// Truncated full Fock space over a 2-dimensional one-particle space.
/// Basis: words over {e1,e2} of length <= depth, indexed level by level as
/// index(W) = 2^n - 1 + value(W) for |W| = n, where value reads the word as
/// binary with the FIRST letter in the most significant bit (e1 = 0, e2 = 1).
/// Creation out of the top level truncates to zero, so X1 and X2 below are
/// self-adjoint compressions of the infinite-dimensional operators; every
/// exactness claim is restricted to the safe zone of words of length <= N-2,
/// which the truncation edge cannot reach in one application.
struct TruncatedFock {
    ModelConfig config;
    int depth = 0;         // N
    std::int64_t dim = 0;  // 2^(N+1) - 1

    // realized vectors: v1 = norm1 e1, v2 = c e1 + d e2
    cplx c;         // conj(alpha)/norm1, so that <v1,v2> = alpha
    double d = 0.;  // sqrt(norm2^2 - |c|^2) >= 0

    SparseC X1;  // l(v1) + l(v1)^*
    SparseC X2;  // r(v2) + r(v2)^*

    Eigen::VectorXcd omega() const;  // vacuum coordinate vector

    std::int64_t level_offset(int n) const {
        return (std::int64_t(1) << n) - 1;
    }
};

/// Assembles the word basis matrices.  Throws on an invalid config or
/// depth < 2.  The first call in a process also runs the inner-product
/// convention self-test (phi(X1 X2) == <v2,v1>) and aborts via
/// std::logic_error if the build ever stops honoring it.
TruncatedFock build_model(const ModelConfig& cfg, int depth);

enum class Op { X1, X2 };

/// Exact mixed vacuum moment phi(op_1 ... op_k).  Words of length <= N-1
/// never touch the truncation edge; longer words throw.
cplx vacuum_expectation(const TruncatedFock& m, const std::vector<Op>& word);

/// <(t1 - X1)^-1 (t2 - X2)^-1 Omega, Omega> by two sparse direct solves.
/// Converges geometrically in depth to the closed-form Green's function;
/// the observed error decay per unit depth is max(|q(t1/norm1)|,
/// |q(t2/norm2)|)^2, the continued-fraction squared rate, which is inside
/// the advertised max(...)^N bound.  Throws on a singular solve.
cplx green_numeric(const TruncatedFock& m, cplx t1, cplx t2);

/// The rank-one determinant formula
///   1 - 2 Im<v2,v1> i phi((X2 - l)^-1 (X1 - s)^-1),
/// again two sparse solves.  Exactly 1 when Im alpha = 0.
cplx det_E_numeric(const TruncatedFock& m, cplx l, cplx s);

/// Cross-check path: the honest finite-dimensional determinant of
/// (X2-l)(X1-s)(X2-l)^-1(X1-s)^-1.  In finite dimensions this is
/// identically 1 (det AB = det BA), so the interesting number is the gap to
/// the rank-one value above: that gap is exactly what truncation costs.
/// Dense log-det evaluation, so keep depth <= 8.
struct DetECrossCheck {
    cplx finite_det;        // computed, lands at 1 up to roundoff
    cplx rank_one;          // det_E_numeric at the same point
    double truncation_gap;  // |finite_det - rank_one|
};
DetECrossCheck det_E_cross_check(const TruncatedFock& m, cplx l, cplx s);

/// Coordinate vector of the level-n word slot_1 (x) ... (x) slot_n, each slot
/// a vector in span{e1,e2}.
Eigen::VectorXcd tensor_word(const TruncatedFock& m,
                             const std::vector<Eigen::Vector2cd>& slots);

/// One level of the two graded orthogonal bases of the pure part:
///   B_n  = { v1^n, v1^(n-1) u, v1^(n-2) u v2, ..., u v2^(n-1) }
///   B'_n = { v2^n, w v2^(n-1), v1 w v2^(n-2), ..., v1^(n-1) w }
/// (tensor signs dropped).  u is the unit vector orthogonal to v1 in
/// span(v1,v2); w is the unit vector in that plane with <v2,w> = 0.  Both
/// lists are pairwise orthogonal and span the same (n+1)-dimensional piece.
struct PurePartBasis {
    int level = 0;
    std::vector<Eigen::VectorXcd> vectors;
    Eigen::Vector2cd u;
    Eigen::Vector2cd w;
};

/// Requires ||v1|| = 1 (the basis formulas are stated under that hypothesis
/// and w depends on it), linearly independent v1, v2, alpha != 0 (otherwise
/// c = 0 and w degenerates), and 1 <= n <= depth.
std::pair<PurePartBasis, PurePartBasis> pure_part_basis(const TruncatedFock& m,
                                                        int n);

/// Orthonormal basis (columns) of span{ W Omega : W a word in X1, X2 of
/// length <= d }.  Requires d <= depth - 1 so no generator is clipped.
Eigen::MatrixXcd krylov_pure_part(const TruncatedFock& m, int d);

/// Intersection of span(Q) with the level-n coordinate block: an orthonormal
/// basis of the vectors in span(Q) supported entirely on words of length n.
Eigen::MatrixXcd intersect_level(const TruncatedFock& m,
                                 const Eigen::MatrixXcd& Q, int n);

/// Largest principal angle between the column spans.  Uses the sine-based
/// formulation for small angles, so numerically equal subspaces report
/// ~1e-15 instead of the ~1e-8 acos() floor.  Returns pi/2 on a dimension
/// mismatch.
double max_principal_angle(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

/// Residuals for the normal reducing subspace spanned by the words
/// v1^(k) u w v2^(l): applying X1 or X2 to the (m_idx, n_idx) generator must
/// stay inside that span, and [X1, X2] must annihilate it.
struct ReducingReport {
    double closure_residual_x1 = 0.0;
    double closure_residual_x2 = 0.0;
    double commutator_residual = 0.0;
};

/// Requires m_idx + n_idx + 2 <= depth - 2 so both operator applications
/// stay clear of the truncation edge.
ReducingReport reducing_subspace_check(const TruncatedFock& m, int m_idx,
                                       int n_idx);

/// Eigenvalues of the truncated T = X1 + i X2.  Dense non-normal eigensolve;
/// refuses depth > 10 (dim 2047) to keep it tractable.
Eigen::VectorXcd spectrum_T(const TruncatedFock& m);

}  // namespace bifree
