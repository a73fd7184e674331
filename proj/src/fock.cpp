#include "bifree/fock.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/SparseLU>

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bifree {

namespace {

constexpr int kMaxDepth = 24;

SparseC shifted(const SparseC& X, cplx t) {
    SparseC I(X.rows(), X.cols());
    I.setIdentity();
    return SparseC(X - t * I);
}

/// (X - t)^-1 b.  The word graph of X1 is a forest of paths and that of X2 a
/// binary tree, so the sparse factorization stays near-linear in dim.
Eigen::VectorXcd resolvent_apply(const SparseC& X, cplx t,
                                 const Eigen::VectorXcd& b) {
    SparseC A = shifted(X, t);
    Eigen::SparseLU<SparseC> lu(A);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("resolvent_apply: factorization failed");
    Eigen::VectorXcd x = lu.solve(b);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("resolvent_apply: solve failed");
    return x;
}

TruncatedFock assemble(const ModelConfig& cfg, int depth) {
    TruncatedFock m;
    m.config = cfg;
    m.depth = depth;
    m.dim = (std::int64_t(1) << (depth + 1)) - 1;
    m.c = std::conj(cfg.alpha) / cfg.norm1;
    m.d = std::sqrt(std::fmax(cfg.norm2 * cfg.norm2 - std::norm(m.c), 0.0));

    using Trip = Eigen::Triplet<cplx>;
    std::vector<Trip> t1, t2;
    t1.reserve(std::size_t(2) * m.dim);
    t2.reserve(std::size_t(4) * m.dim);
    const cplx n1(cfg.norm1, 0.0);
    const cplx cd(m.d, 0.0);
    for (int n = 0; n < depth; ++n) {
        const std::int64_t off = (std::int64_t(1) << n) - 1;
        const std::int64_t offp = (std::int64_t(1) << (n + 1)) - 1;
        for (std::int64_t v = 0; v < (std::int64_t(1) << n); ++v) {
            // prepend e1: new leading bit 0, value unchanged
            t1.emplace_back(offp + v, off + v, n1);
            t1.emplace_back(off + v, offp + v, n1);
            // append e1 (trailing bit 0, weight c) or e2 (trailing bit 1, d)
            t2.emplace_back(offp + 2 * v, off + v, m.c);
            t2.emplace_back(off + v, offp + 2 * v, std::conj(m.c));
            t2.emplace_back(offp + 2 * v + 1, off + v, cd);
            t2.emplace_back(off + v, offp + 2 * v + 1, cd);
        }
    }
    m.X1.resize(m.dim, m.dim);
    m.X1.setFromTriplets(t1.begin(), t1.end());
    m.X2.resize(m.dim, m.dim);
    m.X2.setFromTriplets(t2.begin(), t2.end());
    return m;
}

cplx moment(const TruncatedFock& m, const std::vector<Op>& word) {
    Eigen::VectorXcd v = m.omega();
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        v = (*it == Op::X1 ? m.X1 : m.X2) * v;
    return v(0);
}

// phi(X1 X2) = <v2,v1> and phi(X2 X1) = <v1,v2> pin the inner product as
// conjugate-linear in the second slot; a sign slip anywhere in the assembly
// swaps the two.
void convention_self_test() {
    const ModelConfig probe{1.0, 1.0, cplx(0.3, 0.7)};
    TruncatedFock m = assemble(probe, 4);
    const cplx m12 = moment(m, {Op::X1, Op::X2});
    const cplx m21 = moment(m, {Op::X2, Op::X1});
    if (std::abs(m12 - std::conj(probe.alpha)) > 1e-12 ||
        std::abs(m21 - probe.alpha) > 1e-12)
        throw std::logic_error(
            "fock assembly violates the inner-product convention");
}

}  // namespace

Eigen::VectorXcd TruncatedFock::omega() const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(0) = 1.0;
    return v;
}

TruncatedFock build_model(const ModelConfig& cfg, int depth) {
    if (!cfg.valid()) throw std::invalid_argument("build_model: invalid config");
    if (depth < 2) throw std::invalid_argument("build_model: depth < 2");
    if (depth > kMaxDepth)
        throw std::invalid_argument("build_model: depth > 24");

    static std::atomic<bool> tested{false};
    if (!tested.exchange(true)) convention_self_test();
    return assemble(cfg, depth);
}

cplx vacuum_expectation(const TruncatedFock& m, const std::vector<Op>& word) {
    if (static_cast<int>(word.size()) > m.depth - 1)
        throw std::invalid_argument(
            "vacuum_expectation: word reaches the truncation edge");
    return moment(m, word);
}

cplx green_numeric(const TruncatedFock& m, cplx t1, cplx t2) {
    // (t1-X1)^-1 (t2-X2)^-1 == (X1-t1)^-1 (X2-t2)^-1, signs cancel in pairs
    Eigen::VectorXcd u = resolvent_apply(m.X2, t2, m.omega());
    Eigen::VectorXcd w = resolvent_apply(m.X1, t1, u);
    return w(0);
}

cplx det_E_numeric(const TruncatedFock& m, cplx l, cplx s) {
    const double im21 = m.config.v21().imag();
    if (im21 == 0.0) return {1.0, 0.0};
    Eigen::VectorXcd u = resolvent_apply(m.X1, s, m.omega());
    Eigen::VectorXcd w = resolvent_apply(m.X2, l, u);
    return 1.0 - 2.0 * im21 * cplx(0.0, 1.0) * w(0);
}

namespace {

// log det via LU; the determinant itself overflows for dim in the hundreds
cplx log_det(const Eigen::MatrixXcd& A, int* parity) {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    cplx ld = 0.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        ld += std::log(lu.matrixLU()(i, i));
    *parity = static_cast<int>(lu.permutationP().determinant());
    return ld;
}

}  // namespace

DetECrossCheck det_E_cross_check(const TruncatedFock& m, cplx l, cplx s) {
    if (m.depth > 8)
        throw std::invalid_argument("det_E_cross_check: depth > 8 is dense");
    Eigen::MatrixXcd M1 = Eigen::MatrixXcd(m.X1);
    Eigen::MatrixXcd M2 = Eigen::MatrixXcd(m.X2);
    M1.diagonal().array() -= s;
    M2.diagonal().array() -= l;

    // det(M2 M1 M2^-1 M1^-1) = det(M2 M1) / det(M1 M2)
    int p1 = 0, p2 = 0;
    const cplx ld1 = log_det(M2 * M1, &p1);
    const cplx ld2 = log_det(M1 * M2, &p2);

    DetECrossCheck out;
    out.finite_det = double(p1 * p2) * std::exp(ld1 - ld2);
    out.rank_one = det_E_numeric(m, l, s);
    out.truncation_gap = std::abs(out.finite_det - out.rank_one);
    return out;
}

Eigen::VectorXcd tensor_word(const TruncatedFock& m,
                             const std::vector<Eigen::Vector2cd>& slots) {
    const int n = static_cast<int>(slots.size());
    if (n > m.depth)
        throw std::invalid_argument("tensor_word: word longer than depth");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(m.dim);
    const std::int64_t off = (std::int64_t(1) << n) - 1;
    for (std::int64_t w = 0; w < (std::int64_t(1) << n); ++w) {
        cplx coef = 1.0;
        for (int p = 0; p < n; ++p)
            coef *= slots[p](static_cast<int>((w >> (n - 1 - p)) & 1));
        v(off + w) = coef;
    }
    return v;
}

namespace {

Eigen::Vector2cd v1_coord(const TruncatedFock& m) {
    return {cplx(m.config.norm1, 0.0), cplx(0.0, 0.0)};
}

Eigen::Vector2cd v2_coord(const TruncatedFock& m) {
    return {m.c, cplx(m.d, 0.0)};
}

// unit vector in span{e1,e2} with <w_perp, v2> = 0; parallel to the
// documented w when norm1 = 1, up to phase, which no span test can see
Eigen::Vector2cd v2_perp(const TruncatedFock& m) {
    Eigen::Vector2cd w(cplx(m.d, 0.0), -std::conj(m.c));
    return w / std::sqrt(std::norm(w(0)) + std::norm(w(1)));
}

}  // namespace

std::pair<PurePartBasis, PurePartBasis> pure_part_basis(const TruncatedFock& m,
                                                        int n) {
    const ModelConfig& cfg = m.config;
    if (std::abs(cfg.norm1 - 1.0) > 1e-12)
        throw std::invalid_argument("pure_part_basis: requires ||v1|| = 1");
    if (!cfg.independent())
        throw std::invalid_argument("pure_part_basis: dependent vectors");
    if (std::abs(cfg.alpha) == 0.0)
        throw std::invalid_argument("pure_part_basis: alpha = 0 degenerates w");
    if (n < 1 || n > m.depth)
        throw std::invalid_argument("pure_part_basis: level out of range");

    const Eigen::Vector2cd v1 = v1_coord(m);
    const Eigen::Vector2cd v2 = v2_coord(m);
    const Eigen::Vector2cd u(cplx(0.0, 0.0), cplx(1.0, 0.0));
    Eigen::Vector2cd w = (m.c / std::norm(m.c)) * v1 - (1.0 / m.d) * u;
    w /= std::sqrt(std::norm(w(0)) + std::norm(w(1)));

    PurePartBasis B, Bp;
    B.level = Bp.level = n;
    B.u = Bp.u = u;
    B.w = Bp.w = w;

    // B_n: v1^n, then v1^(n-1-j) u v2^j for j = 0..n-1
    {
        std::vector<Eigen::Vector2cd> slots(n, v1);
        B.vectors.push_back(tensor_word(m, slots));
    }
    for (int j = 0; j < n; ++j) {
        std::vector<Eigen::Vector2cd> slots;
        for (int k = 0; k < n - 1 - j; ++k) slots.push_back(v1);
        slots.push_back(u);
        for (int k = 0; k < j; ++k) slots.push_back(v2);
        B.vectors.push_back(tensor_word(m, slots));
    }
    // B'_n: v2^n, then v1^j w v2^(n-1-j) for j = 0..n-1
    {
        std::vector<Eigen::Vector2cd> slots(n, v2);
        Bp.vectors.push_back(tensor_word(m, slots));
    }
    for (int j = 0; j < n; ++j) {
        std::vector<Eigen::Vector2cd> slots;
        for (int k = 0; k < j; ++k) slots.push_back(v1);
        slots.push_back(w);
        for (int k = 0; k < n - 1 - j; ++k) slots.push_back(v2);
        Bp.vectors.push_back(tensor_word(m, slots));
    }
    return {B, Bp};
}

Eigen::MatrixXcd krylov_pure_part(const TruncatedFock& m, int d) {
    if (d < 0 || d > m.depth - 1)
        throw std::invalid_argument("krylov_pure_part: need 0 <= d <= depth-1");

    std::vector<Eigen::VectorXcd> all;
    all.push_back(m.omega());
    std::size_t lo = 0;
    for (int len = 1; len <= d; ++len) {
        const std::size_t hi = all.size();
        for (std::size_t k = lo; k < hi; ++k) {
            all.push_back(m.X1 * all[k]);
            all.push_back(m.X2 * all[k]);
        }
        lo = hi;
    }
    Eigen::MatrixXcd M(m.dim, all.size());
    for (std::size_t k = 0; k < all.size(); ++k) M.col(k) = all[k];

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double cut = 1e-8 * sv(0);
    int rank = 0;
    while (rank < sv.size() && sv(rank) > cut) ++rank;
    return svd.matrixU().leftCols(rank);
}

Eigen::MatrixXcd intersect_level(const TruncatedFock& m,
                                 const Eigen::MatrixXcd& Q, int n) {
    if (n < 0 || n > m.depth)
        throw std::invalid_argument("intersect_level: level out of range");
    const std::int64_t off = m.level_offset(n);
    const std::int64_t len = std::int64_t(1) << n;

    // x = Q y is supported on level n  iff  the off-level rows kill y
    Eigen::MatrixXcd off_rows(m.dim - len, Q.cols());
    off_rows.topRows(off) = Q.topRows(off);
    off_rows.bottomRows(m.dim - off - len) = Q.bottomRows(m.dim - off - len);

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(off_rows, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int null_from = 0;
    while (null_from < sv.size() && sv(null_from) > 1e-10) ++null_from;
    const Eigen::Index null_dim = Q.cols() - null_from;
    // columns of Q are orthonormal, so Q * (orthonormal Y) stays orthonormal
    return Q * svd.matrixV().rightCols(null_dim);
}

double max_principal_angle(const Eigen::MatrixXcd& A,
                           const Eigen::MatrixXcd& B) {
    if (A.cols() != B.cols()) return 1.5707963267948966;
    if (A.cols() == 0) return 0.0;

    Eigen::HouseholderQR<Eigen::MatrixXcd> qa(A), qb(B);
    Eigen::MatrixXcd Qa =
        qa.householderQ() * Eigen::MatrixXcd::Identity(A.rows(), A.cols());
    Eigen::MatrixXcd Qb =
        qb.householderQ() * Eigen::MatrixXcd::Identity(B.rows(), B.cols());

    Eigen::MatrixXcd C = Qa.adjoint() * Qb;
    Eigen::BDCSVD<Eigen::MatrixXcd> csvd(C);
    const double cos_min = csvd.singularValues().minCoeff();
    if (cos_min * cos_min < 0.5)
        return std::acos(std::min(cos_min, 1.0));

    // small angle: acos loses half the digits, the sine residual does not
    Eigen::MatrixXcd S = Qb - Qa * C;
    Eigen::BDCSVD<Eigen::MatrixXcd> ssvd(S);
    return std::asin(std::min(ssvd.singularValues().maxCoeff(), 1.0));
}

ReducingReport reducing_subspace_check(const TruncatedFock& m, int m_idx,
                                       int n_idx) {
    if (m_idx < 0 || n_idx < 0 || m_idx + n_idx + 2 > m.depth - 2)
        throw std::invalid_argument(
            "reducing_subspace_check: word too long for the safe zone");
    if (!m.config.independent() || std::abs(m.config.alpha) == 0.0)
        throw std::invalid_argument(
            "reducing_subspace_check: needs independent vectors and alpha != 0");

    const Eigen::Vector2cd v1 = v1_coord(m);
    const Eigen::Vector2cd v2 = v2_coord(m);
    const Eigen::Vector2cd u(cplx(0.0, 0.0), cplx(1.0, 0.0));
    const Eigen::Vector2cd w = v2_perp(m);

    auto generator = [&](int mi, int ni) {
        std::vector<Eigen::Vector2cd> slots;
        for (int k = 0; k < mi; ++k) slots.push_back(v1);
        slots.push_back(u);
        slots.push_back(w);
        for (int k = 0; k < ni; ++k) slots.push_back(v2);
        return tensor_word(m, slots);
    };

    // orthonormal span of the neighboring generators; the vectors live on
    // distinct levels or differ in the u/w interior, hence are orthogonal
    std::vector<Eigen::VectorXcd> basis;
    for (int i = 0; i <= m_idx + 1; ++i)
        for (int j = 0; j <= n_idx + 1; ++j) basis.push_back(generator(i, j));
    Eigen::MatrixXcd Q(m.dim, basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k)
        Q.col(k) = basis[k] / basis[k].norm();

    const Eigen::VectorXcd g = generator(m_idx, n_idx);
    const double gn = g.norm();

    auto residual_outside = [&](const Eigen::VectorXcd& x) {
        Eigen::VectorXcd r = x - Q * (Q.adjoint() * x);
        return r.norm() / gn;
    };

    ReducingReport rep;
    rep.closure_residual_x1 = residual_outside(m.X1 * g);
    rep.closure_residual_x2 = residual_outside(m.X2 * g);
    rep.commutator_residual =
        (m.X1 * (m.X2 * g) - m.X2 * (m.X1 * g)).norm() / gn;
    return rep;
}

Eigen::VectorXcd spectrum_T(const TruncatedFock& m) {
    if (m.depth > 10)
        throw std::invalid_argument("spectrum_T: depth > 10 is a dense "
                                    "eigensolve past 2000x2000, refused");
    Eigen::MatrixXcd T =
        Eigen::MatrixXcd(m.X1) + cplx(0.0, 1.0) * Eigen::MatrixXcd(m.X2);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(T, false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("spectrum_T: eigensolver failed");
    return es.eigenvalues();
}

}  // namespace bifree
