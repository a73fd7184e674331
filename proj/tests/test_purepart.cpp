#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bifree/fock.hpp"

using namespace bifree;

namespace {

const ModelConfig kCfg{1.0, 1.0, {0.0, 0.5}};

Eigen::MatrixXcd stack(const TruncatedFock& m, const PurePartBasis& b) {
    Eigen::MatrixXcd M(m.dim, b.vectors.size());
    for (std::size_t k = 0; k < b.vectors.size(); ++k) M.col(k) = b.vectors[k];
    return M;
}

double worst_offdiag_overlap(const std::vector<Eigen::VectorXcd>& v) {
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            worst = std::fmax(
                worst, std::abs(v[i].dot(v[j])) / (v[i].norm() * v[j].norm()));
    return worst;
}

}  // namespace

TEST_CASE("level one bases are the defining vectors") {
    TruncatedFock m = build_model(kCfg, 4);
    const auto [B, Bp] = pure_part_basis(m, 1);
    REQUIRE(B.vectors.size() == 2);
    REQUIRE(Bp.vectors.size() == 2);

    Eigen::VectorXcd v1 = Eigen::VectorXcd::Zero(m.dim);
    v1(1) = 1.0;  // e1 at level 1
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(m.dim);
    u(2) = 1.0;  // e2 at level 1
    Eigen::VectorXcd v2 = m.c * v1 + m.d * u;

    CHECK((B.vectors[0] - v1).norm() < 1e-15);
    CHECK((B.vectors[1] - u).norm() < 1e-15);
    CHECK((Bp.vectors[0] - v2).norm() < 1e-15);
    // w is the unit vector of the plane with <v2, w> = 0
    CHECK(std::abs(Bp.vectors[1].dot(v2)) < 1e-15);
    CHECK(std::abs(Bp.vectors[1].norm() - 1.0) < 1e-14);
}

TEST_CASE("each level's lists are orthogonal with equal spans") {
    TruncatedFock m = build_model(kCfg, 6);
    for (int n = 1; n <= 4; ++n) {
        const auto [B, Bp] = pure_part_basis(m, n);
        CHECK(B.vectors.size() == std::size_t(n) + 1);
        CHECK(Bp.vectors.size() == std::size_t(n) + 1);
        CHECK(worst_offdiag_overlap(B.vectors) < 1e-13);
        CHECK(worst_offdiag_overlap(Bp.vectors) < 1e-13);
        CHECK(max_principal_angle(stack(m, B), stack(m, Bp)) < 1e-12);
    }
}

TEST_CASE("level two normal leftover") {
    TruncatedFock m = build_model(kCfg, 4);
    const auto [B, Bp] = pure_part_basis(m, 2);
    std::vector<Eigen::Vector2cd> uw{B.u, B.w};
    const Eigen::VectorXcd uxw = tensor_word(m, uw);
    for (const auto& b : B.vectors)
        CHECK(std::abs(uxw.dot(b)) / b.norm() < 1e-14);
    for (const auto& b : Bp.vectors)
        CHECK(std::abs(uxw.dot(b)) / b.norm() < 1e-14);
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(pure_part_basis(build_model(ModelConfig{1.5, 1.0, {0.0, 0.5}}, 4), 1),
                    std::invalid_argument);  // norm1 != 1
    CHECK_THROWS_AS(pure_part_basis(build_model(ModelConfig{1.0, 1.0, {0.0, 1.0}}, 4), 1),
                    std::invalid_argument);  // dependent
    CHECK_THROWS_AS(pure_part_basis(build_model(ModelConfig{1.0, 1.0, {0.0, 0.0}}, 4), 1),
                    std::invalid_argument);  // alpha = 0
    TruncatedFock m = build_model(kCfg, 4);
    CHECK_THROWS_AS(pure_part_basis(m, 0), std::invalid_argument);
    CHECK_THROWS_AS(pure_part_basis(m, 5), std::invalid_argument);
}

TEST_CASE("krylov ladder") {
    TruncatedFock m = build_model(kCfg, 6);

    SUBCASE("length zero is the vacuum line") {
        const Eigen::MatrixXcd Q = krylov_pure_part(m, 0);
        REQUIRE(Q.cols() == 1);
        CHECK(std::abs(std::abs(Q.col(0)(0)) - 1.0) < 1e-14);
    }

    SUBCASE("level slices match the graded bases") {
        const Eigen::MatrixXcd Q = krylov_pure_part(m, 4);
        CHECK(Q.cols() == 15);  // sum of (n+1) for n = 0..4
        for (int n = 1; n <= 4; ++n) {
            const Eigen::MatrixXcd K = intersect_level(m, Q, n);
            CHECK(K.cols() == n + 1);
            const auto [B, Bp] = pure_part_basis(m, n);
            CHECK(max_principal_angle(K, stack(m, B)) < 1e-10);
            CHECK(max_principal_angle(K, stack(m, Bp)) < 1e-10);
        }
    }

    SUBCASE("normal-part generators stay orthogonal to the whole span") {
        const Eigen::MatrixXcd Q = krylov_pure_part(m, 4);
        const auto [B1, B1p] = pure_part_basis(m, 1);
        const Eigen::Vector2cd v1(cplx(1.0, 0.0), cplx(0.0, 0.0));
        const Eigen::Vector2cd v2(m.c, cplx(m.d, 0.0));
        for (int mi = 0; mi <= 2; ++mi)
            for (int ni = 0; mi + ni <= 2; ++ni) {
                std::vector<Eigen::Vector2cd> slots;
                for (int k = 0; k < mi; ++k) slots.push_back(v1);
                slots.push_back(B1.u);
                slots.push_back(B1.w);
                for (int k = 0; k < ni; ++k) slots.push_back(v2);
                const Eigen::VectorXcd g = tensor_word(m, slots);
                CHECK((Q.adjoint() * g).norm() / g.norm() < 1e-10);
            }
    }
}

TEST_CASE("angle metric behaves at both extremes") {
    TruncatedFock m = build_model(kCfg, 5);
    const auto [B, Bp] = pure_part_basis(m, 2);
    const Eigen::MatrixXcd A = stack(m, B);
    CHECK(max_principal_angle(A, A) < 1e-12);
    const auto [B3, B3p] = pure_part_basis(m, 3);
    CHECK(max_principal_angle(A, stack(m, B3)) ==
          doctest::Approx(1.5707963267948966));  // dim mismatch
    // same dimension, orthogonal spans: a right angle measured, not declared
    Eigen::MatrixXcd C = stack(m, B3).leftCols(3);
    CHECK(max_principal_angle(A, C) == doctest::Approx(1.5707963267948966));
}

TEST_CASE("reducing subspace closure and normality") {
    TruncatedFock m = build_model(kCfg, 6);
    const ReducingReport r00 = reducing_subspace_check(m, 0, 0);
    CHECK(r00.closure_residual_x1 < 1e-13);
    CHECK(r00.closure_residual_x2 < 1e-13);
    CHECK(r00.commutator_residual < 1e-13);

    const ReducingReport r11 = reducing_subspace_check(m, 1, 1);
    CHECK(r11.closure_residual_x1 < 1e-12);
    CHECK(r11.closure_residual_x2 < 1e-12);
    CHECK(r11.commutator_residual < 1e-12);

    // longer prefix needs a deeper safe zone
    CHECK_THROWS_AS(reducing_subspace_check(m, 2, 1), std::invalid_argument);
    TruncatedFock deep = build_model(kCfg, 8);
    const ReducingReport r20 = reducing_subspace_check(deep, 2, 0);
    CHECK(r20.closure_residual_x1 < 1e-12);
    CHECK(r20.closure_residual_x2 < 1e-12);
    CHECK(r20.commutator_residual < 1e-12);
}
