#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bifree/fock.hpp"
#include "bifree/principal.hpp"

using namespace bifree;

namespace {
const ModelConfig kCfg{1.0, 1.0, {0.0, 0.5}};
}

TEST_CASE("dimensions and vacuum") {
    TruncatedFock m = build_model(kCfg, 2);
    CHECK(m.dim == 7);
    CHECK(m.level_offset(2) == 3);
    CHECK(m.omega()(0) == cplx(1.0, 0.0));
    CHECK(build_model(kCfg, 6).dim == 127);
    CHECK_THROWS_AS(build_model(kCfg, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_model(ModelConfig{1.0, 1.0, {5.0, 0.0}}, 4),
                    std::invalid_argument);
}

TEST_CASE("realized vectors reproduce the pairing") {
    TruncatedFock m = build_model(ModelConfig{1.5, 0.9, {0.3, -0.2}}, 4);
    // <v1,v2> = norm1 * conj(c) must give back alpha
    CHECK(std::abs(m.config.norm1 * std::conj(m.c) - m.config.alpha) < 1e-15);
    CHECK(std::abs(std::norm(m.c) + m.d * m.d -
                   m.config.norm2 * m.config.norm2) < 1e-15);
    CHECK(m.d >= 0.0);
}

TEST_CASE("operators are hermitian") {
    TruncatedFock m = build_model(ModelConfig{1.2, 0.8, {0.4, 0.3}}, 5);
    CHECK((Eigen::MatrixXcd(m.X1) - Eigen::MatrixXcd(m.X1).adjoint()).norm() ==
          0.0);
    CHECK((Eigen::MatrixXcd(m.X2) - Eigen::MatrixXcd(m.X2).adjoint()).norm() ==
          0.0);
}

TEST_CASE("second and fourth moments") {
    const ModelConfig cfg{1.3, 0.7, {0.25, -0.35}};
    TruncatedFock m = build_model(cfg, 6);
    const Op a = Op::X1, b = Op::X2;
    CHECK(std::abs(vacuum_expectation(m, {a, a}) - cfg.norm1 * cfg.norm1) <
          1e-13);
    CHECK(std::abs(vacuum_expectation(m, {b, b}) - cfg.norm2 * cfg.norm2) <
          1e-13);
    CHECK(std::abs(vacuum_expectation(m, {a, b}) - std::conj(cfg.alpha)) <
          1e-13);
    CHECK(std::abs(vacuum_expectation(m, {b, a}) - cfg.alpha) < 1e-13);
    CHECK(std::abs(vacuum_expectation(m, {a, a, a, a}) -
                   2.0 * std::pow(cfg.norm1, 4)) < 1e-13);
    CHECK(std::abs(vacuum_expectation(m, {a})) == 0.0);
    CHECK(std::abs(vacuum_expectation(m, {a, b, a})) < 1e-15);
    CHECK_THROWS_AS(vacuum_expectation(m, std::vector<Op>(6, a)),
                    std::invalid_argument);
}

TEST_CASE("commutator is the scaled vacuum projection on the safe zone") {
    const ModelConfig cfg{1.1, 0.9, {0.2, 0.6}};
    TruncatedFock m = build_model(cfg, 6);
    Eigen::MatrixXcd K = Eigen::MatrixXcd(m.X1 * m.X2 - m.X2 * m.X1);
    // [X1,X2] = 2i Im<v2,v1> P = -2i Im(alpha) P
    K(0, 0) -= cplx(0.0, -2.0 * cfg.alpha.imag());
    double worst = 0.0;
    for (std::int64_t k = 0; k < m.level_offset(m.depth - 1); ++k)
        worst = std::fmax(worst, K.col(k).norm());
    CHECK(worst < 1e-14);
}

TEST_CASE("green solve against the closed form") {
    SUBCASE("free case, real point") {
        TruncatedFock m = build_model(ModelConfig{1.0, 1.0, {0.0, 0.0}}, 12);
        CHECK(std::abs(green_numeric(m, {2.5, 0.0}, {2.5, 0.0}) - 0.25) <
              1e-6);
    }
    SUBCASE("<v2,v1> = i pins (4+i)/17 at depth 16") {
        const ModelConfig cfg{1.0, 1.0, {0.0, -1.0}};  // alpha = -i
        TruncatedFock m = build_model(cfg, 16);
        const cplx want = cplx(4.0, 1.0) / 17.0;
        CHECK(std::abs(green_numeric(m, {2.5, 0.0}, {2.5, 0.0}) - want) <
              1e-5);
        CHECK(std::abs(green_closed(cfg, {2.5, 0.0}, {2.5, 0.0}) - want) <
              1e-15);
    }
    SUBCASE("vanishes like 1/(t1 t2) at infinity") {
        TruncatedFock m = build_model(kCfg, 6);
        const cplx g = green_numeric(m, {1e6, 0.0}, {1e6, 0.0});
        CHECK(std::abs(g * 1e12 - 1.0) < 1e-3);
    }
}

TEST_CASE("det E numeric path") {
    SUBCASE("real alpha collapses to exactly 1") {
        TruncatedFock m = build_model(ModelConfig{1.0, 1.0, {0.4, 0.0}}, 8);
        CHECK(det_E_numeric(m, {3.0, 0.0}, {3.0, 0.0}) == cplx(1.0, 0.0));
    }
    SUBCASE("oracle match at depth 16") {
        TruncatedFock m = build_model(kCfg, 16);
        const cplx num = det_E_numeric(m, {3.0, 0.0}, {3.0, 0.0});
        const cplx closed = det_E_closed(kCfg, {3.0, 0.0}, {3.0, 0.0});
        CHECK(std::abs(num - closed) < 1e-5);
    }
    SUBCASE("resolvents vanish at infinity") {
        TruncatedFock m = build_model(kCfg, 6);
        CHECK(std::abs(det_E_numeric(m, {1e6, 0.0}, {1e6, 0.0}) - 1.0) <
              1e-10);
    }
}

TEST_CASE("finite determinant collapses while the vacuum value does not") {
    TruncatedFock m = build_model(kCfg, 6);
    const DetECrossCheck cc = det_E_cross_check(m, {3.0, 0.0}, {3.5, 0.0});
    CHECK(std::abs(cc.finite_det - 1.0) < 1e-9);
    CHECK(cc.truncation_gap == doctest::Approx(std::abs(cc.finite_det - cc.rank_one)));
    // the rank-one value is the one carrying spectral content
    CHECK(std::abs(cc.rank_one - 1.0) > 1e-3);
    CHECK_THROWS_AS(det_E_cross_check(build_model(kCfg, 9), 3.0, 3.0),
                    std::invalid_argument);
}

TEST_CASE("truncation error decays at the squared continued-fraction rate") {
    const cplx t(3.0, 0.0);
    const cplx exact = green_closed(kCfg, t, t);
    const double e8 =
        std::abs(green_numeric(build_model(kCfg, 8), t, t) - exact);
    const double e10 =
        std::abs(green_numeric(build_model(kCfg, 10), t, t) - exact);
    const double qq = std::abs(q(t));
    const double rate = std::sqrt(e10 / e8);  // per unit depth
    CHECK(rate < qq);  // comfortably inside the advertised bound
    CHECK(rate == doctest::Approx(qq * qq).epsilon(0.05));
}

TEST_CASE("spectrum refuses oversized dense work") {
    CHECK_THROWS_AS(spectrum_T(build_model(kCfg, 11)),
                    std::invalid_argument);
    const Eigen::VectorXcd ev = spectrum_T(build_model(kCfg, 5));
    CHECK(ev.size() == 63);
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        CHECK(std::abs(ev(k).real()) <= 2.0 + 1e-10);
        CHECK(std::abs(ev(k).imag()) <= 2.0 + 1e-10);
    }
}
