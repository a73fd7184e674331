#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "bifree/analytic.hpp"
#include "bifree/principal.hpp"

using namespace bifree;

namespace {
constexpr double kPi = 3.14159265358979323846;
const ModelConfig kCfg{1.0, 1.0, {0.0, 0.5}};
const ModelConfig kFig{std::sqrt(2.0), 1.0,
                       {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)}};

double node(int i, int n, double half) {
    return (2.0 * double(i) / double(n - 1) - 1.0) * half;
}
}

// Inverting 2 pi i Log det E in its first variable recovers f: the
// determinant is the exponential Herglotz representation of f, so the
// boundary imaginary part divided by pi gives f back on the cut.
TEST_CASE("leg A: det E boundary values reproduce f at real l") {
    for (double l : {3.0, -3.0, 4.0}) {
        for (int i = 0; i < 21; ++i) {
            const double gamma = node(i, 21, 1.8);
            auto F = [&](cplx z) {
                return cplx(0.0, 2.0 * kPi) *
                       std::log(det_E_closed(kCfg, z, l));
            };
            const Inversion inv = stieltjes_invert(F, gamma);
            REQUIRE(inv.converged);
            const double want = f_closed(kCfg, l, gamma).real();
            CHECK(std::abs(inv.value - want) < 1e-6);
        }
    }
}

// Inverting f in l lands on the principal function itself.
TEST_CASE("leg B: f boundary values reproduce the principal function") {
    for (int i = 0; i < 21; ++i) {
        const double gamma = node(i, 21, 1.8);
        for (int j = 0; j < 21; ++j) {
            const double delta = node(j, 21, 1.8);
            auto F = [&](cplx z) { return f_closed(kCfg, z, gamma); };
            const Inversion inv = stieltjes_invert(F, delta);
            REQUIRE(inv.converged);
            const double want = principal_function(kCfg, delta, gamma);
            CHECK(std::abs(inv.value - want) < 1e-6);
        }
    }
}

TEST_CASE("leg B holds on the asymmetric configuration") {
    for (int i = 0; i < 5; ++i) {
        const double gamma = node(i, 5, 2.6);
        for (int j = 0; j < 5; ++j) {
            const double delta = node(j, 5, 1.8);
            auto F = [&](cplx z) { return f_closed(kFig, z, gamma); };
            const Inversion inv = stieltjes_invert(F, delta);
            REQUIRE(inv.converged);
            const double want = principal_function(kFig, delta, gamma);
            CHECK(std::abs(inv.value - want) < 1e-3);
            CHECK(want >= 0.0);
        }
    }
}
