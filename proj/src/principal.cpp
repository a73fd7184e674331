#include "bifree/principal.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace bifree {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

bool ModelConfig::valid() const noexcept {
    if (!(norm1 > 0.0) || !std::isfinite(norm1)) return false;
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) return false;
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
        return false;
    // Cauchy-Schwarz, with room for configs built as exactly dependent
    return std::abs(alpha) <= norm1 * norm2 * (1.0 + 1e-12);
}

double ModelConfig::r() const noexcept {
    return std::abs(alpha) / (norm1 * norm2);
}

bool ModelConfig::independent() const noexcept { return r() < 1.0 - 1e-12; }

bool ModelConfig::nonnormal() const noexcept { return alpha.imag() != 0.0; }

cplx ModelConfig::v21() const noexcept { return std::conj(alpha); }

PolarForm polar_form(const ModelConfig& cfg, double gamma, double delta) {
    const double tol = 1e-12;
    if (std::abs(gamma) > 2.0 * cfg.norm1 * (1.0 + tol) ||
        std::abs(delta) > 2.0 * cfg.norm2 * (1.0 + tol))
        throw std::domain_error("polar_form: point outside the rectangle");

    auto clamp1 = [](double x) { return std::fmax(-1.0, std::fmin(1.0, x)); };
    PolarForm p;
    p.r = cfg.r();
    p.phi = std::arg(cfg.alpha);
    if (p.phi < 0.0) p.phi += 2.0 * kPi;
    // zeta(t) = e^{i theta} with theta = -acos(t/2) in [-pi, 0]
    p.theta1 = -std::acos(clamp1(gamma / (2.0 * cfg.norm1)));
    p.theta2 = -std::acos(clamp1(delta / (2.0 * cfg.norm2)));
    return p;
}

cplx green_closed(const ModelConfig& cfg, cplx t1, cplx t2) {
    const cplx z = q(t1 / cfg.norm1) / cfg.norm1;
    const cplx w = q(t2 / cfg.norm2) / cfg.norm2;
    return z * w / (1.0 - cfg.v21() * z * w);
}

cplx partial_R_transform(const ModelConfig& cfg, cplx z, cplx w) {
    return cfg.norm1 * cfg.norm1 * z * z + cfg.norm2 * cfg.norm2 * w * w +
           cfg.v21() * z * w;
}

cplx det_E_closed(const ModelConfig& cfg, cplx l, cplx s) {
    if (!cfg.independent())
        throw std::invalid_argument(
            "det_E_closed: dependent vectors, see EllipseCase");
    const cplx rho = cfg.alpha / (cfg.norm1 * cfg.norm2);
    const cplx Q = q(s / cfg.norm1) * q(l / cfg.norm2);
    return (1.0 - std::conj(rho) * Q) / (1.0 - rho * Q);
}

cplx f_closed(const ModelConfig& cfg, cplx l, double gamma) {
    if (!cfg.independent())
        throw std::invalid_argument(
            "f_closed: dependent vectors, see EllipseCase");
    const cplx rho = cfg.alpha / (cfg.norm1 * cfg.norm2);
    const cplx Z = zeta(gamma / cfg.norm1);
    const cplx Q = q(l / cfg.norm2);
    // every argument sits in the open unit disk about 1: |rho Z Q| < 1
    return std::log(1.0 - std::conj(rho) * Z * Q) +
           std::log(1.0 - rho * std::conj(Z) * Q) -
           std::log(1.0 - rho * Z * Q) -
           std::log(1.0 - std::conj(rho) * std::conj(Z) * Q);
}

double h_function(double r, double phi, double theta1, double theta2) {
    if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("h_function: r outside (0,1)");
    auto term = [r](double psi) {
        return std::atan(r * std::sin(psi) / (1.0 - r * std::cos(psi)));
    };
    const double sum = theta1 + theta2, dif = theta1 - theta2;
    return (term(phi - sum) + term(phi + sum) - term(phi - dif) -
            term(phi + dif)) /
           kPi;
}

double h_extreme(double r, double phi) {
    if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("h_extreme: r outside (0,1)");
    return -(2.0 / kPi) * std::atan(2.0 * r * std::sin(phi) / (1.0 - r * r));
}

double principal_function(const ModelConfig& cfg, double delta, double gamma) {
    if (!cfg.independent())
        throw std::invalid_argument(
            "principal_function: dependent vectors, use ellipse_principal");
    if (!cfg.nonnormal())
        throw std::invalid_argument(
            "principal_function: Im alpha = 0, operator is normal");
    // support is the closed rectangle; the boundary value is 0 analytically
    // (zeta = +-1 cancels the Log terms in pairs), so return it untouched
    if (std::abs(gamma) >= 2.0 * cfg.norm1 ||
        std::abs(delta) >= 2.0 * cfg.norm2)
        return 0.0;

    const PolarForm p = polar_form(cfg, gamma, delta);
    auto branch = [&p](double psi) {
        return std::arg(1.0 - std::polar(p.r, psi));
    };
    const double g = (branch(-p.phi + p.theta1 + p.theta2) +
                      branch(p.phi - p.theta1 + p.theta2) -
                      branch(p.phi + p.theta1 + p.theta2) -
                      branch(-p.phi - p.theta1 + p.theta2)) /
                     kPi;
    assert(std::abs(g - h_function(p.r, p.phi, p.theta1, p.theta2)) < 1e-12);
    return g;
}

bool essential_spectrum_contains(const ModelConfig& cfg, cplx point) {
    return std::abs(point.real()) <= 2.0 * cfg.norm1 &&
           std::abs(point.imag()) <= 2.0 * cfg.norm2;
}

EllipseCase EllipseCase::from_config(const ModelConfig& cfg) {
    if (cfg.independent())
        throw std::invalid_argument(
            "EllipseCase: config is not dependent (r < 1)");
    EllipseCase ec;
    ec.alpha_dep = cfg.alpha / (cfg.norm2 * cfg.norm2);
    ec.norm2 = cfg.norm2;
    return ec;
}

int ellipse_principal(const EllipseCase& ec, cplx point) {
    const cplx a = ec.alpha_dep;
    if (a.imag() == 0.0)
        throw std::invalid_argument("ellipse_principal: Im a = 0, degenerate");
    const double x = point.real() / ec.norm2;
    const double y = point.imag() / ec.norm2;
    const double F = x * x + std::norm(a) * y * y -
                     2.0 * a.real() * x * y - 4.0 * a.imag() * a.imag();
    if (F >= 0.0) return 0;
    return a.imag() > 0.0 ? -1 : 1;
}

double ellipse_curve_check(const EllipseCase& ec, int samples) {
    if (samples < 3)
        throw std::invalid_argument("ellipse_curve_check: samples < 3");
    const cplx a = ec.alpha_dep;
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double psi = 2.0 * kPi * k / samples;
        const cplx t = std::polar(1.0, psi);
        const double x = 2.0 * (a * t).real();  // a t + conj(a t)
        const double y = 2.0 * t.real();        // t + conj(t)
        const double F = x * x + std::norm(a) * y * y -
                         2.0 * a.real() * x * y - 4.0 * a.imag() * a.imag();
        worst = std::fmax(worst, std::abs(F));
    }
    return worst;
}

}  // namespace bifree
