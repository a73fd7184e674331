#include "bifree/analytic.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bifree {

bool on_cut(cplx t) noexcept {
    return std::abs(t.imag()) <= 1e-13 && std::abs(t.real()) <= 2.0 + 1e-13;
}

cplx q(cplx t) {
    if (on_cut(t)) throw std::domain_error("q: argument on the cut [-2,2]");
    cplx s = std::sqrt(t * t - 4.0);
    // pick the branch with s ~ t at infinity, i.e. the larger |t + s|
    if (std::abs(t - s) > std::abs(t + s)) s = -s;
    return 2.0 / (t + s);
}

cplx zeta(double t) {
    if (std::abs(t) > 2.0 + 1e-13) throw std::domain_error("zeta: |t| > 2");
    const double rad = std::fmax(4.0 - t * t, 0.0);
    return {t / 2.0, -std::sqrt(rad) / 2.0};
}

double StieltjesSchedule::smallest_eps() const noexcept {
    return eps_start * std::pow(ratio, steps - 1);
}

bool StieltjesSchedule::valid() const noexcept {
    if (!(eps_start > 0.0) || !std::isfinite(eps_start)) return false;
    if (!(ratio > 0.0 && ratio < 1.0)) return false;
    if (extrapolation_order < 1 || extrapolation_order > 5) return false;
    if (steps < 2 * extrapolation_order + 2) return false;
    // below sqrt(macheps) the boundary evaluations lose half their digits
    return smallest_eps() >= std::sqrt(DBL_EPSILON);
}

namespace {

struct Corner {
    cplx value;
    double err;
};

// Richardson in h = sqrt(eps): kills h^1..h^m from F(eps_k), eps_k geometric.
Corner richardson(const std::function<cplx(double)>& F,
                  const StieltjesSchedule& s) {
    if (!s.valid()) throw std::invalid_argument("bad Stieltjes schedule");
    const int m = 2 * s.extrapolation_order;
    std::vector<cplx> row(s.steps);
    double eps = s.eps_start;
    for (int k = 0; k < s.steps; ++k, eps *= s.ratio) row[k] = F(eps);

    const double sigma = std::sqrt(s.ratio);
    cplx prev_corner = row.back();
    for (int j = 1; j <= m; ++j) {
        const double denom = std::pow(sigma, -j) - 1.0;
        for (std::size_t k = 0; k + 1 < row.size(); ++k)
            row[k] = row[k + 1] + (row[k + 1] - row[k]) / denom;
        row.pop_back();
        if (j == m - 1) prev_corner = row.back();
    }
    return {row.back(), std::abs(row.back() - prev_corner)};
}

}  // namespace

cplx q_boundary_limit(double t0, const StieltjesSchedule& sched) {
    if (std::abs(t0) > 2.0 + 1e-13)
        throw std::domain_error("q_boundary_limit: |t0| > 2");
    // clamp so eps keeps t0 + i eps off the cut detector even at |t0| = 2
    return richardson([t0](double e) { return q(cplx(t0, e)); }, sched).value;
}

Inversion stieltjes_invert(const std::function<cplx(cplx)>& f, double t0,
                           const StieltjesSchedule& sched, double tol) {
    const double pi = 3.14159265358979323846;
    Corner c = richardson(
        [&](double e) { return cplx(f(cplx(t0, e)).imag() / pi, 0.0); }, sched);
    Inversion out;
    out.value = c.value.real();
    out.error_estimate = c.err;
    out.converged = std::isfinite(out.value) && c.err <= tol;
    return out;
}

}  // namespace bifree
