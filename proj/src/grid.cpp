#include "bifree/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace bifree {

namespace {

constexpr double kPi = 3.14159265358979323846;

// nodes hit -half, 0 (odd count) and +half exactly; 2i/(n-1) evaluates to
// an exact 0, 1 or 2 at the anchor indices, so no cumulative-step drift
double axis_node(int i, int n, double half) {
    return (2.0 * double(i) / double(n - 1) - 1.0) * half;
}

void grid_stats(PrincipalGrid& g) {
    g.min_value = g.values[0];
    g.max_value = g.values[0];
    g.argmax_gamma = 0;
    g.argmax_delta = 0;
    double best = std::abs(g.values[0]);
    const int nd = g.n_delta();
    for (int ig = 0; ig < g.n_gamma(); ++ig)
        for (int id = 0; id < nd; ++id) {
            const double v = g.values[std::size_t(ig) * nd + id];
            g.min_value = std::fmin(g.min_value, v);
            g.max_value = std::fmax(g.max_value, v);
            if (std::abs(v) > best) {
                best = std::abs(v);
                g.argmax_gamma = ig;
                g.argmax_delta = id;
            }
        }
}

PrincipalGrid grid_impl(const ModelConfig& cfg, int n_gamma, int n_delta,
                        bool parallel) {
    if (n_gamma < 3 || n_delta < 3)
        throw std::invalid_argument("principal_grid: sizes < 3");
    if (!cfg.valid() || !cfg.independent() || !cfg.nonnormal())
        throw std::invalid_argument(
            "principal_grid: needs a valid, independent, non-normal config");

    PrincipalGrid g;
    g.config = cfg;
    g.gamma_axis.resize(n_gamma);
    g.delta_axis.resize(n_delta);
    for (int i = 0; i < n_gamma; ++i)
        g.gamma_axis[i] = axis_node(i, n_gamma, 2.0 * cfg.norm1);
    for (int i = 0; i < n_delta; ++i)
        g.delta_axis[i] = axis_node(i, n_delta, 2.0 * cfg.norm2);
    g.values.assign(std::size_t(n_gamma) * n_delta, 0.0);

#pragma omp parallel for schedule(static) if (parallel)
    for (int ig = 0; ig < n_gamma; ++ig)
        for (int id = 0; id < n_delta; ++id)
            g.values[std::size_t(ig) * n_delta + id] =
                principal_function(cfg, g.delta_axis[id], g.gamma_axis[ig]);

    grid_stats(g);
    return g;
}

struct HValues {
    std::vector<double> v;
    int n = 0;
    double at(int i, int j) const { return v[std::size_t(i) * n + j]; }
};

HScan h_scan_impl(double r, double phi, int n, bool parallel) {
    if (n < 3) throw std::invalid_argument("h_scan: n < 3");
    HScan s;
    s.r = r;
    s.phi = phi;
    s.n = n;

    HValues hv;
    hv.n = n;
    hv.v.assign(std::size_t(n) * n, 0.0);

#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            hv.v[std::size_t(i) * n + j] =
                h_function(r, phi, s.theta(i), s.theta(j));

    const double he = std::abs(h_extreme(r, phi));
    const double sphi = std::sin(phi);
    double best = -1.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double v = hv.at(i, j);
            const double a = std::abs(v);
            const bool edge = i == 0 || j == 0 || i == n - 1 || j == n - 1;
            if (a > best) {
                best = a;
                s.argmax_i = i;
                s.argmax_j = j;
            }
            if (edge)
                s.boundary_max = std::fmax(s.boundary_max, a);
            else
                s.interior_min = std::fmin(s.interior_min, a);
            if (a > 1e-12 && v * sphi > 0.0) s.sign_ok = false;
            if (a > he + 1e-12) s.bound_ok = false;
        }
    s.max_abs = best;
    return s;
}

}  // namespace

double HScan::theta(int i) const {
    return kPi * (double(i) / double(n - 1) - 1.0);
}

PrincipalGrid principal_grid(const ModelConfig& cfg, int n_gamma,
                             int n_delta) {
    return grid_impl(cfg, n_gamma, n_delta, true);
}

PrincipalGrid principal_grid_serial(const ModelConfig& cfg, int n_gamma,
                                    int n_delta) {
    return grid_impl(cfg, n_gamma, n_delta, false);
}

HScan h_scan(double r, double phi, int n) {
    return h_scan_impl(r, phi, n, true);
}

HScan h_scan_serial(double r, double phi, int n) {
    return h_scan_impl(r, phi, n, false);
}

}  // namespace bifree
