#pragma once

#include <vector>

#include "bifree/principal.hpp"

namespace bifree {

/// Uniform lattice of g over the closed spectral rectangle.  values is
/// row-major with gamma as the outer index: values[ig * n_delta + id].
/// Boundary rows and columns are exactly zero by the analytic boundary rule.
struct PrincipalGrid {
    ModelConfig config;
    std::vector<double> gamma_axis;  // covers [-2 norm1, 2 norm1], endpoints exact
    std::vector<double> delta_axis;  // covers [-2 norm2, 2 norm2]
    std::vector<double> values;

    double min_value = 0.0;
    double max_value = 0.0;
    int argmax_gamma = 0;  // node indices of the largest |g|
    int argmax_delta = 0;

    int n_gamma() const { return static_cast<int>(gamma_axis.size()); }
    int n_delta() const { return static_cast<int>(delta_axis.size()); }
    double at(int ig, int id) const { return values[ig * n_delta() + id]; }
};

/// OpenMP-parallel evaluation (rows split across threads).  Deterministic:
/// every node is an independent pure-function evaluation and the statistics
/// pass runs serially afterwards, so output is byte-identical across thread
/// counts and to the serial reference below.
PrincipalGrid principal_grid(const ModelConfig& cfg, int n_gamma, int n_delta);

/// Single-threaded reference with the identical per-node computation.
PrincipalGrid principal_grid_serial(const ModelConfig& cfg, int n_gamma,
                                    int n_delta);

/// Exhaustive scan of h_function over an inclusive n x n lattice of
/// (theta1, theta2) in [-pi, 0]^2 at fixed (r, phi), collecting everything
/// the range lemma asserts.
struct HScan {
    double r = 0.0;
    double phi = 0.0;
    int n = 0;

    double max_abs = 0.0;       // grid maximum of |h|
    int argmax_i = 0;           // theta1 node index of that maximum
    int argmax_j = 0;
    double boundary_max = 0.0;  // max |h| where some theta is in {-pi, 0}
    double interior_min = 1.0;  // min |h| strictly inside
    bool sign_ok = true;        // sign(h) == -sign(sin phi) wherever |h| > 1e-12
    bool bound_ok = true;       // |h| <= |h_extreme(r,phi)| + 1e-12 everywhere

    double theta(int i) const;  // node value, endpoints exact
};

HScan h_scan(double r, double phi, int n);         // OpenMP-parallel
HScan h_scan_serial(double r, double phi, int n);  // reference

}  // namespace bifree
