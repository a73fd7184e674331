#pragma once

#include "bifree/analytic.hpp"

namespace bifree {

/// The three numbers every closed-form quantity depends on: ||v1||, ||v2||
/// and alpha = <v1,v2>.  The inner product is conjugate-linear in the SECOND
/// slot throughout, so <v2,v1> = conj(alpha); build_model runs a one-time
/// self-test that pins this convention against the moment phi(X1 X2).
struct ModelConfig {
    double norm1 = 1.0;
    double norm2 = 1.0;
    cplx alpha = {0.0, 0.0};

    /// Positive finite norms and |alpha| <= norm1*norm2 (Cauchy-Schwarz,
    /// with a 1e-12 relative guard band so exactly-dependent configs pass).
    bool valid() const noexcept;

    double r() const noexcept;          // |alpha| / (norm1 norm2)
    bool independent() const noexcept;  // r < 1 - 1e-12
    bool nonnormal() const noexcept;    // Im alpha != 0
    cplx v21() const noexcept;          // <v2,v1> = conj(alpha)
};

/// The substitution feeding the closed principal-function formula:
/// alpha/(norm1 norm2) = r e^{i phi}, zeta(gamma/norm1) = e^{i theta1},
/// zeta(delta/norm2) = e^{i theta2}.
struct PolarForm {
    double r;       // in (0,1) for independent vectors
    double phi;     // Arg alpha lifted from (-pi,pi] to [0,2pi)
    double theta1;  // in [-pi, 0]
    double theta2;  // in [-pi, 0]
};

/// Requires |gamma| <= 2 norm1 and |delta| <= 2 norm2 (zeta domain).
PolarForm polar_form(const ModelConfig& cfg, double gamma, double delta);

}  // namespace bifree
