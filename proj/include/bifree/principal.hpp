#pragma once

#include "bifree/model.hpp"

namespace bifree {

/// Two-variable Green's function z w / (1 - <v2,v1> z w) with
/// z = q(t1/norm1)/norm1, w = q(t2/norm2)/norm2.  Requires t1, t2 off the
/// respective scaled cuts.
cplx green_closed(const ModelConfig& cfg, cplx t1, cplx t2);

/// The quadratic generating polynomial norm1^2 z^2 + norm2^2 w^2
/// + <v2,v1> z w.  Everything with two bars of second order, nothing else.
cplx partial_R_transform(const ModelConfig& cfg, cplx z, cplx w);

/// det E(l,s) = (1 - conj(rho) Q) / (1 - rho Q) with rho = alpha/(norm1
/// norm2) and Q = q(s/norm1) q(l/norm2).  Unimodular-free: never 0 or
/// infinity on its domain since r |Q| < 1.  Requires independent vectors
/// (r < 1); the dependent case is served by the ellipse operations.
cplx det_E_closed(const ModelConfig& cfg, cplx l, cplx s);

/// The gamma-density of (2 pi i) Log det E in the s-variable: a sum of four
/// principal logarithms, each argument inside the open unit disk about 1.
/// Real-valued for real l; its analytic continuation in l off the cut is
/// what the second inversion consumes.  |gamma| <= 2 norm1 required.
cplx f_closed(const ModelConfig& cfg, cplx l, double gamma);

/// The principal function g(delta, gamma) of T = X1 + i X2, evaluated from
/// the four-argument closed form.  Zero outside the closed spectral
/// rectangle and analytically zero on its boundary.  Range (-1,0] when
/// Im alpha > 0 and [0,1) when Im alpha < 0.  Requires independent vectors
/// and Im alpha != 0.
double principal_function(const ModelConfig& cfg, double delta, double gamma);

/// The four-arctan combination the closed form reduces to in polar data;
/// domain r in (0,1), everything else unrestricted.
double h_function(double r, double phi, double theta1, double theta2);

/// The extreme value -(2/pi) arctan(2 r sin(phi) / (1 - r^2)), attained by
/// h_function at theta1 = theta2 = -pi/2.
double h_extreme(double r, double phi);

/// The essential spectrum of T is the closed rectangle
/// [-2 norm1, 2 norm1] + i [-2 norm2, 2 norm2]; membership test.
bool essential_spectrum_contains(const ModelConfig& cfg, cplx point);

/// Linearly dependent vectors, v1 = a v2: T is norm2 times a weighted
/// bilateral combination (a+i)U + (conj(a)+i)U* of the unilateral shift, its
/// essential spectrum is an ellipse and the principal function is a signed
/// indicator of the ellipse interior.
struct EllipseCase {
    cplx alpha_dep;     // the a of v1 = a v2
    double norm2 = 1.0;

    /// Derives a = alpha / norm2^2; requires a dependent config (r = 1).
    static EllipseCase from_config(const ModelConfig& cfg);
};

/// -1 inside the ellipse when Im a > 0, +1 inside when Im a < 0, 0 outside
/// or on the curve.  The point is taken in the spectrum of T, i.e. scaled by
/// norm2 relative to the canonical curve.  Throws when Im a = 0.
int ellipse_principal(const EllipseCase& ec, cplx point);

/// Parameterizes the essential spectrum by t on the unit circle,
/// x = a t + conj(a t), y = t + conj(t), and returns the worst absolute
/// residual of x^2 + |a|^2 y^2 - 2 Re(a) x y = 4 (Im a)^2 over `samples`
/// points.  Identically zero in exact arithmetic, any a.
double ellipse_curve_check(const EllipseCase& ec, int samples);

}  // namespace bifree
