#pragma once

#include <complex>
#include <functional>

namespace bifree {

using cplx = std::complex<double>;

/// True when t counts as lying on the real cut [-2,2]: |Im t| <= 1e-13 and
/// |Re t| <= 2 + 1e-13.  q() refuses such points; zeta() owns them.
bool on_cut(cplx t) noexcept;

/// The root z of z^2 - t z + 1 = 0 with |z| < 1, i.e. (t - sqrt(t^2-4))/2
/// where the branch of the square root satisfies sqrt(t^2-4) ~ t for large
/// |t|.  Evaluated as 2/(t + sqrt(t^2-4)) with the larger-|.| denominator,
/// which is the same number without the subtractive cancellation.
/// Throws std::domain_error on the cut.
cplx q(cplx t);

/// Boundary value of q on the cut from above: (t - i sqrt(4-t^2))/2.
/// |zeta| = 1, Im zeta <= 0, zeta(+-2) = +-1.  Throws for |t| > 2.
cplx zeta(double t);

/// Epsilon ladder driving every cut-limit computation.  Evaluations happen
/// at eps_k = eps_start * ratio^k for k = 0..steps-1, and Richardson runs in
/// the variable h = sqrt(eps), eliminating h^1..h^(2*extrapolation_order).
/// The sqrt grading is what keeps the endpoints t0 = +-2 convergent, where
/// q(t0 + i eps) has a sqrt(eps) leading correction; at interior points the
/// expansion is in integer powers of eps and the even h-columns do the work.
struct StieltjesSchedule {
    double eps_start = 1e-2;
    double ratio = 0.5;
    int steps = 20;
    int extrapolation_order = 2;

    /// Smallest epsilon actually evaluated: eps_start * ratio^(steps-1).
    double smallest_eps() const noexcept;

    /// Positive start, ratio in (0,1), enough steps for the tableau, and
    /// smallest_eps() above sqrt(machine epsilon) so the boundary values
    /// keep at least half of their digits.
    bool valid() const noexcept;
};

struct Inversion {
    double value = 0.0;
    double error_estimate = 0.0;  // gap between the last two tableau corners
    bool converged = false;
};

/// lim_{eps -> 0} q(t0 + i eps) along the schedule.  Agrees with zeta(t0) to
/// well below 1e-8 at the default schedule, endpoints included.
cplx q_boundary_limit(double t0, const StieltjesSchedule& sched = {});

/// (1/pi) lim_{eps -> 0} Im f(t0 + i eps), extrapolated along the schedule.
/// converged is false when the tableau does not settle below tol, which is
/// what happens e.g. at an atom of the underlying measure (f has a pole, the
/// limit diverges and there is no density to report).
Inversion stieltjes_invert(const std::function<cplx(cplx)>& f, double t0,
                           const StieltjesSchedule& sched = {},
                           double tol = 1e-6);

}  // namespace bifree
