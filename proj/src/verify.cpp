#include "bifree/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "bifree/fock.hpp"
#include "bifree/grid.hpp"
#include "bifree/principal.hpp"

namespace bifree {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double node(int i, int n, double half) {
    return (2.0 * double(i) / double(n - 1) - 1.0) * half;
}

const ModelConfig kChainConfig{1.0, 1.0, {0.0, 0.5}};
const ModelConfig kFigureConfig{std::sqrt(2.0), 1.0,
                                {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)}};

// fixed off-cut sample points, |t| >= 3 before scaling
const std::vector<cplx> kPoints1{{3.0, 0.0}, {-3.1, 0.0}, {3.6, 0.8},
                                 {-4.2, 0.4}, {5.0, 0.0}};
const std::vector<cplx> kPoints2{{3.2, 0.0}, {-3.4, 0.0}, {3.8, -0.6},
                                 {-4.5, -0.3}, {5.5, 0.0}};

std::vector<ModelConfig> random_configs(int count, unsigned seed,
                                        bool force_nonnormal) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<ModelConfig> out;
    while (static_cast<int>(out.size()) < count) {
        ModelConfig cfg;
        cfg.norm1 = 0.6 + 1.2 * u(rng);
        cfg.norm2 = 0.6 + 1.2 * u(rng);
        const double rr = 0.15 + 0.7 * u(rng);
        const double ph = 2.0 * kPi * u(rng);
        cfg.alpha = std::polar(rr * cfg.norm1 * cfg.norm2, ph);
        if (force_nonnormal && std::abs(cfg.alpha.imag()) < 0.05) continue;
        out.push_back(cfg);
    }
    return out;
}

}  // namespace

bool VerifyReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

CheckResult check_branch_suite() {
    const auto t0 = Clock::now();
    CheckResult res;
    res.name = "branch_suite";
    res.tolerance = 1e-8;

    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    double worst_ident = 0.0, worst_conj = 0.0;
    bool modulus_ok = true;
    int done = 0;
    while (done < 10000) {
        const cplx t(u(rng), u(rng));
        if (on_cut(t)) continue;
        ++done;
        const cplx qt = q(t);
        if (!(std::abs(qt) < 1.0)) modulus_ok = false;
        worst_ident = std::fmax(worst_ident, std::abs(qt + 1.0 / qt - t));
        worst_conj =
            std::fmax(worst_conj, std::abs(q(std::conj(t)) - std::conj(qt)));
    }

    double worst_limit = 0.0;
    for (int i = 0; i < 101; ++i) {
        const double x = node(i, 101, 2.0);
        worst_limit =
            std::fmax(worst_limit, std::abs(q_boundary_limit(x) - zeta(x)));
    }

    res.residual = worst_limit;
    res.pass = modulus_ok && worst_ident <= 1e-12 && worst_conj <= 1e-13 &&
               worst_limit <= res.tolerance;
    res.detail = fmt("identity %.2e conj %.2e modulus %s", worst_ident,
                     worst_conj, modulus_ok ? "ok" : "VIOLATED");
    res.seconds = elapsed(t0);
    return res;
}

CheckResult check_green_oracle() {
    const auto t0 = Clock::now();
    CheckResult res;
    res.name = "green_oracle";
    res.tolerance = 1e-5;

    double worst = 0.0;
    for (const ModelConfig& cfg : {kChainConfig, kFigureConfig}) {
        TruncatedFock m = build_model(cfg, 16);
        for (const cplx& a : kPoints1)
            for (const cplx& b : kPoints2)
                worst = std::fmax(
                    worst, std::abs(green_numeric(m, a * cfg.norm1,
                                                  b * cfg.norm2) -
                                    green_closed(cfg, a * cfg.norm1,
                                                 b * cfg.norm2)));
    }

    // decay per unit depth: the square of the continued-fraction modulus,
    // held against the linear modulus as an upper bound
    const ModelConfig& cfg = kChainConfig;
    const cplx tp(3.0, 0.0);
    const double claim =
        std::fmax(std::abs(q(tp / cfg.norm1)), std::abs(q(tp / cfg.norm2)));
    const cplx exact = green_closed(cfg, tp, tp);
    double e8 = 0.0, e14 = 0.0;
    for (int n : {8, 14}) {
        TruncatedFock m = build_model(cfg, n);
        const double e = std::abs(green_numeric(m, tp, tp) - exact);
        (n == 8 ? e8 : e14) = e;
    }
    const double rate = std::pow(e14 / e8, 1.0 / 6.0);
    const bool rate_ok = rate <= 1.25 * claim &&
                         std::abs(rate - claim * claim) <= 0.25 * claim * claim;

    res.residual = worst;
    res.pass = worst <= res.tolerance && rate_ok;
    res.detail = fmt("rate %.4f claim %.4f claim^2 %.4f", rate, claim,
                     claim * claim);
    res.seconds = elapsed(t0);
    return res;
}

CheckResult check_det_e_oracle() {
    const auto t0 = Clock::now();
    CheckResult res;
    res.name = "det_e_oracle";
    res.tolerance = 1e-5;

    double worst = 0.0;
    for (const ModelConfig& cfg : {kChainConfig, kFigureConfig}) {
        TruncatedFock m = build_model(cfg, 16);
        for (const cplx& a : kPoints2)
            for (const cplx& b : kPoints1) {
                const cplx l = a * cfg.norm2, s = b * cfg.norm1;
                worst = std::fmax(worst, std::abs(det_E_numeric(m, l, s) -
                                                  det_E_closed(cfg, l, s)));
            }
    }

    double worst_real = 0.0;
    for (const ModelConfig cfg :
         {ModelConfig{1.0, 1.0, {0.3, 0.0}}, ModelConfig{1.4, 0.8, {-0.5, 0.0}}}) {
        TruncatedFock m = build_model(cfg, 6);
        worst_real = std::fmax(
            worst_real, std::abs(det_E_numeric(m, cplx(3.0 * cfg.norm2, 0.0),
                                               cplx(3.0 * cfg.norm1, 0.0)) -
                                 1.0));
    }

    res.residual = worst;
    res.pass = worst <= res.tolerance && worst_real <= 1e-14;
    res.detail = fmt("real-alpha deviation from 1: %.2e", worst_real);
    res.seconds = elapsed(t0);
    return res;
}

CheckResult check_stieltjes_chain() {
    const auto t0 = Clock::now();
    CheckResult res;
    res.name = "stieltjes_chain";
    res.tolerance = 1e-3;

    const ModelConfig cfg = kChainConfig;

    // first inversion, in the X1 variable at fixed real l off the cut:
    // the gamma-density of (2 pi i) Log det E must be f
    double worst_a = 0.0;
    bool conv_a = true;
    for (double l : {3.0, -3.0, 4.0}) {
        for (int i = 0; i < 21; ++i) {
            const double gamma = node(i, 21, 1.8 * cfg.norm1);
            auto F = [&](cplx s) {
                return cplx(0.0, 2.0 * kPi) * std::log(det_E_closed(cfg, l, s));
            };
            const Inversion inv = stieltjes_invert(F, gamma);
            conv_a = conv_a && inv.converged;
            worst_a = std::fmax(
                worst_a,
                std::abs(inv.value - f_closed(cfg, cplx(l, 0.0), gamma).real()));
        }
    }

    // second inversion, in the X2 variable: the delta-density of f must be g
    double worst_b = 0.0;
    bool conv_b = true;
    for (int i = 0; i < 21; ++i) {
        const double gamma = node(i, 21, 1.8 * cfg.norm1);
        auto F = [&](cplx l) { return f_closed(cfg, l, gamma); };
        for (int j = 0; j < 21; ++j) {
            const double delta = node(j, 21, 1.8 * cfg.norm2);
            const Inversion inv = stieltjes_invert(F, delta);
            conv_b = conv_b && inv.converged;
            worst_b = std::fmax(
                worst_b,
                std::abs(inv.value - principal_function(cfg, delta, gamma)));
        }
    }

    res.residual = worst_b;
    res.pass = conv_a && conv_b && worst_a <= 1e-6 && worst_b <= res.tolerance;
    res.detail = fmt("det_E->f leg %.2e (tol 1e-6), converged %s", worst_a,
                     conv_a && conv_b ? "yes" : "NO");
    res.seconds = elapsed(t0);
    return res;
}

CheckResult check_lemma_h_range() {
    const auto t0 = Clock::now();
    CheckResult res;
    res.name = "lemma_h_range";
    res.tolerance = 1e-12;

    const int n = 200;
    const double cell = kPi / (n - 1);
    double worst_boundary = 0.0;
    bool ok = true;
    std::string where;
    for (double r : {0.3, 0.7})
        for (double phi : {kPi / 3.0, 3.0 * kPi / 2.0}) {
            const HScan s = h_scan(r, phi, n);
            worst_boundary = std::fmax(worst_boundary, s.boundary_max);
            const bool argmax_ok =
                std::abs(s.theta(s.argmax_i) + kPi / 2.0) <= cell + 1e-12 &&
                std::abs(s.theta(s.argmax_j) + kPi / 2.0) <= cell + 1e-12;
            const bool this_ok = s.sign_ok && s.bound_ok &&
                                 s.boundary_max <= 1e-12 &&
                                 s.interior_min > 1e-12 && argmax_ok;
            if (!this_ok && ok) {
                ok = false;
                where = fmt(" first failure at r=%.1f phi=%.4f", r, phi);
            }
        }

    res.residual = worst_boundary;
    res.pass = ok;
    res.detail = "sign, bound, interior support, argmax cell" + where;
    res.seconds = elapsed(t0);
    return res;
}

CheckResult check_figure_grid() {
    const auto t0 = Clock::now();
    CheckResult res;
    res.name = "figure_grid";
    res.tolerance = 1e-6;

    const PrincipalGrid g = principal_grid(kFigureConfig, 101, 101);
    const double target = (2.0 / kPi) * std::atan(2.0);
    const double value_err = std::abs(g.max_value - target);
    const bool center = g.argmax_gamma == 50 && g.argmax_delta == 50;
    const bool range = g.min_value >= 0.0 && g.max_value < 1.0;

    bool boundary_zero = true;
    for (int i = 0; i < g.n_gamma(); ++i)
        boundary_zero = boundary_zero && g.at(i, 0) == 0.0 &&
                        g.at(i, g.n_delta() - 1) == 0.0;
    for (int j = 0; j < g.n_delta(); ++j)
        boundary_zero = boundary_zero && g.at(0, j) == 0.0 &&
                        g.at(g.n_gamma() - 1, j) == 0.0;

    // [T,T*] = 2 sqrt(2) P on the safe zone at this config
    TruncatedFock m = build_model(kFigureConfig, 8);
    Eigen::MatrixXcd T =
        Eigen::MatrixXcd(m.X1) + cplx(0.0, 1.0) * Eigen::MatrixXcd(m.X2);
    Eigen::MatrixXcd C = T * T.adjoint() - T.adjoint() * T;
    C(0, 0) -= 2.0 * std::sqrt(2.0);
    double worst_comm = 0.0;
    const std::int64_t safe = m.level_offset(m.depth - 1);
    for (std::int64_t k = 0; k < safe; ++k)
        worst_comm = std::fmax(worst_comm, C.col(k).norm());

    res.residual = value_err;
    res.pass = value_err <= res.tolerance && center && range && boundary_zero &&
               worst_comm <= 1e-13;
    res.detail = fmt("commutator %.2e (tol 1e-13) argmax(%d,%d) range [%g,%g)",
                     worst_comm, g.argmax_gamma, g.argmax_delta, g.min_value,
                     g.max_value);
    res.seconds = elapsed(t0);
    return res;
}

CheckResult check_pure_part() {
    const auto t0 = Clock::now();
    CheckResult res;
    res.name = "pure_part";
    res.tolerance = 1e-10;

    TruncatedFock m = build_model(kChainConfig, 6);
    const Eigen::MatrixXcd Q = krylov_pure_part(m, 4);

    auto stack = [&](const PurePartBasis& b) {
        Eigen::MatrixXcd M(m.dim, b.vectors.size());
        for (std::size_t k = 0; k < b.vectors.size(); ++k)
            M.col(k) = b.vectors[k];
        return M;
    };

    double worst = 0.0;
    for (int n = 1; n <= 4; ++n) {
        const Eigen::MatrixXcd K = intersect_level(m, Q, n);
        const auto [B, Bp] = pure_part_basis(m, n);
        worst = std::fmax(worst, max_principal_angle(K, stack(B)));
        worst = std::fmax(worst, max_principal_angle(K, stack(Bp)));
    }

    // the normal summand must be invisible from the vacuum cyclic subspace
    const auto [B1, B1p] = pure_part_basis(m, 1);
    const Eigen::Vector2cd v1(cplx(m.config.norm1, 0.0), cplx(0.0, 0.0));
    const Eigen::Vector2cd v2(m.c, cplx(m.d, 0.0));
    double worst_perp = 0.0;
    for (int mi = 0; mi <= 2; ++mi)
        for (int ni = 0; mi + ni <= 2; ++ni) {
            std::vector<Eigen::Vector2cd> slots;
            for (int k = 0; k < mi; ++k) slots.push_back(v1);
            slots.push_back(B1.u);
            slots.push_back(B1.w);
            for (int k = 0; k < ni; ++k) slots.push_back(v2);
            const Eigen::VectorXcd gvec = tensor_word(m, slots);
            worst_perp =
                std::fmax(worst_perp, (Q.adjoint() * gvec).norm() / gvec.norm());
        }
    worst = std::fmax(worst, worst_perp);

    double worst_reduce = 0.0;
    for (auto [mi, ni] :
         {std::pair{0, 0}, std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
        const ReducingReport rr = reducing_subspace_check(m, mi, ni);
        worst_reduce = std::fmax(
            worst_reduce, std::fmax(rr.commutator_residual,
                                    std::fmax(rr.closure_residual_x1,
                                              rr.closure_residual_x2)));
    }

    res.residual = worst;
    res.pass = worst <= res.tolerance && worst_reduce <= 1e-12;
    res.detail = fmt("krylov rank %d, N-generator proj %.2e, reducing %.2e",
                     int(Q.cols()), worst_perp, worst_reduce);
    res.seconds = elapsed(t0);
    return res;
}

CheckResult check_moments() {
    const auto t0 = Clock::now();
    CheckResult res;
    res.name = "moments";
    res.tolerance = 1e-12;

    const Op X1 = Op::X1, X2 = Op::X2;
    double worst = 0.0;
    for (const ModelConfig& cfg : random_configs(5, 777u, false)) {
        TruncatedFock m = build_model(cfg, 6);
        const double n1 = cfg.norm1, n2 = cfg.norm2;
        auto dev = [&](std::vector<Op> word, cplx want) {
            worst =
                std::fmax(worst, std::abs(vacuum_expectation(m, word) - want));
        };
        dev({X1, X1}, n1 * n1);
        dev({X2, X2}, n2 * n2);
        dev({X1, X2}, std::conj(cfg.alpha));
        dev({X2, X1}, cfg.alpha);
        dev({X1, X1, X1, X1}, 2.0 * n1 * n1 * n1 * n1);
        dev({X2, X2, X2, X2}, 2.0 * n2 * n2 * n2 * n2);
        dev({X1}, 0.0);
        dev({X2}, 0.0);
        dev({X1, X2, X1}, 0.0);
        dev({X2, X2, X2}, 0.0);
    }

    res.residual = worst;
    res.pass = worst <= res.tolerance;
    res.seconds = elapsed(t0);
    return res;
}

CheckResult check_ellipse_case() {
    const auto t0 = Clock::now();
    CheckResult res;
    res.name = "ellipse_case";
    res.tolerance = 1e-12;

    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        cplx a(u(rng), u(rng));
        if (std::abs(a.imag()) < 0.2) a += cplx(0.0, 0.5);
        worst = std::fmax(worst,
                          ellipse_curve_check(EllipseCase{a, 1.0}, 360));
    }

    const EllipseCase circle{cplx(0.0, 1.0), 1.0};
    const EllipseCase cocircle{cplx(0.0, -1.0), 1.0};
    const bool signs = ellipse_principal(circle, 0.0) == -1 &&
                       ellipse_principal(circle, 3.0) == 0 &&
                       ellipse_principal(circle, cplx(2.0, 0.0)) == 0 &&
                       ellipse_principal(cocircle, 0.0) == 1;

    res.residual = worst;
    res.pass = worst <= res.tolerance && signs;
    res.detail = signs ? "indicator signs ok" : "indicator signs WRONG";
    res.seconds = elapsed(t0);
    return res;
}

CheckResult check_spectrum_containment() {
    const auto t0 = Clock::now();
    CheckResult res;
    res.name = "spectrum_containment";
    res.tolerance = 1e-10;

    double worst = 0.0;
    for (const ModelConfig& cfg : random_configs(5, 31337u, false)) {
        TruncatedFock m = build_model(cfg, 8);
        const Eigen::VectorXcd ev = spectrum_T(m);
        for (Eigen::Index k = 0; k < ev.size(); ++k) {
            worst = std::fmax(worst,
                              std::abs(ev(k).real()) - 2.0 * cfg.norm1);
            worst = std::fmax(worst,
                              std::abs(ev(k).imag()) - 2.0 * cfg.norm2);
        }
    }
    worst = std::fmax(worst, 0.0);

    res.residual = worst;
    res.pass = worst <= res.tolerance;
    res.seconds = elapsed(t0);
    return res;
}

std::vector<std::string> suite_names() {
    return {"analytic", "oracle", "lemma", "fock", "ellipse", "all"};
}

VerifyReport run_suite(const std::string& suite) {
    using Fn = CheckResult (*)();
    std::vector<Fn> fns;
    if (suite == "analytic")
        fns = {check_branch_suite, check_stieltjes_chain};
    else if (suite == "oracle")
        fns = {check_green_oracle, check_det_e_oracle};
    else if (suite == "lemma")
        fns = {check_lemma_h_range, check_figure_grid};
    else if (suite == "fock")
        fns = {check_moments, check_pure_part, check_spectrum_containment};
    else if (suite == "ellipse")
        fns = {check_ellipse_case};
    else if (suite == "all")
        fns = {check_branch_suite,  check_green_oracle,
               check_det_e_oracle,  check_stieltjes_chain,
               check_lemma_h_range, check_figure_grid,
               check_pure_part,     check_moments,
               check_ellipse_case,  check_spectrum_containment};
    else
        throw std::invalid_argument("unknown suite: " + suite);

    VerifyReport rep;
    rep.suite = suite;
    for (Fn f : fns) rep.checks.push_back(f());
    return rep;
}

}  // namespace bifree
