#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bifree/fock.hpp"
#include "bifree/io.hpp"
#include "bifree/verify.hpp"

namespace {

using namespace bifree;

struct Flags {
    std::string config_path;
    int depth = -1;
    std::string out;
    std::string format;
    std::string suite = "all";
};

RunConfig load(const Flags& fl) {
    RunConfig rc;
    if (!fl.config_path.empty()) rc = read_config_file(fl.config_path);
    if (fl.depth > 0) rc.depth = fl.depth;
    if (!fl.format.empty()) rc.format = fl.format;
    if (!fl.out.empty()) rc.output_path = fl.out;
    std::string why;
    if (!rc.valid(&why)) throw ConfigError(why);
    return rc;
}

int cmd_grid(const Flags& fl) {
    const RunConfig rc = load(fl);
    if (!rc.model.independent() || !rc.model.nonnormal())
        throw ConfigError(
            "grid needs linearly independent vectors and Im alpha != 0");

    const PrincipalGrid g = principal_grid(rc.model, rc.n_gamma, rc.n_delta);

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!rc.output_path.empty()) {
        file.open(rc.output_path, std::ios::binary);
        if (!file) throw IoError("cannot open for writing: " + rc.output_path);
        os = &file;
    }
    if (rc.format == "csv")
        write_csv(g, *os);
    else
        *os << grid_to_json(g).dump(2) << "\n";
    os->flush();
    if (!*os) throw IoError("write failed");
    return 0;
}

int cmd_verify(const Flags& fl) {
    load(fl);  // validate whatever config was given; suites pin their own
    const VerifyReport rep = run_suite(fl.suite);
    int failures = 0;
    for (const CheckResult& c : rep.checks) {
        if (!c.pass) ++failures;
        std::printf("check=%s status=%s residual=%.3e tol=%.3e time=%.2fs%s%s\n",
                    c.name.c_str(), c.pass ? "pass" : "fail", c.residual,
                    c.tolerance, c.seconds, c.detail.empty() ? "" : " ",
                    c.detail.c_str());
    }
    std::printf("suite=%s checks=%zu failures=%d\n", rep.suite.c_str(),
                rep.checks.size(), failures);
    return failures == 0 ? 0 : 1;
}

int cmd_spectrum(const Flags& fl) {
    const RunConfig rc = load(fl);
    const ModelConfig& cfg = rc.model;
    std::printf("rectangle [%.17g, %.17g] x i[%.17g, %.17g]\n",
                -2.0 * cfg.norm1, 2.0 * cfg.norm1, -2.0 * cfg.norm2,
                2.0 * cfg.norm2);

    if (!cfg.independent()) {
        // dependent vectors: the essential spectrum collapses to the ellipse
        const EllipseCase ec = EllipseCase::from_config(cfg);
        std::printf("mode=ellipse a=%.17g%+.17gi scale=%.17g\n",
                    ec.alpha_dep.real(), ec.alpha_dep.imag(), ec.norm2);
        std::printf(
            "curve x^2 + |a|^2 y^2 - 2 Re(a) x y = 4 Im(a)^2, residual=%.3e\n",
            ellipse_curve_check(ec, 360));
        return 0;
    }

    TruncatedFock m = build_model(cfg, rc.depth);
    const Eigen::VectorXcd ev = spectrum_T(m);
    double worst = 0.0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        worst = std::max(worst, std::abs(ev(k).real()) - 2.0 * cfg.norm1);
        worst = std::max(worst, std::abs(ev(k).imag()) - 2.0 * cfg.norm2);
    }
    worst = std::max(worst, 0.0);
    std::printf("mode=rectangle depth=%d eigenvalues=%lld max_violation=%.3e\n",
                rc.depth, static_cast<long long>(ev.size()), worst);
    return worst > 1e-8 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"principal function of a bi-free central limit operator"};
    app.require_subcommand(1);

    Flags fl;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", fl.config_path, "flat key=value file");
        sub->add_option("--depth", fl.depth, "Fock truncation depth");
        sub->add_option("--out", fl.out, "output path (default stdout)");
        sub->add_option("--format", fl.format, "csv or json");
    };
    CLI::App* grid = app.add_subcommand("grid", "export the principal grid");
    add_common(grid);
    CLI::App* verify = app.add_subcommand("verify", "run a check suite");
    add_common(verify);
    verify->add_option("--suite", fl.suite,
                       "analytic|oracle|lemma|fock|ellipse|all");
    CLI::App* spectrum =
        app.add_subcommand("spectrum", "truncated spectrum vs the rectangle");
    add_common(spectrum);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (grid->parsed()) return cmd_grid(fl);
        if (verify->parsed()) return cmd_verify(fl);
        return cmd_spectrum(fl);
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
