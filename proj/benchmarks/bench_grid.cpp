// Times the parallel grid kernels against their serial references and fails
// if the two ever disagree on a single value.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "bifree/grid.hpp"

using namespace bifree;

namespace {

constexpr double kPi = 3.14159265358979323846;

template <typename F>
double timed(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    const int ng = quick ? 151 : 401;
    const int hn = quick ? 300 : 800;

    const ModelConfig cfg{std::sqrt(2.0), 1.0,
                          {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)}};

    PrincipalGrid gp, gs;
    const double tgp = timed([&] { gp = principal_grid(cfg, ng, ng); });
    const double tgs = timed([&] { gs = principal_grid_serial(cfg, ng, ng); });
    if (gp.values != gs.values || gp.argmax_gamma != gs.argmax_gamma ||
        gp.argmax_delta != gs.argmax_delta) {
        std::fprintf(stderr, "grid kernels disagree\n");
        return 1;
    }

    HScan hp, hs;
    const double thp = timed([&] { hp = h_scan(0.7, kPi / 3.0, hn); });
    const double ths = timed([&] { hs = h_scan_serial(0.7, kPi / 3.0, hn); });
    if (hp.max_abs != hs.max_abs || hp.argmax_i != hs.argmax_i ||
        hp.argmax_j != hs.argmax_j || hp.boundary_max != hs.boundary_max ||
        hp.interior_min != hs.interior_min) {
        std::fprintf(stderr, "h-scan kernels disagree\n");
        return 1;
    }

    std::printf("grid %dx%d      parallel %.3fs  serial %.3fs  speedup %.2fx\n",
                ng, ng, tgp, tgs, tgs / tgp);
    std::printf("h-scan %dx%d   parallel %.3fs  serial %.3fs  speedup %.2fx\n",
                hn, hn, thp, ths, ths / thp);
    std::printf("grid max %.17g at (%d, %d); scan max |h| %.17g\n",
                gp.max_value, gp.argmax_gamma, gp.argmax_delta, hp.max_abs);
    std::printf("identical outputs: yes\n");
    return 0;
}
