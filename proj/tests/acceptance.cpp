// Acceptance gate: one line per criterion, exit code = number of failures.
#include <cstdio>

#include "bifree/verify.hpp"

int main() {
    const bifree::VerifyReport rep = bifree::run_suite("all");
    int failures = 0;
    int idx = 0;
    for (const bifree::CheckResult& c : rep.checks) {
        ++idx;
        if (!c.pass) ++failures;
        std::printf("criterion %2d %-22s %s residual=%.3e tol=%.3e time=%6.2fs%s%s\n",
                    idx, c.name.c_str(), c.pass ? "PASS" : "FAIL", c.residual,
                    c.tolerance, c.seconds, c.detail.empty() ? "" : " ",
                    c.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("acceptance: %d of %zu criteria pass\n",
                static_cast<int>(rep.checks.size()) - failures,
                rep.checks.size());
    return failures;
}
