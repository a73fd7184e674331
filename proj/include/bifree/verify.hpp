#pragma once

#include <string>
#include <vector>

namespace bifree {

struct CheckResult {
    std::string name;
    bool pass = false;
    double residual = 0.0;   // worst measured deviation
    double tolerance = 0.0;  // what it was held against
    double seconds = 0.0;
    std::string detail;      // one free-form line, may be empty
};

struct VerifyReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

// The ten acceptance checks, tolerances pinned in verify.cpp.
CheckResult check_branch_suite();          // q/zeta branch + boundary limit
CheckResult check_green_oracle();          // closed vs solve, + decay rate
CheckResult check_det_e_oracle();          // closed vs rank-one solve
CheckResult check_stieltjes_chain();       // det E -> f -> g by inversion
CheckResult check_lemma_h_range();         // sign/bound/boundary/argmax of h
CheckResult check_figure_grid();           // canonical grid + commutator
CheckResult check_pure_part();             // Krylov vs graded bases
CheckResult check_moments();               // second/fourth/odd moments
CheckResult check_ellipse_case();          // dependent-vector indicator
CheckResult check_spectrum_containment();  // truncated eigenvalues in box

/// Suites: analytic, oracle, lemma, fock, ellipse, all.  "all" runs every
/// check above exactly once, in acceptance order.
std::vector<std::string> suite_names();
VerifyReport run_suite(const std::string& suite);

}  // namespace bifree
