#pragma once
// Acceptance matrix: every release criterion, run at a configurable scale
// tier with one pass/fail line per criterion.

#include <iosfwd>
#include <string>
#include <vector>

namespace friable {

enum class Tier { Small, Medium, Large };

// Empirical-bound constants; configuration values, not hard-coded in checks.
struct VerifyConfig {
    double ht_rel_tol = 0.1;          // saddle-point formula envelope
    double rankin_slack = 1e-6;       // relative slack on the Rankin bound
    double c_zeta_psi = 10.0;         // constant in the zeta*x^alpha <= C log x Psi check
    double c_psi_ratio = 10.0;        // constant in the Psi(x/d) <= C Psi/d^alpha check
    double debruijn_rel_tol = 0.05;   // |Lambda/Psi - 1| envelope
    double major_arc_rel_tol = 0.25;  // |E - main|/Psi at the large-x point
    double perron_rel_tol = 0.05;
    double abc_envelope = 5.0;        // multiple of log(u+1)/log y around ratio 1
    unsigned rng_seed = 20260825;
};

struct CriterionResult {
    std::string id;
    bool hard = true;
    bool passed = false;
    double seconds = 0;
    std::string detail;
};

std::vector<CriterionResult> run_acceptance(Tier tier, std::ostream& log,
                                            const VerifyConfig& cfg = {});

// true iff no hard criterion failed
bool all_hard_passed(const std::vector<CriterionResult>& results);

}  // namespace friable
