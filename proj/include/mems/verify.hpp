#pragma once

#include <string>
#include <vector>

namespace mems {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct AcceptanceOptions {
    int nodes = 400;
};

/// Runs the full verification battery (eigenvalue accuracy, pull-in bound
/// sandwich, star-shaped bound, monotone iteration, stability sweep,
/// solution monotonicity, comparison estimates, local-existence scheme
/// equivalence, global convergence, touchdown bounds, super-threshold
/// dichotomy). One CheckResult per criterion.
std::vector<CheckResult> run_acceptance_checks(const AcceptanceOptions& opt = {});

/// Prints one pass/fail line per check; returns true when everything passed.
bool print_check_table(const std::vector<CheckResult>& checks);

} // namespace mems
