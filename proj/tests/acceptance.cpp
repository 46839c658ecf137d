// Acceptance battery: one pass/fail line per criterion, nonzero exit on any
// failure. The same checks back the `mems verify-all` subcommand.

#include "mems/verify.hpp"

#include <cstdio>

int main() {
    std::printf("running acceptance checks (N = 400)\n");
    const auto checks = mems::run_acceptance_checks({400});
    const bool ok = mems::print_check_table(checks);
    return ok ? 0 : 1;
}
