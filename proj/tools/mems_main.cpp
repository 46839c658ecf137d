// Scenario runner for the membrane deflection solvers: stationary minimal
// solutions, pull-in bracketing with analytic bounds, time evolution with
// touchdown detection, the local Picard scheme, and the verification suite.
//
// Exit codes: 0 success, 1 usage/config error, 2 failed verification.

#include "mems/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>

namespace {

struct CliOverrides {
    std::string config;
    std::string out_dir;
    double lambda = -1.0;
    int grid_n = -1;
    bool seedless = false;
    bool verbose = false;
};

void add_common(CLI::App* sub, CliOverrides& ov) {
    sub->add_option("--config", ov.config, "scenario config file (key = value lines)");
    sub->add_option("--out", ov.out_dir, "output directory for artifacts");
    sub->add_option("--lambda", ov.lambda, "override mode.lambda");
    sub->add_option("--grid-n", ov.grid_n, "override domain.N");
    sub->add_flag("--seedless", ov.seedless,
                  "record that the run uses no randomness (solvers are deterministic)");
    sub->add_flag("--verbose", ov.verbose, "emit per-iteration traces");
}

int dispatch(mems::RunMode mode, const CLI::App* sub, const CliOverrides& ov) {
    mems::ScenarioConfig cfg;
    if (!ov.config.empty()) cfg = mems::parse_scenario_file(ov.config);
    cfg.mode = mode;
    if (!ov.out_dir.empty()) cfg.out_dir = ov.out_dir;
    if (sub->count("--lambda")) cfg.lambda = ov.lambda;
    if (sub->count("--grid-n")) cfg.nodes = ov.grid_n;
    cfg.seedless = cfg.seedless || ov.seedless;
    cfg.verbose = cfg.verbose || ov.verbose;
    return mems::run_scenario(cfg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"membrane deflection toolkit: stationary states, pull-in "
                 "threshold, evolution and touchdown analysis"};
    app.require_subcommand(1);

    struct Entry {
        const char* name;
        const char* help;
        mems::RunMode mode;
    };
    const Entry entries[] = {
        {"stationary", "minimal stationary solution at a fixed lambda", mems::RunMode::Stationary},
        {"pullin", "bisect the pull-in threshold", mems::RunMode::PullIn},
        {"bounds", "analytic pull-in bounds only", mems::RunMode::Bounds},
        {"evolve", "time integration with touchdown detection", mems::RunMode::Evolve},
        {"picard", "local-existence scheme on [0, T_local]", mems::RunMode::Picard},
        {"verify-all", "run the full verification battery", mems::RunMode::VerifyAll},
    };

    CliOverrides ov[6];
    CLI::App* subs[6];
    for (int i = 0; i < 6; ++i) {
        subs[i] = app.add_subcommand(entries[i].name, entries[i].help);
        add_common(subs[i], ov[i]);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        for (int i = 0; i < 6; ++i)
            if (subs[i]->parsed()) return dispatch(entries[i].mode, subs[i], ov[i]);
        std::fprintf(stderr, "no subcommand selected\n");
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
