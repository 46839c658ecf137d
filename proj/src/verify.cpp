#include "mems/verify.hpp"

#include "mems/evolution.hpp"
#include "mems/oracles.hpp"
#include "mems/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

namespace mems {

namespace {

struct Ctx {
    int n = 400;
    GridDomain grid;
    NonlinearityProfile gap = NonlinearityProfile::power_gap(2.0);
    ForcingProfile forcing = ForcingProfile::constant(1.0);
    PullInEstimate pull;
    double lambda_star = 0.0; // bracket midpoint

    explicit Ctx(int nodes)
        : n(nodes), grid(GridDomain::interval(1.0, nodes)) {
        pull = pull_in_voltage(grid, forcing, gap);
        lambda_star = 0.5 * (pull.lambda_lo + pull.lambda_hi);
    }
};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

CheckResult run_check(const std::string& name,
                      const std::function<void(std::ostringstream&)>& body) {
    CheckResult res;
    res.name = name;
    std::ostringstream detail;
    try {
        body(detail);
        res.pass = true;
    } catch (const std::exception& e) {
        res.pass = false;
        detail << " | FAILED: " << e.what();
    }
    res.detail = detail.str();
    return res;
}

void expect(bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error(what);
}

double eigen_error_interval(int n) {
    const GridDomain g = GridDomain::interval(1.0, n);
    return std::abs(principal_eigenpair(g).mu - M_PI * M_PI);
}

double eigen_error_disk(int n) {
    const GridDomain g = GridDomain::ball(2, 1.0, n);
    const double exact = oracles::bessel_j0_first_zero() * oracles::bessel_j0_first_zero();
    return std::abs(principal_eigenpair(g).mu - exact);
}

double convergence_order(const std::function<double(int)>& err) {
    const double e100 = err(100), e400 = err(400);
    const double h_ratio = 401.0 / 101.0; // h = extent/(N+1)
    return std::log(e100 / e400) / std::log(h_ratio);
}

} // namespace

std::vector<CheckResult> run_acceptance_checks(const AcceptanceOptions& opt) {
    std::vector<CheckResult> out;
    Ctx ctx(opt.nodes);

    out.push_back(run_check("01-eigen-accuracy", [&](std::ostringstream& d) {
        const double mu_i = principal_eigenpair(GridDomain::interval(1.0, ctx.n)).mu;
        const double rel_i = std::abs(mu_i - M_PI * M_PI) / (M_PI * M_PI);
        const double j0 = oracles::bessel_j0_first_zero();
        const double mu_d = principal_eigenpair(GridDomain::ball(2, 1.0, ctx.n)).mu;
        const double rel_d = std::abs(mu_d - j0 * j0) / (j0 * j0);
        const double ord_i = convergence_order(eigen_error_interval);
        const double ord_d = convergence_order(eigen_error_disk);
        d << "interval rel err " << fmt(rel_i) << ", disk rel err " << fmt(rel_d)
          << ", orders " << fmt(ord_i) << "/" << fmt(ord_d);
        expect(rel_i < 1e-3, "interval eigenvalue off by more than 0.1%");
        expect(rel_d < 5e-3, "disk eigenvalue off by more than 0.5%");
        expect(ord_i > 1.8 && ord_i < 2.2, "interval convergence order outside [1.8,2.2]");
        expect(ord_d > 1.8 && ord_d < 2.2, "disk convergence order outside [1.8,2.2]");
    }));

    out.push_back(run_check("02-pull-in-bound-sandwich", [&](std::ostringstream& d) {
        const PullInEstimate& est = ctx.pull;
        const BoundsRecord& b = est.bounds;
        d << "bracket [" << fmt(est.lambda_lo) << ", " << fmt(est.lambda_hi) << "]"
          << ", lower " << fmt(b.lower_nu.value) << ", upper " << fmt(b.upper_gap_integral.value);
        expect(b.lower_nu.applicable && b.upper_gap_integral.applicable,
               "bounds not applicable");
        expect(b.lower_nu.value * 0.98 <= est.lambda_lo,
               "dilation lower bound exceeds lambda_lo");
        expect(est.lambda_hi <= b.upper_gap_integral.value * 1.02,
               "lambda_hi exceeds the gap-integral upper bound");
        expect(est.lambda_hi - est.lambda_lo <= 1e-4 * est.lambda_hi + 1e-15,
               "bracket wider than the requested tolerance");

        const GridDomain coarse = GridDomain::interval(1.0, 200);
        const PullInEstimate est200 = pull_in_voltage(coarse, ctx.forcing, ctx.gap);
        const double mid200 = 0.5 * (est200.lambda_lo + est200.lambda_hi);
        d << ", N=200 est " << fmt(mid200);
        expect(std::abs(mid200 - ctx.lambda_star) < 0.01 * ctx.lambda_star,
               "grid refinement moved the estimate by more than 1%");

        const double ref = oracles::interval_pull_in(2.0, 1.0);
        d << ", reference " << fmt(ref);
        expect(std::abs(ctx.lambda_star - ref) < 0.01 * ref,
               "estimate differs from the quadrature reference by more than 1%");
    }));

    out.push_back(run_check("03-star-shaped-bound", [&](std::ostringstream& d) {
        const GridDomain disk = GridDomain::ball(2, 1.0, ctx.n);
        const BoundsRecord b = lambda_bounds(disk, ctx.forcing, ctx.gap);
        d << "star-shaped bound " << fmt(b.pohozaev.value);
        expect(b.pohozaev.applicable, "star-shaped bound not applicable on the disk");
        expect(std::abs(b.pohozaev.value - 8.0) < 1e-12,
               "closed-form disk value is not 8");
        const PullInEstimate est = pull_in_voltage(disk, ctx.forcing, ctx.gap);
        const double cap = std::min(8.0, b.upper_gap_integral.value);
        d << ", disk bracket [" << fmt(est.lambda_lo) << ", " << fmt(est.lambda_hi) << "]";
        expect(est.lambda_hi <= cap * 1.02, "disk bracket exceeds the bound cap");
    }));

    out.push_back(run_check("04-monotone-iteration", [&](std::ostringstream& d) {
        StationaryControls ctl;
        ctl.record_iterates = true;
        const StationaryResult res = minimal_solution(ctx.grid, ctx.forcing, ctx.gap, 1.0, ctl);
        expect(res.converged, "iteration did not converge at lambda = 1");
        expect(res.monotone, "iterates were not pointwise nondecreasing");
        const double scale = 1e-7 * (1.0 + 1.0 / ctx.gap.value(res.solution.max()));
        d << "residual " << fmt(res.residual) << " (cap " << fmt(scale) << "), iterations "
          << res.iterations;
        expect(res.residual <= scale, "stationary residual above tolerance");

        const StationaryResult zero = minimal_solution(ctx.grid, ctx.forcing, ctx.gap, 0.0);
        expect(zero.converged && zero.iterations == 1, "lambda = 0 did not finish in one step");
        expect(zero.solution.sup_norm() == 0.0, "lambda = 0 solution is not identically zero");
    }));

    out.push_back(run_check("05-stability-branch", [&](std::ostringstream& d) {
        const int points = 10;
        double prev_mu = std::numeric_limits<double>::infinity();
        Field prev_v;
        for (int i = 1; i <= points; ++i) {
            const double lambda = 0.95 * ctx.lambda_star * i / points;
            const StationaryResult res = minimal_solution(ctx.grid, ctx.forcing, ctx.gap, lambda);
            expect(res.converged, "sweep point did not converge");
            const double mu = linearized_eigenvalue(ctx.grid, ctx.forcing, ctx.gap, lambda,
                                                    res.solution);
            if (i == 1) d << "mu_tilde from " << fmt(mu);
            if (i == points) d << " to " << fmt(mu);
            expect(mu > 0.0, "stability eigenvalue not positive on the minimal branch");
            expect(mu < prev_mu, "stability eigenvalue not strictly decreasing");
            if (i > 1)
                for (int k = 0; k < ctx.grid.size(); ++k)
                    expect(res.solution[k] > prev_v[k],
                           "minimal solution not strictly increasing in lambda");
            prev_mu = mu;
            prev_v = res.solution;
        }
    }));

    out.push_back(run_check("06-forcing-monotonicity", [&](std::ostringstream& d) {
        const ForcingProfile doubled = ForcingProfile::constant(2.0);
        const OrderingReport rep = compare_minimal_solutions(ctx.grid, 0.5, ctx.forcing, ctx.gap,
                                                             doubled, ctx.gap);
        d << "min gap " << fmt(rep.min_gap);
        expect(rep.weakly_ordered, "doubling f broke the ordering");
        expect(rep.strictly_ordered, "doubling f did not strictly increase the solution");
        const PullInEstimate est2 = pull_in_voltage(ctx.grid, doubled, ctx.gap);
        d << ", pull-in with 2f: [" << fmt(est2.lambda_lo) << ", " << fmt(est2.lambda_hi) << "]";
        expect(est2.lambda_hi <= ctx.pull.lambda_hi,
               "doubling f did not weakly decrease the pull-in estimate");
    }));

    out.push_back(run_check("07-comparison-estimates", [&](std::ostringstream& d) {
        const double lambda = 0.5 * ctx.lambda_star;
        const ComparisonReport rep =
            comparison_suite(ctx.grid, ctx.forcing, ctx.gap, lambda, Field(ctx.grid, 0.0),
                             Field(ctx.grid, 0.2), 5.0);
        d << "min interior gap " << fmt(rep.min_interior_gap) << ", rate b "
          << fmt(rep.growth_rate);
        expect(rep.ordered, "ordered data lost the ordering");
        expect(rep.strictly_ordered, "ordering not strict at interior nodes");
        expect(rep.l1_positive_part_ok, "positive-part L1 estimate violated");
        expect(rep.l1_absolute_ok, "absolute L1 estimate violated");

        const ComparisonReport same =
            comparison_suite(ctx.grid, ctx.forcing, ctx.gap, lambda, Field(ctx.grid, 0.1),
                             Field(ctx.grid, 0.1), 1.0);
        expect(same.identical, "equal initial data did not give bitwise-identical traces");
    }));

    out.push_back(run_check("08-local-scheme-equivalence", [&](std::ostringstream& d) {
        const PicardResult pic =
            picard_local(ctx.grid, ctx.forcing, ctx.gap, 1.0, Field(ctx.grid, 0.0), 8);
        d << "t_local " << fmt(pic.t_local);
        expect(std::abs(pic.t_local - 0.0625) < 1e-15, "local time is not 1/16");
        expect(pic.ceiling_ok, "an iterate broke the midpoint ceiling");
        expect(pic.gaps.size() >= 2, "too few sweeps");
        for (std::size_t k = 2; k < pic.gaps.size(); ++k)
            expect(pic.gaps[k] <= 0.8 * pic.gaps[k - 1] + 1e-16,
                   "iterate gaps not geometrically decreasing");
        d << ", final gap " << fmt(pic.gaps.back());
        expect(pic.gaps.back() < 1e-6, "final iterate gap above 1e-6");

        EvolveControls ctl;
        ctl.dt_max = pic.dt;
        ctl.sample_interval = -1.0;
        ctl.record_states = true;
        const EvolutionTrace tr =
            evolve(ctx.grid, ctx.forcing, ctx.gap, 1.0, 0.0, pic.t_local, ctl);
        expect(tr.states.size() == pic.last_iterate.size(),
               "stepper and scheme produced different time grids");
        double sup = 0.0;
        for (std::size_t j = 0; j < tr.states.size(); ++j) {
            Field diff = tr.states[j];
            diff -= pic.last_iterate[j];
            sup = std::max(sup, diff.sup_norm());
        }
        const double h = ctx.grid.spacing();
        const double cap = 5.0 * (pic.dt + h * h);
        d << ", scheme gap " << fmt(sup) << " (cap " << fmt(cap) << ")";
        expect(sup <= cap, "schemes disagree beyond 5(dt+h^2)");
    }));

    out.push_back(run_check("09-global-convergence", [&](std::ostringstream& d) {
        const double lambda = 0.5 * ctx.lambda_star;
        const StationaryResult st = minimal_solution(ctx.grid, ctx.forcing, ctx.gap, lambda);
        expect(st.converged, "no stationary reference");
        const DecayRecord rec = convergence_to_stationary(
            ctx.grid, ctx.forcing, ctx.gap, lambda, Field(ctx.grid, 0.0), st.solution, 1e-5, 50.0);
        d << "exit t " << fmt(rec.exit_time) << ", dist " << fmt(rec.exit_distance)
          << ", tail " << fmt(rec.dissipation_tail);
        expect(rec.converged, "did not converge to the stationary state by t = 50");
        bool crossed = false;
        for (const auto& [t, dist] : rec.distance_curve)
            if (dist < 1e-4 && t < 50.0) crossed = true;
        expect(crossed, "distance did not drop below 1e-4 before t = 50");
        expect(rec.sandwich_ok, "heat-flow sandwich violated");
        expect(rec.dissipation_tail < 1e-8, "dissipation tail above 1e-8 at exit");
    }));

    out.push_back(run_check("10-touchdown-bounds", [&](std::ostringstream& d) {
        const double lambda = 6.0;
        const TouchdownBoundsReport tb =
            touchdown_bounds(ctx.grid, ctx.forcing, ctx.gap, lambda, Field(ctx.grid, 0.0));
        expect(tb.bound_energy.applicable, "energy bound not applicable at lambda = 6");
        expect(tb.bound_gap.applicable, "gap bound not applicable at lambda = 6");
        expect(tb.bound_localized.applicable, "localized bound not applicable at lambda = 6");

        const EigenPair pair = principal_eigenpair(ctx.grid);
        EvolveControls ctl;
        ctl.sample_interval = -1.0;
        ctl.eigenpair = &pair;
        const EvolutionTrace tr = evolve(ctx.grid, ctx.forcing, ctx.gap, lambda, 0.0, 1.0, ctl);
        expect(tr.status == EvolveStatus::Touchdown, "no touchdown observed at lambda = 6");
        const double obs = tr.contact_first_at;
        d << "observed " << fmt(obs) << ", bounds energy " << fmt(tb.bound_energy.value)
          << " gap " << fmt(tb.bound_gap.value) << " localized " << fmt(tb.bound_localized.value);
        expect(obs <= tb.bound_energy.value * 1.05, "observed touchdown beats the energy bound");
        expect(obs <= tb.bound_gap.value * 1.05, "observed touchdown beats the gap bound");
        expect(obs <= tb.bound_localized.value * 1.05,
               "observed touchdown beats the localized bound");

        const EnergyCheckReport ec =
            energy_inequality_check(tr, ctx.grid, ctx.forcing, ctx.gap, lambda, pair);
        d << ", energy defect " << fmt(ec.max_violation) << " (tol " << fmt(ec.tol) << ")";
        expect(ec.max_violation <= ec.tol, "energy inequality violated beyond tolerance");
    }));

    out.push_back(run_check("11-dichotomy-probe", [&](std::ostringstream& d) {
        const double above = 1.05 * ctx.pull.lambda_hi;
        const DichotomyReport rep =
            dichotomy_probe(ctx.grid, ctx.forcing, ctx.gap, above, 400.0);
        d << "above: status " << (rep.status == EvolveStatus::Touchdown ? "touchdown" : "run")
          << ", t(0.99) " << fmt(rep.t_above_099);
        expect(!std::isnan(rep.t_above_099), "sup u never exceeded 0.99 above the bracket");
        expect(rep.windowed_sup_monotone, "sup u did not climb monotonically");

        const double below = 0.9 * ctx.pull.lambda_lo;
        const StationaryResult st = minimal_solution(ctx.grid, ctx.forcing, ctx.gap, below);
        expect(st.converged, "no stationary state below the bracket");
        const DecayRecord rec = convergence_to_stationary(
            ctx.grid, ctx.forcing, ctx.gap, below, Field(ctx.grid, 0.0), st.solution, 1e-3, 100.0);
        d << "; below: exit dist " << fmt(rec.exit_distance);
        expect(rec.converged, "did not converge to the stationary state below the bracket");
    }));

    return out;
}

bool print_check_table(const std::vector<CheckResult>& checks) {
    bool all = true;
    for (const auto& c : checks) {
        std::printf("%s  %-28s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.detail.c_str());
        all = all && c.pass;
    }
    std::printf("%s: %zu/%zu checks passed\n", all ? "OK" : "FAILURES",
                static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(),
                                                       [](const CheckResult& c) { return c.pass; })),
                checks.size());
    return all;
}

} // namespace mems
