#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mems/oracles.hpp"
#include "mems/stationary.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace mems;

namespace {

const NonlinearityProfile kGap = NonlinearityProfile::power_gap(2.0);
const ForcingProfile kUnit = ForcingProfile::constant(1.0);

} // namespace

TEST_CASE("lambda zero converges to zero in one step") {
    const GridDomain g = GridDomain::interval(1.0, 100);
    const StationaryResult res = minimal_solution(g, kUnit, kGap, 0.0);
    CHECK(res.converged);
    CHECK(res.iterations == 1);
    CHECK(res.solution.sup_norm() == 0.0);
}

TEST_CASE("minimal solution at lambda one matches the quadrature reference") {
    const GridDomain g = GridDomain::interval(1.0, 400);
    StationaryControls ctl;
    ctl.record_iterates = true;
    const StationaryResult res = minimal_solution(g, kUnit, kGap, 1.0, ctl);
    CHECK(res.converged);
    CHECK(res.monotone);
    CHECK(res.residual < 1e-8);
    CHECK(res.solution.max() < 0.39);
    CHECK(res.solution.max()
          == doctest::Approx(oracles::interval_minimal_max(1.0)).epsilon(1e-4));
    CHECK(res.solution.min() >= 0.0);
    // Recorded increments end below the tolerance.
    CHECK(res.trace.back().increment < 1e-10);
}

TEST_CASE("above the threshold the iteration diverges") {
    const GridDomain g = GridDomain::interval(1.0, 200);
    const StationaryResult res = minimal_solution(g, kUnit, kGap, 5.0);
    CHECK_FALSE(res.converged);
    CHECK(res.outcome == IterationOutcome::ReachedContact);
}

TEST_CASE("hypothesis gate refuses zero forcing") {
    const GridDomain g = GridDomain::interval(1.0, 64);
    CHECK_THROWS_AS(minimal_solution(g, ForcingProfile::constant(0.0), kGap, 1.0),
                    std::invalid_argument);
}

TEST_CASE("supersolution certificate") {
    const GridDomain g = GridDomain::interval(1.0, 200);
    // Scaled principal mode of the symmetric enlargement: a valid barrier for
    // every lambda up to mu * s * A g(A) / max f.
    const double a = 0.23;
    const double len = 1.0 + 2.0 * a;
    const double mu = M_PI * M_PI / (len * len);
    const double s_min = std::sin(M_PI * a / len);
    const double amp = 0.5;
    const double lambda_cert = mu * s_min * amp * kGap.value(amp);
    const Field psi = Field::sample(
        g, [&](double x) { return amp * std::sin(M_PI * (x + a) / len); });

    StationaryControls ctl;
    ctl.supersolution = &psi;
    const StationaryResult res = minimal_solution(g, kUnit, kGap, 0.9 * lambda_cert, ctl);
    CHECK(res.converged);
    for (int i = 0; i < g.size(); ++i) CHECK(res.solution[i] <= psi[i] + 1e-12);

    // A field that is not a supersolution must be rejected up front.
    const Field bogus = Field::sample(g, [](double x) { return 0.01 * std::sin(M_PI * x); });
    StationaryControls bad;
    bad.supersolution = &bogus;
    CHECK_THROWS_AS(minimal_solution(g, kUnit, kGap, 1.0, bad), std::runtime_error);
}

TEST_CASE("linearized eigenvalue reduces to the principal one at lambda zero") {
    const GridDomain g = GridDomain::interval(1.0, 200);
    const double mu = linearized_eigenvalue(g, kUnit, kGap, 0.0, Field(g, 0.0));
    CHECK(mu == doctest::Approx(principal_eigenpair(g).mu).epsilon(1e-9));
}

TEST_CASE("linearized eigenvalue is positive on the minimal branch") {
    const GridDomain g = GridDomain::interval(1.0, 200);
    const StationaryResult res = minimal_solution(g, kUnit, kGap, 0.7);
    REQUIRE(res.converged);
    CHECK(linearized_eigenvalue(g, kUnit, kGap, 0.7, res.solution) > 0.0);
}

TEST_CASE("analytic bound record on the interval") {
    const GridDomain g = GridDomain::interval(1.0, 400);
    const BoundsRecord rec = lambda_bounds(g, kUnit, kGap);
    CHECK(rec.mu1 == doctest::Approx(M_PI * M_PI).epsilon(1e-4));
    CHECK(rec.f_phi1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rec.sup_sg == doctest::Approx(4.0 / 27).epsilon(1e-12));
    CHECK(rec.gap_area == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(rec.upper_g0.applicable);
    CHECK(rec.upper_g0.value == doctest::Approx(M_PI * M_PI).epsilon(1e-4));
    CHECK(rec.upper_gap_integral.applicable);
    CHECK(rec.upper_gap_integral.value == doctest::Approx(M_PI * M_PI / 3.0).epsilon(1e-4));
    CHECK(rec.lower_nu.applicable);
    CHECK(rec.lower_nu.value == doctest::Approx(oracles::interval_nu(1.0) * 4.0 / 27).epsilon(1e-3));
    CHECK_FALSE(rec.pohozaev.applicable);
    CHECK(rec.pohozaev.note == "needs ball geometry");
    CHECK(rec.lower_nu.value < rec.upper_gap_integral.value);
}

TEST_CASE("star-shaped bound on balls") {
    const BoundsRecord disk = lambda_bounds(GridDomain::ball(2, 1.0, 128), kUnit, kGap);
    CHECK(disk.pohozaev.applicable);
    CHECK(disk.pohozaev.value == doctest::Approx(8.0).epsilon(1e-12));

    // 1/length^2 scaling: the bound must stay above the threshold, which
    // itself scales as 1/R^2.
    const GridDomain small = GridDomain::ball(2, 0.5, 100);
    const BoundsRecord rec_small = lambda_bounds(small, kUnit, kGap);
    CHECK(rec_small.pohozaev.value == doctest::Approx(32.0).epsilon(1e-12));
    const PullInEstimate est = pull_in_voltage(small, kUnit, kGap);
    CHECK(est.lambda_hi <= rec_small.pohozaev.value);
    CHECK(est.lambda_hi == doctest::Approx(4.0 * 0.7892).epsilon(1e-2));

    // Non-constant forcing brings the tilt term in.
    const auto bump = ForcingProfile::radial_bump(1.0, 0.0, 2.0);
    const BoundsRecord rec = lambda_bounds(GridDomain::ball(3, 1.0, 128), bump, kGap);
    CHECK(rec.pohozaev.applicable);
    CHECK(rec.pohozaev.value > 0.0);

    // A forcing vanishing at a point kills the route.
    const auto poly = ForcingProfile::radial_polynomial({0.0, 0.0, 1.0}); // r^2
    const BoundsRecord none = lambda_bounds(GridDomain::ball(2, 1.0, 128), poly, kGap);
    CHECK_FALSE(none.pohozaev.applicable);
}

TEST_CASE("pull-in bisection honors its bracket contract") {
    const GridDomain g = GridDomain::interval(1.0, 100);
    const PullInEstimate est = pull_in_voltage(g, kUnit, kGap, 0.1);
    CHECK(est.lambda_lo < est.lambda_hi);
    CHECK(est.lambda_hi - est.lambda_lo <= 0.1 * est.lambda_hi + 1e-14);
    CHECK(est.bounds.lower_nu.value <= est.lambda_lo * 1.02);
    CHECK(est.lambda_hi <= est.bounds.upper_gap_integral.value * 1.05);
}

TEST_CASE("constant gap turns the threshold into the contact constraint") {
    // Linear problem: v = lambda x (1-x)/2 exists for every lambda, so the
    // threshold is where max v reaches 1, i.e. lambda = 8.
    const GridDomain g = GridDomain::interval(1.0, 200);
    const PullInEstimate est =
        pull_in_voltage(g, kUnit, NonlinearityProfile::constant_one(), 1e-4);
    CHECK(est.lambda_hi == doctest::Approx(8.0).epsilon(5e-3));
}

TEST_CASE("threshold scales inversely with the forcing amplitude") {
    const GridDomain g = GridDomain::interval(1.0, 100);
    const PullInEstimate one = pull_in_voltage(g, kUnit, kGap, 1e-3);
    const PullInEstimate half = pull_in_voltage(g, ForcingProfile::constant(0.5), kGap, 1e-3);
    CHECK(0.5 * (half.lambda_lo + half.lambda_hi)
          == doctest::Approx(2.0 * 0.5 * (one.lambda_lo + one.lambda_hi)).epsilon(2e-3));
}

TEST_CASE("exponential gap profile brackets inside its analytic bounds") {
    // g = e^{-s} never vanishes at the contact state but satisfies the
    // monotonicity and convexity hypotheses, so the threshold machinery
    // applies unchanged.
    const GridDomain g = GridDomain::interval(1.0, 100);
    const auto gap = NonlinearityProfile::exp_gap();
    const PullInEstimate est = pull_in_voltage(g, kUnit, gap, 1e-3);
    CHECK(est.bounds.lower_nu.value * 0.98 <= est.lambda_lo);
    CHECK(est.lambda_hi <= est.bounds.upper_gap_integral.value * 1.02);
    CHECK(est.bounds.upper_gap_integral.value
          == doctest::Approx(M_PI * M_PI * (1.0 - std::exp(-1.0))).epsilon(1e-3));
}

TEST_CASE("tabulated gap profile solves like its analytic source") {
    std::vector<double> s, gv;
    for (int k = 0; k <= 80; ++k) {
        const double x = static_cast<double>(k) / 80;
        s.push_back(x);
        gv.push_back((1.0 - x) * (1.0 - x));
    }
    const auto tab = NonlinearityProfile::tabulated(s, gv);
    const GridDomain g = GridDomain::interval(1.0, 100);
    const StationaryResult a = minimal_solution(g, kUnit, tab, 1.0);
    const StationaryResult b = minimal_solution(g, kUnit, kGap, 1.0);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    Field diff = a.solution;
    diff -= b.solution;
    CHECK(diff.sup_norm() < 5e-4); // interpolation error only
}

TEST_CASE("threshold grows with the gap profile") {
    // (1-s) dominates (1-s)^2 on [0,1), so its threshold is no smaller.
    const GridDomain g = GridDomain::interval(1.0, 100);
    const PullInEstimate p2 = pull_in_voltage(g, kUnit, kGap, 1e-3);
    const PullInEstimate p1 =
        pull_in_voltage(g, kUnit, NonlinearityProfile::power_gap(1.0), 1e-3);
    CHECK(p1.lambda_hi >= p2.lambda_lo);
    CHECK(0.5 * (p1.lambda_lo + p1.lambda_hi) > 0.5 * (p2.lambda_lo + p2.lambda_hi));
}

TEST_CASE("minimal solutions order with the data") {
    const GridDomain g = GridDomain::interval(1.0, 200);

    SUBCASE("strictly larger forcing gives a strictly larger solution") {
        const OrderingReport rep = compare_minimal_solutions(
            g, 0.5, ForcingProfile::constant(0.5), kGap, kUnit, kGap);
        CHECK(rep.weakly_ordered);
        CHECK(rep.inputs_differ);
        CHECK(rep.strictly_ordered);
        CHECK(rep.min_gap > 0.0);
    }
    SUBCASE("equal data give equal solutions") {
        const OrderingReport rep =
            compare_minimal_solutions(g, 0.5, kUnit, kGap, kUnit, kGap);
        CHECK(rep.weakly_ordered);
        CHECK_FALSE(rep.inputs_differ);
        CHECK(rep.worst_violation <= 1e-12);
    }
    SUBCASE("larger gap profile gives the smaller solution") {
        const OrderingReport rep = compare_minimal_solutions(
            g, 0.5, kUnit, NonlinearityProfile::power_gap(1.0), kUnit, kGap);
        CHECK(rep.weakly_ordered);
    }
    SUBCASE("lambda above a threshold is rejected") {
        CHECK_THROWS_AS(
            compare_minimal_solutions(g, 5.0, kUnit, kGap, kUnit, kGap),
            std::runtime_error);
    }
}
