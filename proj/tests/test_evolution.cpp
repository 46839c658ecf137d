#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mems/evolution.hpp"
#include "mems/stationary.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

using namespace mems;

namespace {

const NonlinearityProfile kGap = NonlinearityProfile::power_gap(2.0);
const ForcingProfile kUnit = ForcingProfile::constant(1.0);

} // namespace

TEST_CASE("pure diffusion matches the separable heat solution") {
    const GridDomain g = GridDomain::interval(1.0, 200);
    const Field u0 = Field::sample(g, [](double x) { return std::sin(M_PI * x); });
    EvolveControls ctl;
    ctl.dt_max = 1e-4;
    ctl.sample_interval = -1.0;
    const EvolutionTrace tr = evolve(g, kUnit, kGap, 0.0, u0, 0.1, ctl);
    CHECK(tr.status == EvolveStatus::Completed);
    double err = 0.0;
    const double decay = std::exp(-M_PI * M_PI * tr.final_time);
    for (int i = 0; i < g.size(); ++i)
        err = std::max(err,
                       std::abs(tr.final_state[i] - decay * std::sin(M_PI * g.node(i))));
    CHECK(err < 5.0 * (ctl.dt_max + g.spacing() * g.spacing()));
}

TEST_CASE("trace bookkeeping") {
    const GridDomain g = GridDomain::interval(1.0, 100);
    const EvolutionTrace tr = evolve(g, kUnit, kGap, 0.5, 0.0, 0.5);
    CHECK(tr.status == EvolveStatus::Completed);
    CHECK(tr.final_time == doctest::Approx(0.5));
    for (std::size_t j = 1; j < tr.samples.size(); ++j)
        CHECK(tr.samples[j].t > tr.samples[j - 1].t);
    // E(t) <= max u for nonnegative states since phi1 integrates to one.
    for (const auto& s : tr.samples) CHECK(s.energy <= s.max_u + 1e-12);
    // zero-length run: header-only trace plus the initial sample
    const EvolutionTrace none = evolve(g, kUnit, kGap, 0.5, 0.0, 0.0);
    CHECK(none.samples.size() == 1);
    CHECK(none.steps == 0);
}

TEST_CASE("initial data at the contact level are rejected") {
    const GridDomain g = GridDomain::interval(1.0, 64);
    CHECK_THROWS_AS(evolve(g, kUnit, kGap, 0.5, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("supercritical lambda touches down with a tight bracket") {
    const GridDomain g = GridDomain::interval(1.0, 200);
    const double lambda = 2.0 * M_PI * M_PI / 3.0; // twice the gap-integral bound
    const EvolutionTrace tr = evolve(g, kUnit, kGap, lambda, 0.0, 2.0);
    CHECK(tr.status == EvolveStatus::Touchdown);
    CHECK(tr.contact_first_at > tr.contact_last_below);
    CHECK(tr.contact_first_at - tr.contact_last_below <= 1e-3 + 1e-12);
    CHECK(tr.final_state.max() >= 1.0 - 1e-6);
    // Cross-check against the analytic bound at this lambda.
    const TouchdownBoundsReport tb = touchdown_bounds(g, kUnit, kGap, lambda, Field(g, 0.0));
    REQUIRE(tb.bound_gap.applicable);
    CHECK(tr.contact_first_at <= tb.bound_gap.value * 1.05);
}

TEST_CASE("evolution from the stationary state stays there") {
    const GridDomain g = GridDomain::interval(1.0, 200);
    const StationaryResult st = minimal_solution(g, kUnit, kGap, 0.7);
    REQUIRE(st.converged);
    EvolveControls ctl;
    ctl.reference = &st.solution;
    const EvolutionTrace tr = evolve(g, kUnit, kGap, 0.7, st.solution, 2.0, ctl);
    CHECK(tr.status == EvolveStatus::Completed);
    for (const auto& s : tr.samples) CHECK(s.dist_to_ref < 1e-8);
}

TEST_CASE("identical runs are bitwise identical") {
    const GridDomain g = GridDomain::interval(1.0, 100);
    const EvolutionTrace a = evolve(g, kUnit, kGap, 0.8, 0.1, 1.0);
    const EvolutionTrace b = evolve(g, kUnit, kGap, 0.8, 0.1, 1.0);
    REQUIRE(a.samples.size() == b.samples.size());
    CHECK(std::memcmp(a.samples.data(), b.samples.data(),
                      a.samples.size() * sizeof(TraceSample)) == 0);
    CHECK(a.final_state.values() == b.final_state.values());
}

TEST_CASE("picard local scheme") {
    const GridDomain g = GridDomain::interval(1.0, 100);

    SUBCASE("local time formula at a = 0") {
        const PicardResult res = picard_local(g, kUnit, kGap, 1.0, Field(g, 0.0), 8);
        CHECK(res.t_local == doctest::Approx(0.0625).epsilon(1e-15));
        CHECK(res.ceiling_ok);
        CHECK(res.dt_halvings == 0);
        REQUIRE(res.gaps.size() == 8);
        for (std::size_t k = 2; k < res.gaps.size(); ++k)
            CHECK(res.gaps[k] <= 0.8 * res.gaps[k - 1] + 1e-16);
        CHECK(res.gaps.back() < 1e-6);
    }
    SUBCASE("nonzero floor raises a and shrinks the window") {
        const PicardResult res = picard_local(g, kUnit, kGap, 1.0, Field(g, 0.2), 3);
        const double expected = (1.0 - 0.2) * kGap.value(0.6) / 4.0;
        CHECK(res.t_local == doctest::Approx(expected).epsilon(1e-14));
    }
    SUBCASE("lambda zero has no local-time formula") {
        CHECK_THROWS_AS(picard_local(g, kUnit, kGap, 0.0, Field(g, 0.0), 3),
                        std::invalid_argument);
    }
    SUBCASE("last sweep agrees with the stepper") {
        const PicardResult res = picard_local(g, kUnit, kGap, 1.0, Field(g, 0.0), 8);
        EvolveControls ctl;
        ctl.dt_max = res.dt;
        ctl.sample_interval = -1.0;
        ctl.record_states = true;
        const EvolutionTrace tr = evolve(g, kUnit, kGap, 1.0, 0.0, res.t_local, ctl);
        REQUIRE(tr.states.size() == res.last_iterate.size());
        double sup = 0.0;
        for (std::size_t j = 0; j < tr.states.size(); ++j) {
            Field d = tr.states[j];
            d -= res.last_iterate[j];
            sup = std::max(sup, d.sup_norm());
        }
        CHECK(sup <= 5.0 * (res.dt + g.spacing() * g.spacing()));
        CHECK(sup < 1e-5);
    }
}

TEST_CASE("disk evolution: settles below threshold, touches down above") {
    const GridDomain disk = GridDomain::ball(2, 1.0, 150);

    SUBCASE("subcritical run approaches the minimal state") {
        const double lambda = 0.4; // below the disk threshold near 0.789
        const StationaryResult st = minimal_solution(disk, kUnit, kGap, lambda);
        REQUIRE(st.converged);
        const DecayRecord rec = convergence_to_stationary(disk, kUnit, kGap, lambda,
                                                          Field(disk, 0.0), st.solution,
                                                          1e-5, 50.0);
        CHECK(rec.converged);
        CHECK(rec.sandwich_ok);
    }
    SUBCASE("supercritical run is dominated by the gap bound") {
        const double lambda = 3.0;
        const EvolutionTrace tr = evolve(disk, kUnit, kGap, lambda, 0.0, 2.0);
        REQUIRE(tr.status == EvolveStatus::Touchdown);
        const TouchdownBoundsReport tb =
            touchdown_bounds(disk, kUnit, kGap, lambda, Field(disk, 0.0));
        REQUIRE(tb.bound_gap.applicable);
        REQUIRE(tb.bound_energy.applicable);
        CHECK(tr.contact_first_at <= tb.bound_gap.value * 1.05);
        CHECK(tr.contact_first_at <= tb.bound_energy.value * 1.05);
    }
}

TEST_CASE("larger lambda touches down no later") {
    const GridDomain g = GridDomain::interval(1.0, 100);
    double prev = std::numeric_limits<double>::infinity();
    for (double lambda : {5.0, 6.0, 8.0}) {
        const EvolutionTrace tr = evolve(g, kUnit, kGap, lambda, 0.0, 2.0);
        REQUIRE(tr.status == EvolveStatus::Touchdown);
        CHECK(tr.contact_first_at <= prev);
        prev = tr.contact_first_at;
    }
}

TEST_CASE("touchdown bound report") {
    const GridDomain g = GridDomain::interval(1.0, 400);
    const Field zero(g, 0.0);

    SUBCASE("thresholds and values at lambda = 6") {
        const TouchdownBoundsReport rep = touchdown_bounds(g, kUnit, kGap, 6.0, zero);
        CHECK(rep.lambda_energy == doctest::Approx(M_PI * M_PI * 4.0 / 27).epsilon(1e-4));
        CHECK(rep.lambda_gap == doctest::Approx(M_PI * M_PI / 3.0).epsilon(1e-4));
        CHECK(rep.energy0 == doctest::Approx(0.0));
        REQUIRE(rep.bound_energy.applicable);
        REQUIRE(rep.bound_gap.applicable);
        // Internal consistency: both routes reduce to H(0)/(lambda - threshold).
        CHECK(rep.bound_energy.value
              == doctest::Approx((1.0 / 3) / (6.0 - rep.lambda_energy)).epsilon(1e-12));
        CHECK(rep.bound_gap.value
              == doctest::Approx((1.0 / 3) / (6.0 - rep.lambda_gap)).epsilon(1e-10));
        CHECK(rep.bound_gap.value == doctest::Approx(0.12299).epsilon(1e-3));
        REQUIRE(rep.bound_localized.applicable);
        CHECK(rep.localized_lambda == doctest::Approx(4.0 * M_PI * M_PI * 4.0 / 27).epsilon(1e-3));
    }
    SUBCASE("gap route is gated by its threshold") {
        const TouchdownBoundsReport rep = touchdown_bounds(g, kUnit, kGap, 2.0, zero);
        CHECK(rep.bound_energy.applicable); // 2 > 1.46
        CHECK_FALSE(rep.bound_gap.applicable);
        CHECK(rep.bound_gap.note == "lambda below the gap threshold");
    }
    SUBCASE("localized route needs nonnegative data") {
        const TouchdownBoundsReport rep =
            touchdown_bounds(g, kUnit, kGap, 6.0, Field(g, -0.1));
        CHECK_FALSE(rep.bound_localized.applicable);
        CHECK(rep.bound_localized.note == "needs u0 >= 0");
    }
}

TEST_CASE("energy inequality holds at the default step and couples to dt") {
    const GridDomain g = GridDomain::interval(1.0, 400);
    const EigenPair pair = principal_eigenpair(g);
    EvolveControls fine;
    fine.sample_interval = -1.0;
    fine.eigenpair = &pair;
    const EvolutionTrace tr = evolve(g, kUnit, kGap, 6.0, 0.0, 1.0, fine);
    REQUIRE(tr.status == EvolveStatus::Touchdown);
    const EnergyCheckReport ok = energy_inequality_check(tr, g, kUnit, kGap, 6.0, pair);
    CHECK(ok.max_violation <= ok.tol);

    EvolveControls coarse = fine;
    coarse.dt_max = 1e-2;
    const EvolutionTrace tc = evolve(g, kUnit, kGap, 6.0, 0.0, 1.0, coarse);
    const EnergyCheckReport bad = energy_inequality_check(tc, g, kUnit, kGap, 6.0, pair);
    CHECK(bad.max_violation > ok.tol); // tenfold step exceeds the fine-run tolerance

    CHECK_THROWS_AS(
        energy_inequality_check(tr, g, ForcingProfile::radial_polynomial({0.0, 1.0}),
                                kGap, 6.0, pair),
        std::invalid_argument); // inf f = 0 on the interval
}

TEST_CASE("energy inequality reduces to pure decay at lambda zero") {
    const GridDomain g = GridDomain::interval(1.0, 200);
    const EigenPair pair = principal_eigenpair(g);
    const Field u0 = Field::sample(g, [](double x) { return 0.5 * std::sin(M_PI * x); });
    EvolveControls ctl;
    ctl.sample_interval = -1.0;
    ctl.eigenpair = &pair;
    const EvolutionTrace tr = evolve(g, kUnit, kGap, 0.0, u0, 0.5, ctl);
    // E(t) = E(0) e^{-mu t}: the reaction term drops out and the inequality
    // holds with near-equality along the whole trace.
    const EnergyCheckReport rep = energy_inequality_check(tr, g, kUnit, kGap, 0.0, pair);
    CHECK(rep.max_violation <= rep.tol);
    const double e0 = tr.samples.front().energy;
    const double ef = tr.samples.back().energy;
    CHECK(ef == doctest::Approx(e0 * std::exp(-pair.mu * tr.final_time)).epsilon(1e-2));
}

TEST_CASE("comparison suite") {
    const GridDomain g = GridDomain::interval(1.0, 100);

    SUBCASE("ordered data stay strictly ordered") {
        const ComparisonReport rep = comparison_suite(g, kUnit, kGap, 0.7, Field(g, 0.0),
                                                      Field(g, 0.2), 2.0);
        CHECK(rep.ordered);
        CHECK(rep.strictly_ordered);
        CHECK(rep.max_order_violation <= 1e-12);
        CHECK(rep.l1_positive_part_ok);
        CHECK(rep.l1_absolute_ok);
        CHECK(rep.growth_rate > 0.0);
    }
    SUBCASE("equal data give identical traces") {
        const ComparisonReport rep = comparison_suite(g, kUnit, kGap, 0.7, Field(g, 0.05),
                                                      Field(g, 0.05), 1.0);
        CHECK(rep.identical);
        CHECK(rep.ordered);
    }
    SUBCASE("misordered data are rejected") {
        CHECK_THROWS_AS(comparison_suite(g, kUnit, kGap, 0.7, Field(g, 0.2),
                                         Field(g, 0.0), 1.0),
                        std::invalid_argument);
    }
}

TEST_CASE("convergence to the stationary state with the heat-flow sandwich") {
    const GridDomain g = GridDomain::interval(1.0, 100);
    const StationaryResult st = minimal_solution(g, kUnit, kGap, 0.7);
    REQUIRE(st.converged);
    const DecayRecord rec = convergence_to_stationary(g, kUnit, kGap, 0.7, Field(g, 0.0),
                                                      st.solution, 1e-5, 50.0);
    CHECK(rec.converged);
    CHECK(rec.exit_distance < 1e-5);
    CHECK(rec.sandwich_ok);
    CHECK(rec.dissipation > 0.0);
    CHECK(rec.dissipation_tail < 1e-8);
    // Distances decrease along the recorded curve (up to the first samples).
    CHECK(rec.distance_curve.front().second > rec.distance_curve.back().second);

    CHECK_THROWS_AS(convergence_to_stationary(g, kUnit, kGap, 0.7, Field(g, 0.5),
                                              st.solution, 1e-5, 1.0),
                    std::invalid_argument); // u0 above the reference
}

TEST_CASE("dichotomy probe in both regimes") {
    const GridDomain g = GridDomain::interval(1.0, 100);
    SUBCASE("well above the threshold") {
        const DichotomyReport rep = dichotomy_probe(g, kUnit, kGap, 3.0, 5.0);
        CHECK(rep.status == EvolveStatus::Touchdown);
        CHECK_FALSE(std::isnan(rep.t_above_099));
        CHECK(rep.windowed_sup_monotone);
    }
    SUBCASE("below the threshold the state settles") {
        const DichotomyReport rep = dichotomy_probe(g, kUnit, kGap, 1.0, 5.0);
        CHECK(rep.status == EvolveStatus::Completed);
        CHECK(std::isnan(rep.t_above_099));
        CHECK(rep.final_max < 0.5);
        CHECK(rep.windowed_sup_monotone);
    }
}
