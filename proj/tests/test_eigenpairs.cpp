#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mems/eigenpairs.hpp"
#include "mems/oracles.hpp"

#include <cmath>
#include <stdexcept>

using namespace mems;

TEST_CASE("interval principal eigenpair") {
    const GridDomain g = GridDomain::interval(1.0, 400);
    const EigenPair pair = principal_eigenpair(g);
    CHECK(pair.mu == doctest::Approx(M_PI * M_PI).epsilon(1e-3));

    // Unit-integral normalization forces the amplitude pi/2 of sin(pi x).
    double sup = 0.0;
    for (int i = 0; i < g.size(); ++i)
        sup = std::max(sup,
                       std::abs(pair.phi[i] - 0.5 * M_PI * std::sin(M_PI * g.node(i))));
    CHECK(sup < 5e-3);

    CHECK(integrate(g, pair.phi) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pair.residual <= 1e-8 * pair.mu * pair.phi.max());
    for (int i = 0; i < g.size(); ++i) CHECK(pair.phi[i] > 0.0);
}

TEST_CASE("scaling and disk references") {
    const EigenPair two = principal_eigenpair(GridDomain::interval(2.0, 400));
    CHECK(two.mu == doctest::Approx(M_PI * M_PI / 4.0).epsilon(1e-3));

    const EigenPair disk = principal_eigenpair(GridDomain::ball(2, 1.0, 400));
    const double j0 = oracles::bessel_j0_first_zero();
    CHECK(disk.mu == doctest::Approx(j0 * j0).epsilon(5e-3));

    const EigenPair b3 = principal_eigenpair(GridDomain::ball(3, 1.0, 400));
    CHECK(b3.mu == doctest::Approx(M_PI * M_PI).epsilon(1e-3));
}

TEST_CASE("max-one normalization") {
    const GridDomain g = GridDomain::interval(1.0, 100);
    const EigenPair pair = principal_eigenpair(g, Normalization::MaxOne);
    CHECK(pair.phi.max() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("rayleigh consistency via summation by parts") {
    const GridDomain g = GridDomain::interval(1.0, 256);
    const EigenPair pair = principal_eigenpair(g);
    const auto& phi = pair.phi;
    const int n = g.size();
    const double h = g.spacing();
    double energy = phi[0] * phi[0] + phi[n - 1] * phi[n - 1];
    for (int i = 0; i + 1 < n; ++i) {
        const double d = phi[i + 1] - phi[i];
        energy += d * d;
    }
    energy /= h;
    const double rayleigh = energy / inner(g, phi, phi);
    CHECK(rayleigh == doctest::Approx(pair.mu).epsilon(1e-6));

    // Same identity through the operator, on a ball.
    const GridDomain b = GridDomain::ball(2, 1.0, 256);
    const EigenPair pd = principal_eigenpair(b);
    const double viaop = -inner(b, pd.phi, apply_laplacian(b, pd.phi)) / inner(b, pd.phi, pd.phi);
    CHECK(viaop == doctest::Approx(pd.mu).epsilon(1e-9));
}

TEST_CASE("domain monotonicity") {
    const double mu1 = principal_eigenpair(GridDomain::interval(1.0, 200)).mu;
    const double mu2 = principal_eigenpair(GridDomain::interval(1.3, 200)).mu;
    CHECK(mu1 > mu2);
}

TEST_CASE("dilation scan on the interval") {
    const GridDomain g = GridDomain::interval(1.0, 64);
    const NuEstimate nu = nu_lower_bound(g);
    CHECK(nu.nu_hat == doctest::Approx(oracles::interval_nu(1.0)).epsilon(1e-4));
    CHECK(nu.best_dilation > 0.05);
    CHECK(nu.best_dilation < 5.0);

    // Unimodal scan profile: a single ascent followed by a single descent.
    int direction_changes = 0;
    for (std::size_t k = 2; k < nu.scan.size(); ++k) {
        const bool up_prev = nu.scan[k - 1].product >= nu.scan[k - 2].product;
        const bool up_now = nu.scan[k].product >= nu.scan[k - 1].product;
        if (up_prev != up_now) ++direction_changes;
    }
    CHECK(direction_changes <= 1);

    // Both scan ends degenerate: tiny overlap or huge domain kills the product.
    const NuEstimate tiny = nu_lower_bound(g, {1e-4, 1e-2, 20});
    CHECK(tiny.nu_hat < 0.35);
    const NuEstimate huge = nu_lower_bound(g, {20.0, 50.0, 20});
    CHECK(huge.nu_hat < 0.05);

    CHECK_THROWS_AS(nu_lower_bound(g, {0.0, 1.0, 10}), std::invalid_argument);
    CHECK_THROWS_AS(nu_lower_bound(g, {0.1, 1.0, 0}), std::invalid_argument);
}

TEST_CASE("dilation scan on the disk") {
    const GridDomain g = GridDomain::ball(2, 1.0, 128);
    const NuEstimate nu = nu_lower_bound(g, {0.1, 4.0, 60});
    CHECK(nu.nu_hat > 0.0);
    CHECK(nu.best_dilation > 0.1);
    CHECK(nu.best_dilation < 4.0);
    // Every scanned enclosure certifies a pull-in lower bound; for the unit
    // disk with unit forcing the threshold is near 0.789, so the certified
    // lower value must stay below it.
    CHECK(nu.nu_hat * (4.0 / 27.0) < 0.789);
}
