#pragma once

namespace mems::oracles {

/// First zero of the Bessel function J0; the unit-disk principal Dirichlet
/// eigenvalue is its square.
double bessel_j0_first_zero();

/// Pull-in threshold of -u'' = lambda / (1-u)^p on an interval of unit
/// forcing, by the time-map reduction: a symmetric solution with center
/// height m has lambda(m) = (2/length^2) * I(m)^2 with
///   I(m) = integral_0^m du / sqrt(Psi(m) - Psi(u)),  Psi' = 1/g,
/// and the threshold is the maximum of lambda(m) over m in (0,1). Pure
/// quadrature plus golden-section search; fully independent of the
/// finite-difference path.
double interval_pull_in(double p = 2.0, double length = 1.0);

/// Center height (= max) of the minimal stationary solution at a given
/// lambda below the threshold: the smaller root of lambda(m) = lambda.
double interval_minimal_max(double lambda, double p = 2.0, double length = 1.0);

/// Closed-form dilation scan max_a pi^2/(L(1+2a))^2 * sin(pi a/(1+2a)) by
/// golden-section search; reference for the interval enclosure estimate.
double interval_nu(double length = 1.0);

} // namespace mems::oracles
