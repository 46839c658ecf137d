#include "mems/oracles.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace mems::oracles {

namespace {

constexpr double kGolden = 0.6180339887498949;

double golden_max(const std::function<double(double)>& fn, double a, double b, double tol,
                  double* arg = nullptr) {
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + kGolden * (b - a); f2 = fn(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - kGolden * (b - a); f1 = fn(x1);
        }
    }
    if (arg) *arg = 0.5 * (a + b);
    return fn(0.5 * (a + b));
}

// Psi(u) = integral_0^u (1-s)^{-p} ds.
double psi_power(double u, double p) {
    if (p == 1.0) return -std::log1p(-u);
    return (std::pow(1.0 - u, 1.0 - p) - 1.0) / (p - 1.0);
}

// I(m) = integral_0^m du / sqrt(Psi(m) - Psi(u)); substituting u = m - t^2
// regularizes the square-root endpoint. Composite Simpson.
double time_map_integral(double m, double p) {
    const double tmax = std::sqrt(m);
    const double psim = psi_power(m, p);
    auto integrand = [&](double t) {
        if (t == 0.0) {
            // limit 2 t / sqrt(Psi'(m) t^2) = 2 sqrt(g(m)) at the center
            return 2.0 * std::sqrt(std::pow(1.0 - m, p));
        }
        const double u = m - t * t;
        const double d = psim - psi_power(u, p);
        return 2.0 * t / std::sqrt(d);
    };
    const int n = 8192; // even
    const double h = tmax / n;
    double acc = integrand(0.0) + integrand(tmax);
    for (int k = 1; k < n; ++k) acc += integrand(k * h) * (k % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

double lambda_of_center(double m, double p, double length) {
    const double i = time_map_integral(m, p);
    // Half-width length/2 = I(m)/sqrt(2 lambda)
    return 2.0 * i * i / (length * length);
}

} // namespace

double bessel_j0_first_zero() { return 2.404825557695773; }

double interval_pull_in(double p, double length) {
    if (p <= 0.0 || length <= 0.0)
        throw std::invalid_argument("pull-in reference needs p, length > 0");
    return golden_max([&](double m) { return lambda_of_center(m, p, length); },
                      1e-4, 1.0 - 1e-9, 1e-12);
}

double interval_minimal_max(double lambda, double p, double length) {
    double m_star = 0.0;
    const double peak = golden_max([&](double m) { return lambda_of_center(m, p, length); },
                                   1e-4, 1.0 - 1e-9, 1e-12, &m_star);
    if (lambda <= 0.0) return 0.0;
    if (lambda >= peak)
        throw std::invalid_argument("no stationary branch at or above the pull-in threshold");
    // lambda(m) increases from 0 to the peak on (0, m_star]; bisect.
    double lo = 1e-14, hi = m_star;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (lambda_of_center(mid, p, length) < lambda ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double interval_nu(double length) {
    const double nu = golden_max(
        [&](double a) {
            const double len = length * (1.0 + 2.0 * a);
            return M_PI * M_PI / (len * len) * std::sin(M_PI * a / (1.0 + 2.0 * a));
        },
        1e-4, 50.0, 1e-12);
    return nu;
}

} // namespace mems::oracles
