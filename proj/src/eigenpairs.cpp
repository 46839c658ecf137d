#include "mems/eigenpairs.hpp"

#include <cmath>
#include <stdexcept>

namespace mems {

namespace {

double rayleigh(const GridDomain& dom, const Field& x) {
    const Field ax = apply_laplacian(dom, x);
    return -inner(dom, x, ax) / inner(dom, x, x);
}

} // namespace

EigenPair principal_eigenpair(const GridDomain& dom, Normalization norm) {
    const int n = dom.size();
    Field x(dom, 1.0); // positive start, never orthogonal to the ground state

    double mu_prev = 0.0;
    int iterations = 0;
    bool settled = false;
    const int max_iterations = 10000;
    for (; iterations < max_iterations; ++iterations) {
        Field y = solve_poisson(dom, x);
        const double scale = y.sup_norm();
        if (!(scale > 0.0))
            throw std::runtime_error("eigen iteration collapsed to zero");
        y *= 1.0 / scale;
        const double mu = rayleigh(dom, y);
        const Field ay = apply_laplacian(dom, y);
        double res = 0.0;
        for (int i = 0; i < n; ++i) res = std::max(res, std::abs(ay[i] + mu * y[i]));
        x = std::move(y);
        // Rayleigh quotients settle long before the vector does; iterate
        // until the residual certifies the eigenfunction as well.
        if (iterations > 0 && std::abs(mu - mu_prev) <= 1e-12 * std::abs(mu)
            && res <= 5e-9 * std::abs(mu) * x.sup_norm()) {
            mu_prev = mu;
            ++iterations;
            settled = true;
            break;
        }
        mu_prev = mu;
    }
    if (!settled)
        throw std::runtime_error("eigen iteration failed to converge (internal error)");

    // Sign fix: the ground state has one sign; make it positive.
    double pos = 0.0, neg = 0.0;
    for (int i = 0; i < n; ++i) (x[i] >= 0.0 ? pos : neg) += std::abs(x[i]);
    if (neg > pos) x *= -1.0;

    EigenPair pair;
    pair.mu = mu_prev;
    pair.iterations = iterations;
    pair.normalization = norm;
    if (norm == Normalization::IntegralOne) {
        const double total = integrate(dom, x);
        if (total == 0.0) throw std::runtime_error("eigenfunction has zero integral");
        x *= 1.0 / total;
    } else {
        x *= 1.0 / x.max();
    }
    pair.phi = std::move(x);

    const Field ax = apply_laplacian(dom, pair.phi);
    double res = 0.0;
    for (int i = 0; i < n; ++i)
        res = std::max(res, std::abs(ax[i] + pair.mu * pair.phi[i]));
    pair.residual = res;
    return pair;
}

NuEstimate nu_lower_bound(const GridDomain& dom, const DilationScan& scan) {
    if (scan.steps < 1 || scan.a_min <= 0.0 || scan.a_max < scan.a_min)
        throw std::invalid_argument("dilation scan is empty");

    NuEstimate out;
    out.scan.reserve(static_cast<std::size_t>(scan.steps));

    for (int k = 0; k < scan.steps; ++k) {
        const double a = scan.steps == 1
            ? scan.a_min
            : scan.a_min + (scan.a_max - scan.a_min) * k / (scan.steps - 1);
        NuScanPoint pt;
        pt.dilation = a;
        if (dom.shape() == Shape::Interval) {
            // Symmetric enlargement to length L(1+2a): the max-one
            // eigenfunction is sin(pi (x + aL) / (L(1+2a))), smallest over
            // the original closure at the endpoints.
            const double length = dom.extent() * (1.0 + 2.0 * a);
            pt.mu = M_PI * M_PI / (length * length);
            pt.min_psi = std::sin(M_PI * a / (1.0 + 2.0 * a));
        } else {
            const GridDomain enlarged =
                GridDomain::ball(dom.dim(), dom.extent() * (1.0 + a), dom.size());
            const EigenPair pair = principal_eigenpair(enlarged, Normalization::MaxOne);
            pt.mu = pair.mu;
            // Radial ground state decreases in r, so the minimum over the
            // original closed ball sits at r = extent(); interpolate there.
            const double r = dom.extent();
            const double he = enlarged.spacing();
            const int i = std::min(enlarged.size() - 2,
                                   std::max(0, static_cast<int>(r / he) - 1));
            const double x0 = enlarged.node(i), x1 = enlarged.node(i + 1);
            const double t = (r - x0) / (x1 - x0);
            pt.min_psi = (1.0 - t) * pair.phi[i] + t * pair.phi[i + 1];
        }
        pt.product = pt.mu * pt.min_psi;
        if (pt.product > out.nu_hat) {
            out.nu_hat = pt.product;
            out.best_dilation = a;
        }
        out.scan.push_back(pt);
    }
    return out;
}

} // namespace mems
