#include "mems/stationary.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mems {

namespace {

void require_core_hypotheses(const GridDomain& dom, const ForcingProfile& f,
                             const NonlinearityProfile& g, const char* who) {
    const HypothesisReport rep = check_hypotheses(g, f, dom);
    if (!rep.core_ok()) {
        std::ostringstream os;
        os << who << ": profile hypotheses failed\n" << rep.summary();
        throw std::invalid_argument(os.str());
    }
}

Field reaction_rhs(const GridDomain& dom, const Field& fvals,
                   const NonlinearityProfile& g, double lambda, const Field& v) {
    Field rhs(dom);
    for (int i = 0; i < dom.size(); ++i)
        rhs[i] = lambda * fvals[i] / g.value(v[i]);
    return rhs;
}

} // namespace

StationaryResult minimal_solution(const GridDomain& dom, const ForcingProfile& f,
                                  const NonlinearityProfile& g, double lambda,
                                  const StationaryControls& controls) {
    if (lambda < 0.0) throw std::invalid_argument("minimal_solution: lambda must be >= 0");
    require_core_hypotheses(dom, f, g, "minimal_solution");

    const Field fvals = f.sample(dom);
    const int n = dom.size();

    if (controls.supersolution) {
        const Field& psi = *controls.supersolution;
        require_domain(dom, psi);
        const Field lap = apply_laplacian(dom, psi);
        for (int i = 0; i < n; ++i) {
            if (psi[i] >= 1.0)
                throw std::invalid_argument("supersolution reaches the contact state");
            const double defect = -lap[i] - lambda * fvals[i] / g.value(psi[i]);
            if (defect < -1e-9 * (1.0 + std::abs(lap[i]))) {
                std::ostringstream os;
                os << "supersolution certificate violated at node " << i
                   << " (defect " << defect << ")";
                throw std::runtime_error(os.str());
            }
        }
    }

    StationaryResult result;
    result.solution = Field(dom, 0.0);
    Field v = Field(dom, 0.0);

    double prev_increment = 0.0;
    int non_contracting = 0;
    for (int k = 1; k <= controls.max_iterations; ++k) {
        const Field rhs = reaction_rhs(dom, fvals, g, lambda, v);
        Field next = solve_poisson(dom, rhs);

        double increment = 0.0;
        bool monotone_step = true;
        for (int i = 0; i < n; ++i) {
            increment = std::max(increment, std::abs(next[i] - v[i]));
            if (next[i] < v[i]) monotone_step = false;
        }
        result.monotone = result.monotone && monotone_step;
        result.iterations = k;
        result.final_increment = increment;
        if (controls.record_iterates)
            result.trace.push_back({k, increment, next.max()});

        if (controls.supersolution) {
            const Field& psi = *controls.supersolution;
            for (int i = 0; i < n; ++i)
                if (next[i] > psi[i] + 1e-12) {
                    std::ostringstream os;
                    os << "iterate escaped the supplied supersolution at node " << i;
                    throw std::runtime_error(os.str());
                }
        }

        // Contact guard comes before any further g evaluation.
        if (next.max() >= 1.0 - controls.contact_guard) {
            result.outcome = IterationOutcome::ReachedContact;
            result.solution = std::move(next);
            return result;
        }

        v = std::move(next);
        if (increment < controls.tol) {
            result.outcome = IterationOutcome::Converged;
            result.converged = true;
            break;
        }
        if (k > 100) {
            non_contracting = (increment > prev_increment) ? non_contracting + 1 : 0;
            if (non_contracting >= 50) {
                result.outcome = IterationOutcome::NonContracting;
                result.solution = std::move(v);
                return result;
            }
        }
        prev_increment = increment;
    }

    result.solution = std::move(v);
    if (result.converged) {
        const Field lap = apply_laplacian(dom, result.solution);
        double res = 0.0;
        for (int i = 0; i < n; ++i)
            res = std::max(res, std::abs(lap[i] + lambda * fvals[i] / g.value(result.solution[i])));
        result.residual = res;
    }
    return result;
}

double linearized_eigenvalue(const GridDomain& dom, const ForcingProfile& f,
                             const NonlinearityProfile& g, double lambda, const Field& v) {
    require_domain(dom, v);
    const int n = dom.size();
    Field potential(dom);
    double q_min = 0.0;
    for (int i = 0; i < n; ++i) {
        if (v[i] >= 1.0)
            throw std::invalid_argument("linearized_eigenvalue: state reaches contact");
        const double gv = g.value(v[i]);
        potential[i] = lambda * f.value(dom.node(i)) * g.slope(v[i]) / (gv * gv);
        q_min = std::min(q_min, potential[i]);
    }

    // Gershgorin floor of -Delta_h + diag(q) is min q; shift safely below it
    // so the shifted operator is strictly diagonally dominant.
    const double sigma = q_min - 1.0;
    Field shift_diag(dom);
    for (int i = 0; i < n; ++i) shift_diag[i] = potential[i];

    Field x(dom, 1.0);
    double mu_prev = 0.0;
    const int max_iterations = 20000;
    for (int it = 0; it < max_iterations; ++it) {
        Field y = solve_shifted(dom, -sigma, x, &shift_diag);
        const double scale = y.sup_norm();
        if (!(scale > 0.0))
            throw std::runtime_error("linearized eigen iteration collapsed");
        y *= 1.0 / scale;
        // Rayleigh quotient of the full operator in the weighted product.
        const Field ay = apply_laplacian(dom, y);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < n; ++i) {
            num += dom.weight(i) * y[i] * (-ay[i] + potential[i] * y[i]);
            den += dom.weight(i) * y[i] * y[i];
        }
        const double mu = num / den;
        x = std::move(y);
        if (it > 0 && std::abs(mu - mu_prev) <= 1e-10 * (std::abs(mu) + std::abs(sigma)))
            return mu;
        mu_prev = mu;
    }
    return mu_prev;
}

BoundsRecord lambda_bounds(const GridDomain& dom, const ForcingProfile& f,
                           const NonlinearityProfile& g, const DilationScan& scan) {
    BoundsRecord rec;
    const EigenPair pair = principal_eigenpair(dom);
    rec.mu1 = pair.mu;
    rec.f_phi1 = inner(dom, f.sample(dom), pair.phi);

    const SupSG sg = sup_s_times_g(g);
    rec.sup_sg = sg.value;
    rec.sup_sg_arg = sg.maximizer;
    rec.gap_area = gap_integral(g, 0.0);

    const auto st = f.stats_on(dom);
    rec.max_f = st.sup;
    rec.inf_f = st.inf;

    const NuEstimate nu = nu_lower_bound(dom, scan);
    rec.nu_hat = nu.nu_hat;
    rec.nu_best_dilation = nu.best_dilation;

    if (st.sup > 0.0) {
        rec.lower_nu.value = rec.nu_hat * rec.sup_sg / st.sup;
        rec.lower_nu.applicable = true;
    } else {
        rec.lower_nu.note = "needs max f > 0";
    }

    if (rec.f_phi1 > 0.0) {
        rec.upper_g0.value = rec.mu1 * g.value(0.0) / rec.f_phi1;
        rec.upper_g0.applicable = true;
        rec.upper_gap_integral.value = rec.mu1 * rec.gap_area / rec.f_phi1;
        rec.upper_gap_integral.applicable = true;
    } else {
        rec.upper_g0.note = rec.upper_gap_integral.note = "needs integral(f phi1) > 0";
    }

    if (dom.shape() != Shape::Ball) {
        rec.pohozaev.note = "needs ball geometry";
    } else if (!(st.inf > 0.0)) {
        rec.pohozaev.note = "needs inf f > 0";
    } else {
        // Star-shaped identity with x.normal = R on the sphere:
        // ((n+2)||f|| + 2 b1) |dOmega| g(0) / (delta1^2 R |Omega|),
        // i.e. n ((n+2)||f|| + 2 b1) g(0) / (delta1^2 R^2).
        const double n = dom.dim();
        rec.pohozaev.value = ((n + 2.0) * st.sup + 2.0 * st.tilt_sup)
                           * dom.boundary_measure() * g.value(0.0)
                           / (st.inf * st.inf * dom.extent() * dom.volume());
        rec.pohozaev.applicable = true;
    }
    return rec;
}

PullInEstimate pull_in_voltage(const GridDomain& dom, const ForcingProfile& f,
                               const NonlinearityProfile& g, double tol_rel,
                               const StationaryControls& controls,
                               const DilationScan& scan) {
    if (tol_rel <= 0.0) throw std::invalid_argument("pull_in_voltage: tolerance must be positive");
    require_core_hypotheses(dom, f, g, "pull_in_voltage");

    PullInEstimate est;
    est.bounds = lambda_bounds(dom, f, g, scan);
    if (!est.bounds.upper_gap_integral.applicable)
        throw std::runtime_error("pull_in_voltage: no applicable upper bound to bracket with");

    StationaryControls solve_controls = controls;
    solve_controls.record_iterates = false;
    auto converges = [&](double lambda) {
        return minimal_solution(dom, f, g, lambda, solve_controls).converged;
    };

    double hi = 1.05 * est.bounds.upper_gap_integral.value;
    est.probes = 1;
    if (converges(hi))
        throw std::runtime_error(
            "pull_in_voltage: iteration converged above the analytic upper bound; "
            "discretization inconsistent with the bound");

    double lo = 0.0; // converges trivially
    while (hi - lo > tol_rel * hi) {
        const double mid = 0.5 * (lo + hi);
        ++est.probes;
        if (converges(mid))
            lo = mid;
        else
            hi = mid;
    }
    est.lambda_lo = lo;
    est.lambda_hi = hi;
    return est;
}

OrderingReport compare_minimal_solutions(const GridDomain& dom, double lambda,
                                         const ForcingProfile& f1, const NonlinearityProfile& g1,
                                         const ForcingProfile& f2, const NonlinearityProfile& g2,
                                         const StationaryControls& controls) {
    StationaryResult r1 = minimal_solution(dom, f1, g1, lambda, controls);
    StationaryResult r2 = minimal_solution(dom, f2, g2, lambda, controls);
    if (!r1.converged || !r2.converged)
        throw std::runtime_error("compare_minimal_solutions: lambda above a pull-in estimate");

    OrderingReport rep;
    const int n = dom.size();
    rep.min_gap = std::numeric_limits<double>::infinity();
    rep.worst_violation = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double gap = r2.solution[i] - r1.solution[i];
        if (gap < rep.min_gap) rep.min_gap = gap;
        if (-gap > rep.worst_violation) {
            rep.worst_violation = -gap;
            rep.violation_node = i;
        }
        const double fa = f1.value(dom.node(i)), fb = f2.value(dom.node(i));
        if (std::abs(fa - fb) > 1e-14 * (1.0 + std::abs(fb))) rep.inputs_differ = true;
    }
    rep.weakly_ordered = rep.worst_violation <= 1e-12;
    rep.strictly_ordered = rep.min_gap > 0.0;
    rep.v_small = std::move(r1.solution);
    rep.v_big = std::move(r2.solution);
    return rep;
}

} // namespace mems
