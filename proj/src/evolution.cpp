#include "mems/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mems {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

struct StepperSetup {
    Field fvals;
    double sup_f = 0.0;
    double dt_max = 0.0;
    double sample_interval = 0.0;
};

StepperSetup make_setup(const GridDomain& dom, const ForcingProfile& f,
                        const EvolveControls& controls) {
    StepperSetup s;
    s.fvals = f.sample(dom);
    s.sup_f = f.stats_on(dom).sup;
    const double ext = dom.extent();
    s.dt_max = controls.dt_max > 0.0 ? controls.dt_max : 1e-3 * ext * ext;
    s.sample_interval = controls.sample_interval == 0.0 ? 10.0 * s.dt_max
                                                        : controls.sample_interval;
    return s;
}

// Reaction-limited step size: the explicit source may close at most a
// c_r-fraction of the gap to the contact state per step.
double reaction_dt(const NonlinearityProfile& g, double lambda, double sup_f,
                   double max_u, double safety) {
    if (lambda <= 0.0 || sup_f <= 0.0) return std::numeric_limits<double>::infinity();
    const double gv = g.value(max_u);
    const double gs = std::abs(g.slope(max_u));
    return safety * gv * gv / (lambda * sup_f * gs + 1e-300);
}

// One semi-implicit step: (I - dt Delta_h) u_next = u + dt lambda f / g(u).
Field imex_step(const GridDomain& dom, const Field& fvals, const NonlinearityProfile& g,
                double lambda, const Field& u, double dt) {
    Field rhs(dom);
    for (int i = 0; i < dom.size(); ++i)
        rhs[i] = u[i] / dt + lambda * fvals[i] / g.value(u[i]);
    return solve_shifted(dom, 1.0 / dt, rhs);
}

void require_initial_state(const Field& u0) {
    if (u0.max() >= 1.0)
        throw std::invalid_argument("initial state must stay below the contact level 1");
}

} // namespace

EvolutionTrace evolve(const GridDomain& dom, const ForcingProfile& f,
                      const NonlinearityProfile& g, double lambda, double u0,
                      double t_end, const EvolveControls& controls) {
    return evolve(dom, f, g, lambda, Field(dom, u0), t_end, controls);
}

EvolutionTrace evolve(const GridDomain& dom, const ForcingProfile& f,
                      const NonlinearityProfile& g, double lambda, const Field& u0,
                      double t_end, const EvolveControls& controls) {
    require_domain(dom, u0);
    require_initial_state(u0);
    if (lambda < 0.0) throw std::invalid_argument("evolve: lambda must be >= 0");
    if (t_end < 0.0) throw std::invalid_argument("evolve: t_end must be >= 0");

    const StepperSetup setup = make_setup(dom, f, controls);

    EigenPair local_pair;
    const EigenPair* pair = controls.eigenpair;
    if (!pair) {
        local_pair = principal_eigenpair(dom);
        pair = &local_pair;
    }

    EvolutionTrace trace;
    trace.contact_last_below = kNaN;
    trace.contact_first_at = kNaN;
    trace.dt_smallest = std::numeric_limits<double>::infinity();
    trace.dt_largest = 0.0;

    Field u = u0;
    double t = 0.0;

    auto record = [&](double dt_used) {
        TraceSample s;
        s.t = t;
        s.max_u = u.max();
        s.energy = inner(dom, u, pair->phi);
        s.dist_to_ref = controls.reference ? [&] {
            Field d = u;
            d -= *controls.reference;
            return d.sup_norm();
        }() : kNaN;
        s.dt = dt_used;
        trace.samples.push_back(s);
        if (controls.record_states) trace.states.push_back(u);
    };

    record(0.0);
    if (u.max() >= 1.0 - controls.contact_threshold) {
        trace.status = EvolveStatus::Touchdown;
        trace.contact_last_below = 0.0;
        trace.contact_first_at = 0.0;
        trace.final_state = std::move(u);
        return trace;
    }

    double next_sample = setup.sample_interval > 0.0 ? setup.sample_interval : 0.0;
    while (t < t_end) {
        if (trace.steps >= controls.max_steps) {
            trace.status = EvolveStatus::StepFailure;
            break;
        }
        double dt = std::min(setup.dt_max,
                             reaction_dt(g, lambda, setup.sup_f, u.max(), controls.reaction_safety));
        dt = std::max(dt, controls.dt_min);
        dt = std::min(dt, t_end - t);

        Field next = imex_step(dom, setup.fvals, g, lambda, u, dt);
        bool finite = true;
        for (double x : next.values())
            if (!std::isfinite(x)) finite = false;
        if (!finite) {
            trace.status = EvolveStatus::StepFailure;
            break;
        }

        const double t_prev = t;
        t += dt;
        ++trace.steps;
        trace.dt_smallest = std::min(trace.dt_smallest, dt);
        trace.dt_largest = std::max(trace.dt_largest, dt);

        const bool hit_contact = next.max() >= 1.0 - controls.contact_threshold;
        u = std::move(next);

        if (hit_contact) {
            trace.status = EvolveStatus::Touchdown;
            trace.contact_last_below = t_prev;
            trace.contact_first_at = t;
            record(dt);
            break;
        }
        if (setup.sample_interval <= 0.0 || t >= next_sample || t >= t_end) {
            record(dt);
            if (setup.sample_interval > 0.0)
                while (next_sample <= t) next_sample += setup.sample_interval;
        }
    }

    if (trace.samples.back().t != t) record(trace.dt_largest);
    trace.final_state = std::move(u);
    trace.final_time = t;
    if (trace.dt_smallest == std::numeric_limits<double>::infinity()) trace.dt_smallest = 0.0;
    return trace;
}

PicardResult picard_local(const GridDomain& dom, const ForcingProfile& f,
                          const NonlinearityProfile& g, double lambda, const Field& u0,
                          int sweeps, double dt_hint) {
    require_domain(dom, u0);
    require_initial_state(u0);
    if (lambda <= 0.0)
        throw std::invalid_argument("picard_local: the local-time formula needs lambda > 0");
    if (sweeps < 1) throw std::invalid_argument("picard_local: need at least one sweep");

    const double a = std::max(0.0, u0.max());
    if (a >= 1.0) throw std::invalid_argument("picard_local: initial state at contact");
    const double sup_f = f.stats_on(dom).sup;
    if (sup_f <= 0.0) throw std::invalid_argument("picard_local: needs ||f|| > 0");

    PicardResult result;
    result.t_local = (1.0 - a) * g.value(0.5 * (1.0 + a)) / (4.0 * lambda * sup_f);
    result.sweeps = sweeps;

    const double ceiling = 0.5 * (1.0 + a);
    const Field fvals = f.sample(dom);

    double dt_want = dt_hint > 0.0 ? dt_hint : result.t_local / 512.0;
    for (int attempt = 0;; ++attempt) {
        const int m = std::max(2, static_cast<int>(std::ceil(result.t_local / dt_want)));
        const double dt = result.t_local / m;

        std::vector<Field> prev(static_cast<std::size_t>(m) + 1, u0); // sweep 0: frozen at u0
        std::vector<Field> cur;
        std::vector<double> gaps;
        bool ceiling_broken = false;

        for (int k = 1; k <= sweeps && !ceiling_broken; ++k) {
            cur.assign(1, u0);
            cur.reserve(static_cast<std::size_t>(m) + 1);
            double gap = 0.0;
            for (int j = 0; j < m; ++j) {
                Field rhs(dom);
                for (int i = 0; i < dom.size(); ++i)
                    rhs[i] = cur[static_cast<std::size_t>(j)][i] / dt
                           + lambda * fvals[i] / g.value(prev[static_cast<std::size_t>(j)][i]);
                Field next = solve_shifted(dom, 1.0 / dt, rhs);
                if (next.max() > ceiling + 1e-12) {
                    ceiling_broken = true;
                    break;
                }
                cur.push_back(std::move(next));
            }
            if (ceiling_broken) break;
            for (std::size_t j = 0; j < cur.size(); ++j) {
                Field d = cur[j];
                d -= prev[j];
                gap = std::max(gap, d.sup_norm());
            }
            gaps.push_back(gap);
            prev = cur;
        }

        if (!ceiling_broken) {
            result.dt = dt;
            result.dt_halvings = attempt;
            result.ceiling_ok = true;
            result.gaps = std::move(gaps);
            result.times.resize(static_cast<std::size_t>(m) + 1);
            for (int j = 0; j <= m; ++j) result.times[static_cast<std::size_t>(j)] = j * dt;
            result.last_iterate = std::move(prev);
            return result;
        }
        if (attempt >= 5)
            throw std::runtime_error(
                "picard_local: iterate escaped the (1+a)/2 ceiling after 5 dt halvings; "
                "discretization too coarse");
        dt_want *= 0.5;
    }
}

TouchdownBoundsReport touchdown_bounds(const GridDomain& dom, const ForcingProfile& f,
                                       const NonlinearityProfile& g, double lambda,
                                       const Field& u0, std::optional<LocalWindow> window) {
    require_domain(dom, u0);
    require_initial_state(u0);

    TouchdownBoundsReport rep;
    const EigenPair pair = principal_eigenpair(dom);
    rep.mu1 = pair.mu;
    const auto st = f.stats_on(dom);
    rep.delta1 = st.inf;
    rep.f_phi1 = inner(dom, f.sample(dom), pair.phi);
    rep.sup_sg = sup_s_times_g(g).value;
    rep.energy0 = inner(dom, u0, pair.phi);

    // Energy route: needs inf f > 0, convex reciprocal, lambda above threshold.
    if (!(rep.delta1 > 0.0)) {
        rep.bound_energy.note = "needs inf f > 0";
    } else {
        rep.lambda_energy = rep.mu1 * rep.sup_sg / rep.delta1;
        if (!g.reciprocal_convex()) {
            rep.bound_energy.note = "needs convex 1/g";
        } else if (!(lambda > rep.lambda_energy)) {
            rep.bound_energy.note = "lambda below the energy threshold";
        } else {
            rep.bound_energy.value =
                gap_integral(g, rep.energy0) / ((lambda - rep.lambda_energy) * rep.delta1);
            rep.bound_energy.applicable = true;
        }
    }

    // Gap route: only needs lambda above mu1 H(0) / integral(f phi1).
    if (rep.f_phi1 > 0.0) {
        rep.lambda_gap = rep.mu1 * gap_integral(g, 0.0) / rep.f_phi1;
        if (lambda > rep.lambda_gap) {
            Field hu(dom);
            for (int i = 0; i < dom.size(); ++i) hu[i] = gap_integral(g, u0[i]);
            rep.bound_gap.value = inner(dom, hu, pair.phi) / rep.f_phi1 / (lambda - rep.lambda_gap);
            rep.bound_gap.applicable = true;
        } else {
            rep.bound_gap.note = "lambda below the gap threshold";
        }
    } else {
        rep.bound_gap.note = "needs integral(f phi1) > 0";
    }

    // Localized route: the energy bound of an inscribed concentric window.
    LocalWindow win = window.value_or(LocalWindow{
        dom.shape() == Shape::Interval ? 0.5 * dom.extent() : 0.0, 0.25 * dom.extent()});
    rep.localized_radius = win.radius;
    if (u0.min() < 0.0) {
        rep.bound_localized.note = "needs u0 >= 0";
    } else if (!g.reciprocal_convex()) {
        rep.bound_localized.note = "needs convex 1/g";
    } else {
        const int sub_n = std::max(8, dom.size() / 2);
        const GridDomain sub = dom.shape() == Shape::Interval
            ? GridDomain::interval(2.0 * win.radius, sub_n)
            : GridDomain::ball(dom.dim(), win.radius, sub_n);
        const double offset = dom.shape() == Shape::Interval ? win.center - win.radius : 0.0;

        double delta_r = std::numeric_limits<double>::infinity();
        for (int i = 0; i < sub.size(); ++i)
            delta_r = std::min(delta_r, f.value(offset + sub.node(i)));
        if (!(delta_r > 0.0)) {
            rep.bound_localized.note = "needs inf f > 0 on the window";
        } else {
            const EigenPair sub_pair = principal_eigenpair(sub);
            rep.localized_lambda = sub_pair.mu * rep.sup_sg / delta_r;
            if (!(lambda > rep.localized_lambda)) {
                rep.bound_localized.note = "lambda below the localized threshold";
            } else {
                // Restrict u0 to the window by linear interpolation.
                Field u0_sub(sub);
                for (int i = 0; i < sub.size(); ++i) {
                    const double x = offset + sub.node(i);
                    const double h = dom.spacing();
                    int j = static_cast<int>(x / h) - 1;
                    j = std::max(0, std::min(dom.size() - 2, j));
                    const double x0 = dom.node(j), x1 = dom.node(j + 1);
                    const double w = (x - x0) / (x1 - x0);
                    u0_sub[i] = (1.0 - w) * u0[j] + w * u0[j + 1];
                }
                const double e1 = inner(sub, u0_sub, sub_pair.phi);
                rep.bound_localized.value =
                    gap_integral(g, std::min(e1, 1.0 - 1e-12))
                    / ((lambda - rep.localized_lambda) * delta_r);
                rep.bound_localized.applicable = true;
            }
        }
    }
    return rep;
}

EnergyCheckReport energy_inequality_check(const EvolutionTrace& trace, const GridDomain& dom,
                                          const ForcingProfile& f, const NonlinearityProfile& g,
                                          double lambda, const EigenPair& pair) {
    if (!g.reciprocal_convex())
        throw std::invalid_argument("energy check needs the convex-reciprocal hypothesis");
    const double delta1 = f.stats_on(dom).inf;
    if (!(delta1 > 0.0))
        throw std::invalid_argument("energy check needs inf f > 0");

    EnergyCheckReport rep;
    const auto& s = trace.samples;
    if (s.size() < 3) return rep;

    // Intervals at the dt_min clamp (the sub-resolution contact crawl) are
    // excluded; they sit below the scheme's resolution by construction.
    const double dt_floor = 1e-11;
    const double cap = 1.0 - 1e-12;
    double lam_g = 0.0; // Lipschitz scale of the reaction in E over the attained range
    {
        double e_max = 0.0;
        for (const auto& smp : s) e_max = std::max(e_max, smp.energy);
        lam_g = g.max_reciprocal_slope(std::min(e_max, 0.95));
    }
    rep.tol = 1.5 * (trace.dt_largest + dom.spacing() * dom.spacing())
            * (pair.mu + lambda * delta1 * lam_g);

    rep.max_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j + 1 < s.size(); ++j) {
        const double dp = s[j + 1].t - s[j].t;
        const double dm = s[j].t - s[j - 1].t;
        if (dp <= dt_floor || dm <= dt_floor) continue;
        // Second-order derivative on the nonuniform stencil.
        const double dEdt = (dm * dm * s[j + 1].energy
                             + (dp * dp - dm * dm) * s[j].energy
                             - dp * dp * s[j - 1].energy)
                          / (dp * dm * (dp + dm));
        const double e = std::min(s[j].energy, cap);
        const double rhs = -pair.mu * s[j].energy + lambda * delta1 / g.value(e);
        rep.max_violation = std::max(rep.max_violation, rhs - dEdt);
        ++rep.samples;
    }
    if (rep.samples == 0) rep.max_violation = 0.0;
    return rep;
}

ComparisonReport comparison_suite(const GridDomain& dom, const ForcingProfile& f,
                                  const NonlinearityProfile& g, double lambda,
                                  const Field& u0_low, const Field& u0_high, double t_end,
                                  const EvolveControls& controls) {
    require_domain(dom, u0_low);
    require_domain(dom, u0_high);
    require_initial_state(u0_low);
    require_initial_state(u0_high);
    for (int i = 0; i < dom.size(); ++i)
        if (u0_low[i] > u0_high[i] + 1e-15)
            throw std::invalid_argument("comparison_suite: initial data must be ordered");

    const StepperSetup setup = make_setup(dom, f, controls);

    ComparisonReport rep;
    rep.ordered = true;
    rep.strictly_ordered = true;
    rep.identical = true;
    rep.min_interior_gap = std::numeric_limits<double>::infinity();
    rep.max_order_violation = 0.0;

    bool differ = false;
    double m_attained = std::max(u0_low.max(), u0_high.max());
    for (int i = 0; i < dom.size(); ++i)
        if (u0_low[i] != u0_high[i]) differ = true;

    const double l1_pos0 = [&] {
        double acc = 0.0;
        for (int i = 0; i < dom.size(); ++i)
            acc += dom.weight(i) * std::max(0.0, u0_low[i] - u0_high[i]);
        return acc;
    }();
    const double l1_abs0 = [&] {
        double acc = 0.0;
        for (int i = 0; i < dom.size(); ++i)
            acc += dom.weight(i) * std::abs(u0_low[i] - u0_high[i]);
        return acc;
    }();

    Field u1 = u0_low, u2 = u0_high;
    double t = 0.0;
    rep.l1_positive_part_ok = true;
    rep.l1_absolute_ok = true;

    const double slack = 1e-8;
    auto check_sample = [&](double time) {
        double viol = 0.0, gap = std::numeric_limits<double>::infinity();
        bool same = true;
        double l1p = 0.0, l1a = 0.0;
        for (int i = 0; i < dom.size(); ++i) {
            const double d = u1[i] - u2[i];
            viol = std::max(viol, d);
            gap = std::min(gap, -d);
            if (u1[i] != u2[i]) same = false;
            l1p += dom.weight(i) * std::max(0.0, d);
            l1a += dom.weight(i) * std::abs(d);
        }
        rep.max_order_violation = std::max(rep.max_order_violation, viol);
        if (viol > 1e-12) rep.ordered = false;
        if (time > 0.0 && differ) {
            rep.min_interior_gap = std::min(rep.min_interior_gap, gap);
            if (!(gap > 0.0)) rep.strictly_ordered = false;
        }
        if (!same) rep.identical = false;
        const double grow = std::exp(rep.growth_rate * time);
        if (l1p > grow * l1_pos0 + slack * (1.0 + l1p)) rep.l1_positive_part_ok = false;
        if (l1a > grow * l1_abs0 + slack * (1.0 + l1a)) rep.l1_absolute_ok = false;
        ++rep.samples;
    };

    // b is recomputed as the attained range grows; the final value reported.
    rep.growth_rate = lambda * setup.sup_f * g.max_reciprocal_slope(std::min(m_attained, 1.0 - 1e-9));
    check_sample(0.0);

    double next_sample = setup.sample_interval;
    long steps = 0;
    while (t < t_end) {
        if (steps++ >= controls.max_steps)
            throw std::runtime_error("comparison_suite: step budget exhausted");
        const double dt_a = reaction_dt(g, lambda, setup.sup_f, u1.max(), controls.reaction_safety);
        const double dt_b = reaction_dt(g, lambda, setup.sup_f, u2.max(), controls.reaction_safety);
        double dt = std::min({setup.dt_max, dt_a, dt_b, t_end - t});
        dt = std::max(dt, controls.dt_min);

        u1 = imex_step(dom, setup.fvals, g, lambda, u1, dt);
        u2 = imex_step(dom, setup.fvals, g, lambda, u2, dt);
        t += dt;
        m_attained = std::max({m_attained, u1.max(), u2.max()});
        if (m_attained >= 1.0 - controls.contact_threshold)
            throw std::runtime_error("comparison_suite: a run reached the contact guard");
        rep.growth_rate = lambda * setup.sup_f
                        * g.max_reciprocal_slope(std::min(m_attained, 1.0 - 1e-9));

        if (setup.sample_interval <= 0.0 || t >= next_sample || t >= t_end) {
            check_sample(t);
            if (setup.sample_interval > 0.0)
                while (next_sample <= t) next_sample += setup.sample_interval;
        }
    }
    if (!differ) rep.strictly_ordered = false; // vacuous for equal data
    if (rep.min_interior_gap == std::numeric_limits<double>::infinity())
        rep.min_interior_gap = 0.0;
    return rep;
}

DecayRecord convergence_to_stationary(const GridDomain& dom, const ForcingProfile& f,
                                      const NonlinearityProfile& g, double lambda,
                                      const Field& u0, const Field& v_ref,
                                      double tol_conv, double t_max,
                                      const EvolveControls& controls) {
    require_domain(dom, u0);
    require_domain(dom, v_ref);
    require_initial_state(u0);
    for (int i = 0; i < dom.size(); ++i)
        if (u0[i] > v_ref[i] + 1e-12)
            throw std::invalid_argument("convergence_to_stationary: u0 must lie below the reference");

    const StepperSetup setup = make_setup(dom, f, controls);

    DecayRecord rec;
    rec.sandwich_ok = true;
    rec.max_sandwich_violation = 0.0;

    Field u = u0;
    Field w = u0; // pure heat flow of the same data with the same stepper
    double t = 0.0;

    auto distance = [&] {
        Field d = u;
        d -= v_ref;
        return d.sup_norm();
    };

    std::vector<std::pair<double, double>> dissipation_history;
    double next_sample = setup.sample_interval;
    rec.distance_curve.push_back({0.0, distance()});
    dissipation_history.push_back({0.0, 0.0});

    long steps = 0;
    while (t < t_max) {
        if (steps++ >= controls.max_steps) break;
        double dt = std::min(setup.dt_max,
                             reaction_dt(g, lambda, setup.sup_f, u.max(), controls.reaction_safety));
        dt = std::max(dt, controls.dt_min);
        dt = std::min(dt, t_max - t);

        Field next = imex_step(dom, setup.fvals, g, lambda, u, dt);
        // Heat twin: same solve with zero reaction.
        Field wrhs(dom);
        for (int i = 0; i < dom.size(); ++i) wrhs[i] = w[i] / dt;
        Field wnext = solve_shifted(dom, 1.0 / dt, wrhs);

        double ut2 = 0.0;
        for (int i = 0; i < dom.size(); ++i) {
            const double r = (next[i] - u[i]) / dt;
            ut2 += dom.weight(i) * r * r;
        }
        rec.dissipation += dt * ut2;

        u = std::move(next);
        w = std::move(wnext);
        t += dt;

        if (u.max() >= 1.0 - controls.contact_threshold) {
            rec.status = EvolveStatus::Touchdown;
            break;
        }
        for (int i = 0; i < dom.size(); ++i) {
            const double viol = std::max(w[i] - u[i], u[i] - v_ref[i]);
            if (viol > rec.max_sandwich_violation) rec.max_sandwich_violation = viol;
        }

        const double dist = distance();
        if (setup.sample_interval <= 0.0 || t >= next_sample || dist < tol_conv || t >= t_max) {
            rec.distance_curve.push_back({t, dist});
            dissipation_history.push_back({t, rec.dissipation});
            if (setup.sample_interval > 0.0)
                while (next_sample <= t) next_sample += setup.sample_interval;
        }
        if (dist < tol_conv) {
            rec.converged = true;
            break;
        }
    }

    rec.exit_time = t;
    rec.exit_distance = distance();
    rec.sandwich_ok = rec.max_sandwich_violation <= 1e-10;

    // Terminal dissipation increment over the trailing 0.1 time units.
    const double t_tail = t - 0.1;
    double d_tail_start = 0.0;
    for (const auto& [tt, dd] : dissipation_history)
        if (tt <= t_tail) d_tail_start = dd;
    rec.dissipation_tail = rec.dissipation - d_tail_start;
    if (t <= 0.1) rec.dissipation_tail = rec.dissipation;
    return rec;
}

DichotomyReport dichotomy_probe(const GridDomain& dom, const ForcingProfile& f,
                                const NonlinearityProfile& g, double lambda, double t_max,
                                const EvolveControls& controls) {
    EvolveControls ctl = controls;
    EigenPair pair;
    if (!ctl.eigenpair) {
        pair = principal_eigenpair(dom);
        ctl.eigenpair = &pair;
    }
    const EvolutionTrace trace = evolve(dom, f, g, lambda, 0.0, t_max, ctl);

    DichotomyReport rep;
    rep.status = trace.status;
    rep.final_time = trace.final_time;
    rep.final_max = trace.final_state.max();
    rep.contact_first_at = trace.contact_first_at;
    rep.t_above_090 = kNaN;
    rep.t_above_099 = kNaN;

    for (const auto& s : trace.samples) {
        if (std::isnan(rep.t_above_090) && s.max_u > 0.90) rep.t_above_090 = s.t;
        if (std::isnan(rep.t_above_099) && s.max_u > 0.99) rep.t_above_099 = s.t;
    }

    // Windowed running sup of max u must never decrease (monotone climb).
    rep.windowed_sup_monotone = true;
    const std::size_t window = 50;
    double prev_sup = -std::numeric_limits<double>::infinity();
    for (std::size_t start = 0; start < trace.samples.size(); start += window) {
        double sup = -std::numeric_limits<double>::infinity();
        for (std::size_t j = start; j < std::min(start + window, trace.samples.size()); ++j)
            sup = std::max(sup, trace.samples[j].max_u);
        if (sup < prev_sup - 1e-9) rep.windowed_sup_monotone = false;
        prev_sup = sup;
    }
    return rep;
}

} // namespace mems
