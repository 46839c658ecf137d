#pragma once

#include "mems/eigenpairs.hpp"
#include "mems/grid.hpp"
#include "mems/profiles.hpp"
#include "mems/stationary.hpp"

#include <optional>
#include <vector>

namespace mems {

enum class EvolveStatus { Completed, Touchdown, StepFailure };

struct TraceSample {
    double t = 0.0;
    double max_u = 0.0;
    double energy = 0.0;      // E(t) = integral of u * phi1
    double dist_to_ref = 0.0; // NaN when no reference supplied
    double dt = 0.0;
};

struct EvolutionTrace {
    EvolveStatus status = EvolveStatus::Completed;
    std::vector<TraceSample> samples;
    std::vector<Field> states; // filled only when controls.record_states is set
    Field final_state;
    double final_time = 0.0;
    long steps = 0;
    double dt_smallest = 0.0;
    double dt_largest = 0.0;
    // Observed contact bracket: last time below the threshold and first time
    // at or above it. NaN unless status == Touchdown.
    double contact_last_below = 0.0;
    double contact_first_at = 0.0;
};

struct EvolveControls {
    double dt_max = 0.0;           // <= 0: 1e-3 * extent^2
    double dt_min = 1e-12;
    double reaction_safety = 0.2;  // c_r in the reaction step limit
    double contact_threshold = 1e-6;
    double sample_interval = 0.0;  // 0: 10 * dt_max; negative: every step
    long max_steps = 50000000;
    bool record_states = false;    // keep the full field at every sample
    const EigenPair* eigenpair = nullptr; // reused if supplied
    const Field* reference = nullptr;     // for the dist_to_ref column
};

/// Semi-implicit integration of u_t = Delta u + lambda f / g(u): diffusion
/// implicit (tridiagonal solve), reaction explicit at the old level. The
/// step obeys dt <= c_r g(m)^2 / (lambda ||f|| |g'(m)|) with m = max u, so the
/// explicit reaction can close at most a fixed fraction of the remaining gap
/// to the contact state per step; dt is clamped to [dt_min, dt_max] and the
/// contact guard (max u >= 1 - threshold) stops the run before g is ever
/// evaluated at or beyond 1.
EvolutionTrace evolve(const GridDomain& dom, const ForcingProfile& f,
                      const NonlinearityProfile& g, double lambda, const Field& u0,
                      double t_end, const EvolveControls& controls = {});
EvolutionTrace evolve(const GridDomain& dom, const ForcingProfile& f,
                      const NonlinearityProfile& g, double lambda, double u0,
                      double t_end, const EvolveControls& controls = {});

struct PicardResult {
    double t_local = 0.0; // (1-a) g((1+a)/2) / (4 lambda ||f||)
    double dt = 0.0;
    int sweeps = 0;
    int dt_halvings = 0;
    bool ceiling_ok = false;           // every iterate stayed below (1+a)/2
    std::vector<double> gaps;          // sup over space-time of u_k - u_{k-1}
    std::vector<double> times;         // shared time grid, 0..t_local
    std::vector<Field> last_iterate;   // trajectory of the final sweep
};

/// Picard construction of the local solution: each sweep solves the linear
/// heat problem with the reaction frozen at the previous space-time iterate
/// (first sweep: frozen at the initial state). Certifies the (1+a)/2 ceiling
/// for every iterate; a violated ceiling halves dt and restarts (up to 5x).
PicardResult picard_local(const GridDomain& dom, const ForcingProfile& f,
                          const NonlinearityProfile& g, double lambda, const Field& u0,
                          int sweeps, double dt_hint = 0.0);

struct LocalWindow {
    double center = 0.0;
    double radius = 0.0;
};

struct TouchdownBoundsReport {
    double mu1 = 0.0;
    double delta1 = 0.0;      // inf f
    double f_phi1 = 0.0;
    double sup_sg = 0.0;
    double energy0 = 0.0;     // E(0)
    double lambda_energy = 0.0; // (mu1/delta1) sup sg: threshold of the energy bound
    double lambda_gap = 0.0;    // mu1 H(0) / integral(f phi1): threshold of the gap bound
    BoundEntry bound_energy;    // H(E(0)) / ((lambda - lambda_energy) delta1)
    BoundEntry bound_gap;       // integral(H(u0) phi1) / integral(f phi1) / (lambda - lambda_gap)
    BoundEntry bound_localized; // energy bound of an inscribed subdomain
    double localized_lambda = 0.0;
    double localized_radius = 0.0;
};

/// Analytic upper bounds on the touchdown time, each gated by its
/// hypotheses (flags, not throws). The localized bound restricts to an
/// inscribed interval/ball (default: concentric, half the extent).
TouchdownBoundsReport touchdown_bounds(const GridDomain& dom, const ForcingProfile& f,
                                       const NonlinearityProfile& g, double lambda,
                                       const Field& u0,
                                       std::optional<LocalWindow> window = {});

struct EnergyCheckReport {
    double max_violation = 0.0; // worst signed defect of the energy inequality
    double tol = 0.0;
    int samples = 0;
};

/// Verifies dE/dt >= -mu1 E + lambda delta1 / g(E) along a recorded trace
/// (centered differences on the nonuniform sample times). Requires the
/// reciprocal-convexity hypothesis and inf f > 0.
EnergyCheckReport energy_inequality_check(const EvolutionTrace& trace, const GridDomain& dom,
                                          const ForcingProfile& f, const NonlinearityProfile& g,
                                          double lambda, const EigenPair& pair);

struct ComparisonReport {
    bool ordered = false;                 // u_low <= u_high at every sample
    bool strictly_ordered = false;        // strict at all nodes for t > 0
    bool l1_positive_part_ok = false;     // integral (u1-u2)_+ <= e^{bt} integral (u01-u02)_+
    bool l1_absolute_ok = false;
    bool identical = false;               // bitwise equal traces (equal data)
    double growth_rate = 0.0;             // b = lambda ||f|| sup (1/g)'
    double max_order_violation = 0.0;
    double min_interior_gap = 0.0;
    int samples = 0;
};

/// Runs the two evolutions in lockstep (shared dt sequence) and checks the
/// comparison estimates between them.
ComparisonReport comparison_suite(const GridDomain& dom, const ForcingProfile& f,
                                  const NonlinearityProfile& g, double lambda,
                                  const Field& u0_low, const Field& u0_high, double t_end,
                                  const EvolveControls& controls = {});

struct DecayRecord {
    bool converged = false;
    double exit_time = 0.0;
    double exit_distance = 0.0;
    std::vector<std::pair<double, double>> distance_curve; // (t, ||u - v_ref||_inf)
    double dissipation = 0.0;       // cumulative integral of u_t^2
    double dissipation_tail = 0.0;  // added over the trailing 0.1 time units
    bool sandwich_ok = false;       // w(t) <= u(t) <= v_ref at every sample
    double max_sandwich_violation = 0.0;
    EvolveStatus status = EvolveStatus::Completed;
};

/// Evolves from u0 <= v_ref until ||u - v_ref||_inf < tol_conv or t_max,
/// tracking the decay, the cumulative dissipation, and the heat-flow
/// sandwich w(t) <= u(t) <= v_ref (w = same stepper with lambda = 0).
DecayRecord convergence_to_stationary(const GridDomain& dom, const ForcingProfile& f,
                                      const NonlinearityProfile& g, double lambda,
                                      const Field& u0, const Field& v_ref,
                                      double tol_conv = 1e-5, double t_max = 200.0,
                                      const EvolveControls& controls = {});

struct DichotomyReport {
    EvolveStatus status = EvolveStatus::Completed;
    double final_time = 0.0;
    double final_max = 0.0;
    double contact_first_at = 0.0; // NaN unless touchdown
    double t_above_090 = 0.0;      // first time max u exceeded 0.90 (NaN if never)
    double t_above_099 = 0.0;
    bool windowed_sup_monotone = false; // running sup over windows nondecreasing
};

/// Probes the regime above the pull-in bracket: evolves from zero and
/// reports either the observed touchdown or the monotone climb of sup u.
DichotomyReport dichotomy_probe(const GridDomain& dom, const ForcingProfile& f,
                                const NonlinearityProfile& g, double lambda, double t_max,
                                const EvolveControls& controls = {});

} // namespace mems
