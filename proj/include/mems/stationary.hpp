#pragma once

#include "mems/eigenpairs.hpp"
#include "mems/grid.hpp"
#include "mems/profiles.hpp"

#include <string>
#include <vector>

namespace mems {

enum class IterationOutcome {
    Converged,
    ReachedContact,   // an iterate climbed to 1 - guard: no solution at this lambda
    NonContracting,   // increments stopped shrinking: treated as divergence
    IterationLimit
};

struct IterationSample {
    int k = 0;
    double increment = 0.0; // ||v_k - v_{k-1}||_inf
    double max_value = 0.0;
};

struct StationaryControls {
    double tol = 1e-10;          // sup-norm increment stop
    int max_iterations = 100000;
    double contact_guard = 1e-9; // divergence trigger at max v >= 1 - guard
    bool record_iterates = false;
    /// Optional certified upper barrier: must satisfy -Delta psi >= lambda f / g(psi)
    /// nodewise; every iterate is asserted below it.
    const Field* supersolution = nullptr;
};

struct StationaryResult {
    IterationOutcome outcome = IterationOutcome::IterationLimit;
    bool converged = false;
    Field solution;
    int iterations = 0;
    double final_increment = 0.0;
    double residual = 0.0;      // ||Delta_h v + lambda f / g(v)||_inf at exit
    bool monotone = true;       // iterates nondecreasing at every step
    std::vector<IterationSample> trace;
};

/// Minimal stationary solution of -Delta v = lambda f / g(v) by the monotone
/// iteration v_0 = 0, -Delta v_k = lambda f / g(v_{k-1}). Iterates increase
/// pointwise toward the minimal solution when one exists; climbing into the
/// contact guard or losing contraction signals nonexistence at this lambda
/// on this grid.
StationaryResult minimal_solution(const GridDomain& dom, const ForcingProfile& f,
                                  const NonlinearityProfile& g, double lambda,
                                  const StationaryControls& controls = {});

/// Smallest eigenvalue of w -> -Delta_h w + lambda f g'(v)/g(v)^2 w
/// (shifted inverse power iteration, shift below the Gershgorin floor).
/// Positive on the minimal branch.
double linearized_eigenvalue(const GridDomain& dom, const ForcingProfile& f,
                             const NonlinearityProfile& g, double lambda, const Field& v);

struct BoundEntry {
    double value = 0.0;
    bool applicable = false;
    std::string note;
};

struct BoundsRecord {
    double mu1 = 0.0;        // principal eigenvalue
    double f_phi1 = 0.0;     // integral of f * phi1 (phi1 normalized to unit integral)
    double sup_sg = 0.0;     // sup s g(s) over [0,1]
    double sup_sg_arg = 0.0;
    double gap_area = 0.0;   // H(0) = integral of g over (0,1)
    double nu_hat = 0.0;
    double nu_best_dilation = 0.0;
    double max_f = 0.0;
    double inf_f = 0.0;

    BoundEntry lower_nu;            // nu_hat * sup_sg / max f  <= pull-in
    BoundEntry upper_g0;            // mu1 g(0) / integral(f phi1)
    BoundEntry upper_gap_integral;  // mu1 H(0) / integral(f phi1), sharper
    BoundEntry pohozaev;            // star-shaped bound, ball specialization
};

/// Every analytic pull-in bound that applies to this configuration;
/// inapplicable entries are flagged with the failed hypothesis, not thrown.
BoundsRecord lambda_bounds(const GridDomain& dom, const ForcingProfile& f,
                           const NonlinearityProfile& g, const DilationScan& scan = {});

struct PullInEstimate {
    double lambda_lo = 0.0; // largest lambda at which the iteration converged
    double lambda_hi = 0.0; // smallest lambda at which it failed
    int probes = 0;
    BoundsRecord bounds;
};

/// Bisection on lambda with predicate "monotone iteration converges",
/// bracketed by [0, 1.05 * upper gap-integral bound]. Throws if the
/// predicate still holds at the top of the initial bracket (discretization
/// inconsistent with the analytic bound; reported, not widened).
PullInEstimate pull_in_voltage(const GridDomain& dom, const ForcingProfile& f,
                               const NonlinearityProfile& g, double tol_rel = 1e-4,
                               const StationaryControls& controls = {},
                               const DilationScan& scan = {});

struct OrderingReport {
    bool weakly_ordered = false;
    bool strictly_ordered = false;
    bool inputs_differ = false;
    double min_gap = 0.0;          // min over nodes of v2 - v1
    double worst_violation = 0.0;  // max over nodes of v1 - v2 (should be <= 0)
    int violation_node = -1;
    Field v_small, v_big;
};

/// Solves both minimal solutions and reports the pointwise ordering
/// v(f1,g1) <= v(f2,g2), expected under f1 <= f2 and g1 >= g2; strict
/// ordering is expected when the forcings differ somewhere.
OrderingReport compare_minimal_solutions(const GridDomain& dom, double lambda,
                                         const ForcingProfile& f1, const NonlinearityProfile& g1,
                                         const ForcingProfile& f2, const NonlinearityProfile& g2,
                                         const StationaryControls& controls = {});

} // namespace mems
