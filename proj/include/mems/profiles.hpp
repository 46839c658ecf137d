#pragma once

#include "mems/grid.hpp"

#include <string>
#include <vector>

namespace mems {

enum class GapKind { PowerGap, ExpGap, ConstantOne, Tabulated };

/// Gap nonlinearity g in the reaction term lambda*f(x)/g(u). g must be
/// positive and non-increasing on (-inf, 1); u = 1 is the contact state and
/// evaluation at s >= 1 is a hard error so that steppers guard contact first.
///
/// Structural hypotheses (convexity of 1/g, vanishing at the contact state,
/// bounded reciprocal slope) are certified per kind from calculus, never by
/// sampling:
///   power (1-s)^p:  (1/g)'' = p(p+1)(1-s)^{-p-2} >= 0, g -> 0 at 1
///   exp e^{-s}:     (1/g)'' = e^s > 0, g(1) = 1/e > 0
///   constant 1:     (1/g)'' = 0, g(1) = 1
///   tabulated:      convexity uncertified (flag false)
class NonlinearityProfile {
public:
    static NonlinearityProfile power_gap(double exponent);
    static NonlinearityProfile exp_gap();
    static NonlinearityProfile constant_one();
    /// Monotone piecewise-cubic interpolant of non-increasing positive data
    /// on nodes s_0 < ... < s_m <= 1; constant extension outside the table.
    static NonlinearityProfile tabulated(std::vector<double> s, std::vector<double> g);

    GapKind kind() const { return kind_; }
    double exponent() const { return p_; }

    double value(double s) const;  // g(s), throws std::domain_error if s >= 1
    double slope(double s) const;  // g'(s)

    bool reciprocal_convex() const { return reciprocal_convex_; }
    bool vanishes_at_contact() const { return vanishes_at_contact_; }
    bool reciprocal_slope_bounded() const { return true; } // holds for every supported kind

    /// sup over s' <= s of (1/g)'(s'); the growth rate constant of the
    /// comparison estimates.
    double max_reciprocal_slope(double s) const;

    std::string describe() const;

private:
    NonlinearityProfile() = default;

    GapKind kind_ = GapKind::ConstantOne;
    double p_ = 0.0;
    bool reciprocal_convex_ = true;
    bool vanishes_at_contact_ = false;
    // tabulated data
    std::vector<double> ts_, tg_, tm_; // nodes, values, interpolant slopes
};

/// H(v) = integral of g over (v, 1). Closed form for the analytic families,
/// adaptive quadrature (abs tol 1e-12) for tabulated profiles.
double gap_integral(const NonlinearityProfile& g, double v);

struct SupSG {
    double value = 0.0;
    double maximizer = 0.0;
};

/// sup over s in [0,1] of s*g(s), with the maximizer. Closed form for the
/// power family (s = 1/(p+1)); golden-section search otherwise.
SupSG sup_s_times_g(const NonlinearityProfile& g);

enum class ForcingKind { Constant, RadialBump, RadialPolynomial };

/// Forcing profile f >= 0. Coordinates follow the grid: x on the interval,
/// r on the ball. The bump is a Gaussian amplitude*exp(-((x-center)/width)^2);
/// the polynomial is sum_k coeff_k * x^k.
class ForcingProfile {
public:
    static ForcingProfile constant(double amplitude);
    static ForcingProfile radial_bump(double amplitude, double center, double width);
    static ForcingProfile radial_polynomial(std::vector<double> coeffs);

    ForcingKind kind() const { return kind_; }
    double amplitude() const { return amp_; }

    double value(double x) const;
    double gradient(double x) const;
    /// x . grad f, needed by the star-shaped-domain bound.
    double tilt(double x) const { return x * gradient(x); }

    Field sample(const GridDomain& dom) const;

    struct Stats {
        double inf = 0.0;      // delta_1
        double sup = 0.0;      // ||f||_inf
        double tilt_sup = 0.0; // b_1
        bool nontrivial = false;
        bool nonnegative = true;
    };
    /// Closed forms where available, grid sampling otherwise.
    Stats stats_on(const GridDomain& dom) const;

    std::string describe() const;

private:
    ForcingProfile() = default;

    ForcingKind kind_ = ForcingKind::Constant;
    double amp_ = 1.0;
    double center_ = 0.0;
    double width_ = 1.0;
    std::vector<double> coeffs_;
};

struct HypothesisCheck {
    std::string id;
    bool pass = false;
    std::string witness;
};

struct HypothesisReport {
    std::vector<HypothesisCheck> checks;
    bool passed(const std::string& id) const;
    /// Positivity/monotonicity of g plus nonnegative nontrivial f; the gate
    /// every solver requires.
    bool core_ok() const;
    std::string summary() const;
};

/// Evaluates every structural hypothesis with a witness quantity. Pure
/// report: nothing throws here; solvers refuse profiles whose required
/// entries fail.
HypothesisReport check_hypotheses(const NonlinearityProfile& g, const ForcingProfile& f,
                                  const GridDomain& dom);

} // namespace mems
