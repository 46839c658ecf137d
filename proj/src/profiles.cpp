#include "mems/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mems {

namespace {

constexpr double kGolden = 0.6180339887498949;

void require_below_contact(double s) {
    if (s >= 1.0)
        throw std::domain_error("gap profile evaluated at s >= 1 (contact state)");
}

// Golden-section maximization of fn on [lo, hi].
double golden_max(const std::function<double(double)>& fn, double lo, double hi,
                  double tol, double* arg) {
    double a = lo, b = hi;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = fn(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = fn(x1);
        }
    }
    const double xm = 0.5 * (a + b);
    if (arg) *arg = xm;
    return fn(xm);
}

double adaptive_simpson(const std::function<double(double)>& fn, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = fn(lm), frm = fn(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(fn, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
         + adaptive_simpson(fn, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_adaptive(const std::function<double(double)>& fn, double a, double b,
                          double tol) {
    if (b <= a) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = fn(a), fm = fn(m), fb = fn(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(fn, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace

NonlinearityProfile NonlinearityProfile::power_gap(double exponent) {
    if (exponent <= 0.0)
        throw std::invalid_argument("power gap needs a positive exponent");
    NonlinearityProfile g;
    g.kind_ = GapKind::PowerGap;
    g.p_ = exponent;
    g.reciprocal_convex_ = true;
    g.vanishes_at_contact_ = true;
    return g;
}

NonlinearityProfile NonlinearityProfile::exp_gap() {
    NonlinearityProfile g;
    g.kind_ = GapKind::ExpGap;
    g.reciprocal_convex_ = true;
    g.vanishes_at_contact_ = false;
    return g;
}

NonlinearityProfile NonlinearityProfile::constant_one() {
    NonlinearityProfile g;
    g.kind_ = GapKind::ConstantOne;
    g.reciprocal_convex_ = true;
    g.vanishes_at_contact_ = false;
    return g;
}

NonlinearityProfile NonlinearityProfile::tabulated(std::vector<double> s,
                                                   std::vector<double> g) {
    if (s.size() != g.size() || s.size() < 2)
        throw std::invalid_argument("tabulated gap needs matching node/value lists");
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] <= s[i - 1])
            throw std::invalid_argument("tabulated gap nodes must increase");
        if (g[i] > g[i - 1])
            throw std::invalid_argument("tabulated gap values must not increase");
    }
    if (s.back() > 1.0)
        throw std::invalid_argument("tabulated gap nodes must not exceed 1");
    for (std::size_t i = 0; i + 1 < g.size(); ++i)
        if (g[i] <= 0.0) throw std::invalid_argument("tabulated gap must be positive below 1");
    if (g.back() < 0.0) throw std::invalid_argument("tabulated gap must be nonnegative");
    if (g.back() == 0.0 && s.back() < 1.0)
        throw std::invalid_argument("tabulated gap may vanish only at s = 1");

    NonlinearityProfile prof;
    prof.kind_ = GapKind::Tabulated;
    prof.reciprocal_convex_ = false; // cannot be certified from samples
    prof.vanishes_at_contact_ = (s.back() == 1.0 && g.back() == 0.0);

    // Fritsch-Carlson monotone cubic slopes.
    const std::size_t m = s.size();
    std::vector<double> d(m - 1), slopes(m, 0.0);
    for (std::size_t i = 0; i + 1 < m; ++i) d[i] = (g[i + 1] - g[i]) / (s[i + 1] - s[i]);
    slopes[0] = d[0];
    slopes[m - 1] = d[m - 2];
    for (std::size_t i = 1; i + 1 < m; ++i) {
        if (d[i - 1] * d[i] <= 0.0)
            slopes[i] = 0.0;
        else {
            const double w1 = 2.0 * (s[i + 1] - s[i]) + (s[i] - s[i - 1]);
            const double w2 = (s[i + 1] - s[i]) + 2.0 * (s[i] - s[i - 1]);
            slopes[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    prof.ts_ = std::move(s);
    prof.tg_ = std::move(g);
    prof.tm_ = std::move(slopes);
    return prof;
}

double NonlinearityProfile::value(double s) const {
    require_below_contact(s);
    switch (kind_) {
    case GapKind::PowerGap: return std::pow(1.0 - s, p_);
    case GapKind::ExpGap: return std::exp(-s);
    case GapKind::ConstantOne: return 1.0;
    case GapKind::Tabulated: {
        if (s <= ts_.front()) return tg_.front();
        if (s >= ts_.back()) return tg_.back();
        const auto it = std::upper_bound(ts_.begin(), ts_.end(), s);
        const std::size_t i = static_cast<std::size_t>(it - ts_.begin()) - 1;
        const double hseg = ts_[i + 1] - ts_[i];
        const double t = (s - ts_[i]) / hseg;
        const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
        const double h10 = t * (1 - t) * (1 - t);
        const double h01 = t * t * (3 - 2 * t);
        const double h11 = t * t * (t - 1);
        return h00 * tg_[i] + h10 * hseg * tm_[i] + h01 * tg_[i + 1] + h11 * hseg * tm_[i + 1];
    }
    }
    return 0.0;
}

double NonlinearityProfile::slope(double s) const {
    require_below_contact(s);
    switch (kind_) {
    case GapKind::PowerGap: return -p_ * std::pow(1.0 - s, p_ - 1.0);
    case GapKind::ExpGap: return -std::exp(-s);
    case GapKind::ConstantOne: return 0.0;
    case GapKind::Tabulated: {
        if (s <= ts_.front() || s >= ts_.back()) return 0.0;
        const auto it = std::upper_bound(ts_.begin(), ts_.end(), s);
        const std::size_t i = static_cast<std::size_t>(it - ts_.begin()) - 1;
        const double hseg = ts_[i + 1] - ts_[i];
        const double t = (s - ts_[i]) / hseg;
        const double dh00 = 6 * t * (t - 1) / hseg;
        const double dh10 = (3 * t * t - 4 * t + 1);
        const double dh01 = -6 * t * (t - 1) / hseg;
        const double dh11 = (3 * t * t - 2 * t);
        return dh00 * tg_[i] + dh10 * tm_[i] + dh01 * tg_[i + 1] + dh11 * tm_[i + 1];
    }
    }
    return 0.0;
}

double NonlinearityProfile::max_reciprocal_slope(double s) const {
    require_below_contact(s);
    switch (kind_) {
    case GapKind::PowerGap: return p_ * std::pow(1.0 - s, -p_ - 1.0);
    case GapKind::ExpGap: return std::exp(s);
    case GapKind::ConstantOne: return 0.0;
    case GapKind::Tabulated: {
        // (1/g)' = -g'/g^2 sampled over (-inf, s]; the table is flat outside
        // its nodes so scanning the covered range suffices.
        double best = 0.0;
        const double lo = ts_.front();
        const double hi = std::min(s, ts_.back() - 1e-12);
        const int m = 2048;
        for (int k = 0; k <= m; ++k) {
            const double x = lo + (hi - lo) * k / m;
            const double gv = value(x);
            if (gv <= 0.0) continue;
            best = std::max(best, -slope(x) / (gv * gv));
        }
        return best;
    }
    }
    return 0.0;
}

std::string NonlinearityProfile::describe() const {
    std::ostringstream os;
    switch (kind_) {
    case GapKind::PowerGap: os << "(1-s)^" << p_; break;
    case GapKind::ExpGap: os << "exp(-s)"; break;
    case GapKind::ConstantOne: os << "1"; break;
    case GapKind::Tabulated: os << "tabulated[" << ts_.size() << "]"; break;
    }
    return os.str();
}

double gap_integral(const NonlinearityProfile& g, double v) {
    if (v >= 1.0)
        throw std::domain_error("gap integral needs v < 1");
    switch (g.kind()) {
    case GapKind::PowerGap: {
        const double p = g.exponent();
        return std::pow(1.0 - v, p + 1.0) / (p + 1.0);
    }
    case GapKind::ExpGap: return std::exp(-v) - std::exp(-1.0);
    case GapKind::ConstantOne: return 1.0 - v;
    case GapKind::Tabulated: {
        const double eps = 1e-14;
        return integrate_adaptive([&](double s) { return g.value(std::min(s, 1.0 - eps)); },
                                  v, 1.0, 1e-12);
    }
    }
    return 0.0;
}

SupSG sup_s_times_g(const NonlinearityProfile& g) {
    SupSG out;
    switch (g.kind()) {
    case GapKind::PowerGap: {
        const double p = g.exponent();
        out.maximizer = 1.0 / (p + 1.0);
        out.value = out.maximizer * std::pow(p / (p + 1.0), p);
        return out;
    }
    case GapKind::ConstantOne:
        out.maximizer = 1.0;
        out.value = 1.0;
        return out;
    default: break;
    }
    const double cap = 1.0 - 1e-13;
    auto fn = [&](double s) { return s * g.value(std::min(s, cap)); };
    // Coarse scan to bracket the best peak, then golden-section refinement.
    const int m = 1000;
    int best = 0;
    double fbest = fn(0.0);
    for (int k = 1; k <= m; ++k) {
        const double fv = fn(static_cast<double>(k) / m);
        if (fv > fbest) {
            fbest = fv;
            best = k;
        }
    }
    const double lo = std::max(0.0, (best - 1.0) / m);
    const double hi = std::min(1.0, (best + 1.0) / m);
    out.value = golden_max(fn, lo, hi, 1e-10, &out.maximizer);
    if (fn(1.0) > out.value) { // supremum can sit at the endpoint
        out.value = fn(1.0);
        out.maximizer = 1.0;
    }
    return out;
}

ForcingProfile ForcingProfile::constant(double amplitude) {
    if (amplitude < 0.0) throw std::invalid_argument("forcing must be nonnegative");
    ForcingProfile f;
    f.kind_ = ForcingKind::Constant;
    f.amp_ = amplitude;
    return f;
}

ForcingProfile ForcingProfile::radial_bump(double amplitude, double center, double width) {
    if (amplitude < 0.0) throw std::invalid_argument("forcing must be nonnegative");
    if (width <= 0.0) throw std::invalid_argument("bump width must be positive");
    ForcingProfile f;
    f.kind_ = ForcingKind::RadialBump;
    f.amp_ = amplitude;
    f.center_ = center;
    f.width_ = width;
    return f;
}

ForcingProfile ForcingProfile::radial_polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("polynomial forcing needs coefficients");
    ForcingProfile f;
    f.kind_ = ForcingKind::RadialPolynomial;
    f.coeffs_ = std::move(coeffs);
    return f;
}

double ForcingProfile::value(double x) const {
    switch (kind_) {
    case ForcingKind::Constant: return amp_;
    case ForcingKind::RadialBump: {
        const double z = (x - center_) / width_;
        return amp_ * std::exp(-z * z);
    }
    case ForcingKind::RadialPolynomial: {
        double acc = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
        return acc;
    }
    }
    return 0.0;
}

double ForcingProfile::gradient(double x) const {
    switch (kind_) {
    case ForcingKind::Constant: return 0.0;
    case ForcingKind::RadialBump: {
        const double z = (x - center_) / width_;
        return amp_ * std::exp(-z * z) * (-2.0 * z / width_);
    }
    case ForcingKind::RadialPolynomial: {
        double acc = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 1;)
            acc = acc * x + coeffs_[k] * static_cast<double>(k);
        return acc;
    }
    }
    return 0.0;
}

Field ForcingProfile::sample(const GridDomain& dom) const {
    return Field::sample(dom, [&](double x) { return value(x); });
}

ForcingProfile::Stats ForcingProfile::stats_on(const GridDomain& dom) const {
    Stats st;
    if (kind_ == ForcingKind::Constant) {
        st.inf = st.sup = amp_;
        st.tilt_sup = 0.0;
        st.nontrivial = amp_ > 0.0;
        st.nonnegative = true;
        return st;
    }
    st.inf = std::numeric_limits<double>::infinity();
    st.sup = -std::numeric_limits<double>::infinity();
    st.tilt_sup = 0.0;
    // Sample nodes plus the closure endpoints (inf over the closed domain).
    auto take = [&](double x) {
        const double fv = value(x);
        st.inf = std::min(st.inf, fv);
        st.sup = std::max(st.sup, fv);
        st.tilt_sup = std::max(st.tilt_sup, std::abs(tilt(x)));
        if (fv < 0.0) st.nonnegative = false;
        if (fv > 0.0) st.nontrivial = true;
    };
    take(0.0);
    for (int i = 0; i < dom.size(); ++i) take(dom.node(i));
    take(dom.extent());
    return st;
}

std::string ForcingProfile::describe() const {
    std::ostringstream os;
    switch (kind_) {
    case ForcingKind::Constant: os << "constant " << amp_; break;
    case ForcingKind::RadialBump:
        os << "bump amp=" << amp_ << " center=" << center_ << " width=" << width_;
        break;
    case ForcingKind::RadialPolynomial: os << "polynomial[" << coeffs_.size() << "]"; break;
    }
    return os.str();
}

bool HypothesisReport::passed(const std::string& id) const {
    for (const auto& c : checks)
        if (c.id == id) return c.pass;
    return false;
}

bool HypothesisReport::core_ok() const {
    return passed("forcing-nonnegative") && passed("forcing-nontrivial")
        && passed("gap-positive") && passed("gap-nonincreasing");
}

std::string HypothesisReport::summary() const {
    std::ostringstream os;
    for (const auto& c : checks)
        os << (c.pass ? "pass " : "FAIL ") << c.id << " (" << c.witness << ")\n";
    return os.str();
}

HypothesisReport check_hypotheses(const NonlinearityProfile& g, const ForcingProfile& f,
                                  const GridDomain& dom) {
    HypothesisReport rep;
    auto add = [&](std::string id, bool pass, std::string witness) {
        rep.checks.push_back({std::move(id), pass, std::move(witness)});
    };

    const auto st = f.stats_on(dom);
    {
        std::ostringstream w;
        w << "min f = " << st.inf;
        add("forcing-nonnegative", st.nonnegative, w.str());
    }
    add("forcing-nontrivial", st.nontrivial, st.nontrivial ? "f > 0 somewhere" : "f == 0");
    {
        std::ostringstream w;
        w << "inf f = " << st.inf;
        add("forcing-inf-positive", st.inf > 0.0, w.str());
    }

    // Positivity and monotonicity of g hold by construction for the analytic
    // kinds; sample a wide range to produce the witness value.
    double gmin = std::numeric_limits<double>::infinity();
    double worst_slope = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 400; ++k) {
        const double s = -2.0 + 2.9999 * k / 400.0;
        gmin = std::min(gmin, g.value(s));
        worst_slope = std::max(worst_slope, g.slope(s));
    }
    {
        std::ostringstream w;
        w << "min sampled g = " << gmin;
        add("gap-positive", gmin > 0.0, w.str());
    }
    {
        std::ostringstream w;
        w << "max sampled g' = " << worst_slope;
        add("gap-nonincreasing", worst_slope <= 1e-12, w.str());
    }
    add("reciprocal-convex", g.reciprocal_convex(),
        g.reciprocal_convex() ? "certified per kind" : "not certified for this kind");
    {
        const double near = g.value(1.0 - 1e-9);
        std::ostringstream w;
        w << "g(1-1e-9) = " << near;
        add("gap-vanishes-at-contact", g.vanishes_at_contact(), w.str());
    }
    add("reciprocal-slope-bounded", g.reciprocal_slope_bounded(), "finite on every s <= a < 1");
    return rep;
}

} // namespace mems
