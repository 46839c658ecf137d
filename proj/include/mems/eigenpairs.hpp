#pragma once

#include "mems/grid.hpp"

#include <vector>

namespace mems {

enum class Normalization { IntegralOne, MaxOne };

struct EigenPair {
    double mu = 0.0;
    Field phi;
    Normalization normalization = Normalization::IntegralOne;
    int iterations = 0;
    double residual = 0.0; // ||Delta_h phi + mu phi||_inf
};

/// Principal Dirichlet eigenpair of -Delta_h by inverse power iteration
/// (unshifted; tridiagonal solves). The eigenfunction is sign-fixed positive
/// and normalized to unit integral (or unit max).
EigenPair principal_eigenpair(const GridDomain& dom,
                              Normalization norm = Normalization::IntegralOne);

struct DilationScan {
    double a_min = 0.05;
    double a_max = 5.0;
    int steps = 500;
};

struct NuScanPoint {
    double dilation = 0.0; // a
    double mu = 0.0;       // principal eigenvalue of the enlarged domain
    double min_psi = 0.0;  // min over the original closure of the max-one eigenfunction
    double product = 0.0;  // mu * min_psi
};

struct NuEstimate {
    double nu_hat = 0.0;
    double best_dilation = 0.0;
    std::vector<NuScanPoint> scan;
};

/// Certified lower estimate of nu_Omega = sup over enclosing domains of
/// mu_{Omega_1} * min_{closure} psi_{Omega_1}, restricted to concentric
/// dilations. Interval enlargements are symmetric two-sided (length
/// L(1+2a), closed forms); ball dilations use the numeric eigenpair of the
/// enlarged ball evaluated at radius extent(). Any scanned enclosure already
/// certifies the bound, so under-estimation is sound.
NuEstimate nu_lower_bound(const GridDomain& dom, const DilationScan& scan = {});

} // namespace mems
