#pragma once

#include "expsum/pipeline.hpp"

namespace expsum {

/// Value and derivative of the rational companion
///   Phi(z)  = sum_j c_j/(z + lambda_j)^2,
///   Phi'(z) = -2 sum_j c_j/(z + lambda_j)^3.
struct PhiPair {
    Complex phi;
    Complex dphi;
};

/// Throws PoleAtPoint when z + lambda_j vanishes at the working precision.
PhiPair phi_cap(const ExpSum& s, const Complex& z);

/// Approximations to ln Gamma(z) and ln G(z) (Barnes) on Re z >= 3/2 built
/// from an exponential-sum fit of the gamma kernel, with certified sup-norm
/// error bounds eps1/eps2 once error_bounds has filled them in.
struct GammaApproximant {
    ExpSum s;
    Real eps1{0};
    Real eps2{0};
    Real ln_2pi;
    Real ln_glaisher;  // Glaisher-Kinkelin constant A, >= 110 digits
};

GammaApproximant make_gamma_approximant(const ExpSum& s);

/// sup |eta_1| and sup |eta_2| over x >= 0, where
///   eta_1 = 2x^2 (f - phi),   eta_2 = 6x (f - phi) + 2x^2 (f' - phi'),
/// estimated on a refined grid over [0, x_max], a log-spaced extension, and
/// an analytic exponential bound beyond. t must be the gamma_kernel target.
std::pair<Real, Real> error_bounds(const ExpSum& s, const TargetSpec& t, const Real& x_max);

/// (z - 1/2) ln z - z + ln(2pi)/2 + 1/(12z) - Phi'(z-1); principal log.
/// Throws DomainError for Re(z) < 3/2.
Complex ln_gamma_hat(const GammaApproximant& g, const Complex& z);

/// (z^2/2 - z + 5/12) ln z - (3/4) z^2 + ln(2pi)(z-1)/2 + z + 1/12
///   - ln A - 1/(12z) + Phi(z-1) - (z-1) Phi'(z-1).
/// Throws DomainError for Re(z) < 3/2.
Complex ln_barnesG_hat(const GammaApproximant& g, const Complex& z);

}  // namespace expsum
