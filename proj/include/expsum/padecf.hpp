#pragma once

#include <utility>
#include <vector>

#include "expsum/poly.hpp"

namespace expsum {

/// A multi-point Pade problem: p finite interpolation conditions
/// R(z_j) = a_j plus the first n_inf coefficients xi_j of the expansion
/// R(z) = sum_j xi_j z^-(j+1) at infinity, with p + n_inf = 2M.
struct PadeProblem {
    std::vector<Complex> points;  // z_1..z_p
    std::vector<Complex> values;  // a_1..a_p
    std::vector<Real> xi;         // xi_0..xi_{n_inf-1}
    int p = 0;
    int n_inf = 0;
    int M = 0;

    /// Checks sizes, p + n_inf = 2M, conjugate symmetry of the data and
    /// Re(z_j) >= 0. Throws InvalidArgument on violation.
    void validate() const;
};

/// Interpolation pair carried through the descent.
struct ValuePair {
    Complex z;
    Complex a;
};

/// State after l descent levels: remaining interpolation pairs and the
/// series coefficients of R_l at infinity. gamma[0] alternates between an
/// exact zero (even levels) and a nonzero head (odd levels).
struct DescentState {
    int level = 0;
    std::vector<Complex> gamma;
    std::vector<ValuePair> pending;
};

/// The fully descended continued fraction:
///   R = head / (1 + (z - stages[0].z) * R_1),
///   R_j = stages[j].a / (1 + (z - stages[j].z) * R_{j+1}),   (one-based)
///   R_{p-1} = stages.back().a / (1 + (z - z_terminal) * R_p),
/// with R_p = terminal_constant + d_1/z / (1 + d_2/z / (1 + ...)).
struct ContinuedFraction {
    Complex head;                    // a_1
    std::vector<ValuePair> stages;   // (z_j, a_{j+1}^{(j)}), j = 1..p-1
    Complex z_terminal;              // z_p
    Complex terminal_constant;       // gamma_0^{(p)}
    std::vector<Complex> terminal_d; // d_1..d_K, K even
};

/// Interpolation points on the two-segment corner curve from A-Bi to A+Bi,
/// equidistant in the curve parameter; endpoints included, exact corner at
/// zero for odd p, and z_{p+1-j} = conj(z_j) exactly.
std::vector<Complex> build_points(int p, const Real& A, const Real& B);

/// Case 1 series step (b[0] = 0, b[1] != 0): returns b1[0..k-1] of the
/// descended expansion, b1[0] = a1/b[1] followed by the recursion
/// b1[n] = -(1/b[1]) [ b[n] + sum_{i<n} b1[i] (b[n+1-i] - z1 b[n-i]) ].
/// Requires b.size() >= k+1. Throws DegenerateSeries when b[1] = 0.
std::vector<Complex> series_descend_case1(const std::vector<Complex>& b, const Complex& z1,
                                          const Complex& a1, int k);

/// Case 2 series step (b[0] != 0): returns b1[0..k] with b1[0] = 0,
/// b1[1] = a1/b[0] - 1 and
/// b1[n+1] = -(1/b[0]) [ b[n] + sum_{1<=i<=n} b1[i] (b[n+1-i] - z1 b[n-i]) ].
/// Requires b.size() >= k.
std::vector<Complex> series_descend_case2(const std::vector<Complex>& b, const Complex& z1,
                                          const Complex& a1, int k);

/// One finite-point descent on the remaining interpolation values:
/// a_j  ->  (a_l / a_j - 1) / (z_j - z_l).
/// Throws ZeroInterpolant when some a_j is exactly zero.
std::vector<ValuePair> value_descend(const std::vector<ValuePair>& values, const Complex& z_l,
                                     const Complex& a_l);

/// Expand R_p (given by its series coefficients gamma[0..K]) into the
/// terminal continued fraction: returns (gamma[0], d_1..d_K).
/// Throws DegenerateSeries when a required leading tail coefficient
/// vanishes mid-iteration.
std::pair<Complex, std::vector<Complex>> terminal_cf(const std::vector<Complex>& gamma, int K);

/// Back-substitute the continued fraction into an explicit rational
/// function with monic denominator.
RationalFunction assemble(const ContinuedFraction& cf);

/// Diagnostics from a solve, mostly for tests and reporting.
struct SolveInfo {
    Real interp_residual{0};        // max_j |R(z_j)-a_j| / (1+|a_j|)
    Real series_residual{0};        // max_j |b_j - expected| / (1+|expected|)
    std::vector<bool> gamma0_zero;  // per level: was gamma[0] exactly zero
    int K = 0;
};

/// Full continued-fraction solve of the multi-point Pade problem. Runs the
/// p descent levels (Case 1 / Case 2 alternating from gamma = [0, xi...]),
/// the terminal continued fraction, assembles, and verifies both the
/// interpolation conditions and the expansion at infinity to a relative
/// tolerance of 10^(-digits/2). Throws VerificationFailed (or propagates
/// DegenerateSeries / ZeroInterpolant) when a degenerate configuration is
/// detected; callers retry with different parameters.
RationalFunction solve(const PadeProblem& problem);

/// Same as solve but also reports residuals and the descent trace.
RationalFunction solve(const PadeProblem& problem, SolveInfo& info);

}  // namespace expsum
