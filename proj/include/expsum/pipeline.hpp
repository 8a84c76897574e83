#pragma once

#include "expsum/padecf.hpp"
#include "expsum/targets.hpp"

namespace expsum {

struct ExpSumTerm {
    Complex c;       // coefficient
    Complex lambda;  // exponent: term is c * exp(-lambda x)
};

/// phi(x) = sum_j c_j exp(-lambda_j x). Terms are kept sorted by
/// (Re lambda, Im lambda); complex terms appear in exact conjugate pairs.
struct ExpSum {
    std::vector<ExpSumTerm> terms;

    int M() const { return static_cast<int>(terms.size()); }
    Real max_abs_c() const;
    Real min_re_lambda() const;
    /// Exact structural check that conjugate terms pair up.
    bool conjugate_closed() const;
};

/// Parameters of one pipeline run; p = 2M - n_inf interpolation points.
struct ApproxConfig {
    int M = 0;
    int n_inf = 2;
    Real A{0};
    Real B{1};
    int digits = PrecisionContext::default_digits;
    int jobs = 0;  // 0 = hardware concurrency

    int p() const { return 2 * M - n_inf; }
    void validate() const;
};

struct ErrorReport {
    Real l1{0};
    Real linf{0};
    Real linf_location{0};
    Real max_abs_c{0};
    Real min_re_lambda{0};
    Real interp_residual{0};
    bool unstable_tail = false;                // some Re(lambda_j) <= 0
    std::vector<std::pair<Real, Real>> grid;   // (x, f(x) - phi(x)) samples
};

/// Exponential sum from a strictly proper rational function with simple
/// poles: lambda_j = -pole_j, c_j = residue_j. Conjugate pairs are averaged
/// so closure holds exactly. Propagates MultiplePole.
ExpSum from_rational(const RationalFunction& R);

/// Re(sum c_j e^{-lambda_j x}); throws ImaginaryLeak when the imaginary
/// residue of a non-closed sum exceeds 10^(-digits/2) * sum|c_j|.
Real eval_expsum(const ExpSum& s, const Real& x);

/// Termwise -d/dx: (c_j, lambda_j) -> (c_j lambda_j, lambda_j).
ExpSum derivative_expsum(const ExpSum& s);

/// Steps (i)-(vi): build points, evaluate the Laplace transform, solve the
/// Pade problem, extract the exponential sum, apply the target's
/// post-transform, measure errors. Failures carry the failing step label.
std::pair<ExpSum, ErrorReport> approximate(const TargetSpec& t, const ApproxConfig& cfg);

/// Error measurement between the target's user-facing function and phi on
/// [0, x_max]: composite grid, golden-section refined L_inf, adaptive
/// Simpson L1 with exponential tail accounting beyond the grid.
ErrorReport error_metrics(const TargetSpec& t, const ExpSum& s, const Real& x_max, int n_grid);

struct Objective {
    enum Kind { L1, Linf, MaxCoefConstrained } kind = L1;
    Real max_coef_bound{0};  // only for MaxCoefConstrained

    static Objective l1() { return {L1, Real(0)}; }
    static Objective linf() { return {Linf, Real(0)}; }
    static Objective max_coef(Real bound) { return {MaxCoefConstrained, std::move(bound)}; }
};

struct SweepRow {
    Real A, B;
    bool ok = false;
    std::string status;  // "ok" or the failure step/message
    ErrorReport report;  // valid when ok
};

struct SweepResult {
    ApproxConfig config;  // winner
    ErrorReport report;
    ExpSum sum;
    std::vector<SweepRow> rows;
};

/// Run approximate over the (A, B) grid, skip failures, return the argmin
/// under the objective. MaxCoefConstrained minimizes L1 subject to
/// max|c_j| < bound. Throws AllFailed when nothing succeeds.
SweepResult sweep(const TargetSpec& t, int M, int n_inf, const std::vector<Real>& A_grid,
                  const std::vector<Real>& B_grid, const Objective& objective,
                  int digits = PrecisionContext::default_digits, int jobs = 0);

struct CdfResult {
    Real value;  // clamped to [0, 1]
    Real raw;    // unclamped diagnostic
};

/// P(X <= u) ~= sum_j c_j F_X(lambda_j / u), where s approximates the unit
/// step and F_X is the Laplace transform of the law of X.
CdfResult cdf_from_laplace(const ExpSum& s, const std::function<Complex(const Complex&)>& F_X,
                           const Real& u);

}  // namespace expsum
