#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "expsum/complex.hpp"

namespace expsum {

/// Tuning for one double-exponential trapezoid pass.
struct QuadratureParams {
    Real h;                   // step size, > 0
    int term_floor_exp;       // stop once |term| < 10^floor * |sum|
    long max_terms = 400000;  // per side; NonConvergent beyond this

    QuadratureParams();
    QuadratureParams(Real h_, int floor_exp, long max_terms_ = 400000);
};

/// One pass of the half-line double-exponential rule for
/// integral_0^inf f(x) e^{-zx} dx with nodes x_n = exp(nh - exp(-nh)):
///   h * sum_n x_n f(x_n) e^{-z x_n} (1 + e^{-nh}).
/// The sum over n runs from negative to positive indices and each side is
/// truncated once its terms drop below the floor.
Complex de_quadrature(const std::function<Real(const Real&)>& f, const Complex& z,
                      const QuadratureParams& params);

/// Same trapezoid protocol on a finite interval [a, b] (tanh-sinh nodes),
/// for integrands with compact support or endpoint kinks:
/// integral_a^b f(x) e^{-zx} dx.
Complex de_quadrature_finite(const std::function<Real(const Real&)>& f, const Real& a,
                             const Real& b, const Complex& z, const QuadratureParams& params);

/// Step-halving driver: h = 0.5, 0.25, ... until two successive passes agree
/// to digits-5 significant digits (at most 12 halvings, else NonConvergent).
/// When support_end is set the finite-interval rule on [0, support_end] is
/// used instead of the half-line rule.
Complex auto_quadrature(const std::function<Real(const Real&)>& f, const Complex& z, int digits,
                        const std::optional<Real>& support_end = std::nullopt);

/// How a target's Laplace transform gets evaluated.
class LaplaceEvaluator {
  public:
    static LaplaceEvaluator closed_form(std::function<Complex(const Complex&)> fn);
    static LaplaceEvaluator numeric(std::function<Real(const Real&)> integrand,
                                    std::optional<Real> support_end = std::nullopt);

    bool is_closed_form() const { return static_cast<bool>(closed_); }
    Complex eval(const Complex& z) const;
    Complex eval(const Complex& z, int digits) const;

  private:
    std::function<Complex(const Complex&)> closed_;
    std::function<Real(const Real&)> integrand_;
    std::optional<Real> support_end_;
};

/// Element-wise evaluation, optionally on several worker threads; output
/// order and values are independent of the scheduling. A failing point is
/// reported with its index.
std::vector<Complex> eval_many(const LaplaceEvaluator& ev, const std::vector<Complex>& zs,
                               int jobs = 0);

/// Generic ordered parallel map used by eval_many and the parameter sweep.
/// fn(i) must be pure. jobs = 0 picks the hardware concurrency.
void parallel_for_indexed(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace expsum
