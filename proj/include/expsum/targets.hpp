#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "expsum/laplace.hpp"

namespace expsum {

/// What to do with the exponential sum once the pipeline has produced it.
/// NegateDerivative targets approximate the antiderivative tail
/// F~(x) = integral_x^inf g and hand the user  g = -F~' , realized on the
/// sum side by termwise differentiation.
enum class PostTransform { Identity, NegateDerivative };

/// A catalog entry bundling everything the pipeline needs to know about one
/// target function.
struct TargetSpec {
    std::string name;
    PostTransform post_transform = PostTransform::Identity;

    /// The function f handed to the Pade machinery.
    std::function<Real(const Real&)> eval_f;
    /// The function the user cares about: f itself, or the density g for
    /// NegateDerivative targets.
    std::function<Real(const Real&)> eval_user;
    /// Derivative of eval_user where the application needs it (may be empty).
    std::function<Real(const Real&)> eval_user_prime;
    /// xi_0..xi_{n-1}: coefficients of f(x) = sum xi_j x^j / j! at 0+.
    std::function<std::vector<Real>(int)> taylor;

    LaplaceEvaluator laplace;

    /// Default error-measurement range and grid style.
    Real xmax_default{12};
    bool log_error_grid = false;

    /// Support of f when compact (enables the finite-interval quadrature).
    std::optional<Real> support_end;
    /// Upper bound for integral_x^inf |eval_user| (may be empty).
    std::function<Real(const Real&)> user_l1_tail;
};

/// xi_0..xi_{n-1} for the target.
std::vector<Real> taylor_coeffs(const TargetSpec& t, int n);

/// f(x) at the working precision.
Real eval_target(const TargetSpec& t, const Real& x);

/// Laplace transform F(z) of f, Re(z) >= 0 (closed form when available,
/// step-halving double-exponential quadrature otherwise).
Complex laplace_target(const TargetSpec& t, const Complex& z);

/// Build a named target. Parameter values are decimal strings, e.g.
/// {"sigma", "1.5"} for lognormal_survival or {"x0","65"} for
/// gompertz_makeham. Unknown names or parameters throw InvalidArgument.
TargetSpec make_target(const std::string& name,
                       const std::map<std::string, std::string>& params = {});

std::vector<std::string> target_names();

}  // namespace expsum
