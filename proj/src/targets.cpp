#include "expsum/targets.hpp"

#include <memory>
#include <mutex>

#include "expsum/bernoulli.hpp"
#include "expsum/errors.hpp"

namespace expsum {

using boost::multiprecision::abs;
using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::sinh;
using boost::multiprecision::sqrt;
using boost::multiprecision::tanh;

std::vector<Real> taylor_coeffs(const TargetSpec& t, int n) {
    if (n < 1) throw InvalidArgument("taylor_coeffs: n must be >= 1");
    return t.taylor(n);
}

Real eval_target(const TargetSpec& t, const Real& x) {
    if (x < 0) throw InvalidArgument("eval_target: x must be >= 0");
    return t.eval_f(x);
}

Complex laplace_target(const TargetSpec& t, const Complex& z) {
    if (z.re < 0) throw InvalidArgument("laplace_target: Re(z) must be >= 0");
    return t.laplace.eval(z);
}

// ---------------------------------------------------------------------------
// gamma-function kernel  e^{-x} x^{-3} ( coth(x/2)/2 - 1/x - x/12 )
// ---------------------------------------------------------------------------

namespace {

// Exact Taylor coefficients u_m of the kernel about 0. The bracket equals
// sum_{k>=2} B_{2k} x^{2k-1} / (2k)!  (the x and x^{-1}, x terms cancel
// against B_0, B_2), so after dividing by x^3 and multiplying by e^{-x}:
//   u_m = sum_{k>=2, 2k-4<=m} B_{2k}/(2k)! * (-1)^(m-2k+4)/(m-2k+4)!
std::vector<Rational> kernel_taylor_rationals(int m_max) {
    static std::mutex mu;
    static std::vector<Rational> cached;
    std::lock_guard<std::mutex> lock(mu);
    if (static_cast<int>(cached.size()) <= m_max) {
        cached.assign(static_cast<std::size_t>(m_max) + 1, Rational(0));
        for (int k = 2; 2 * k - 4 <= m_max; ++k) {
            Rational w = bernoulli(2 * k) / Rational(factorial(2 * k));
            int e = 2 * k - 4;
            for (int m = e; m <= m_max; ++m) {
                Rational term = w / Rational(factorial(m - e));
                if ((m - e) % 2 == 1) term = -term;
                cached[static_cast<std::size_t>(m)] += term;
            }
        }
    }
    return std::vector<Rational>(cached.begin(), cached.begin() + m_max + 1);
}

struct KernelSeries {
    std::vector<Real> coeff;  // u_0..u_m

    Real eval(const Real& x) const {
        Real acc(0);
        for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    Real eval_prime(const Real& x) const {
        Real acc(0);
        for (std::size_t m = coeff.size(); m-- > 1;) acc = acc * x + coeff[m] * Real(static_cast<long>(m));
        return acc;
    }
};

std::shared_ptr<KernelSeries> make_kernel_series() {
    const int digits = PrecisionContext::current_digits();
    // enough terms for |x| <= 2 (series radius is 4*pi): the k-th bracket
    // term is ~ 2 (x/2pi)^{2k}, so (2/2pi)^{2k} < 10^-(digits+10)
    const int k_max = static_cast<int>((digits + 12) * 2.302585 / (2 * 1.1447)) + 4;
    const int m_max = 2 * k_max;
    auto rs = kernel_taylor_rationals(m_max);
    auto ks = std::make_shared<KernelSeries>();
    ks->coeff.reserve(rs.size());
    for (const Rational& q : rs) ks->coeff.push_back(to_real(q));
    return ks;
}

Real kernel_closed(const Real& x) {
    Real half_x = x / 2;
    Real w = 1 / (2 * tanh(half_x)) - 1 / x - x / 12;
    return exp(-x) / (x * x * x) * w;
}

Real kernel_closed_prime(const Real& x) {
    Real half_x = x / 2;
    Real sh = sinh(half_x);
    Real w = 1 / (2 * tanh(half_x)) - 1 / x - x / 12;
    Real wp = -1 / (4 * sh * sh) + 1 / (x * x) - Real(1) / 12;
    Real g = w / (x * x * x);
    Real gp = wp / (x * x * x) - 3 * w / (x * x * x * x);
    return exp(-x) * (gp - g);
}

TargetSpec make_gamma_kernel() {
    auto ks = make_kernel_series();
    TargetSpec t;
    t.name = "gamma_kernel";
    t.eval_f = [ks](const Real& x) { return x < 1 ? ks->eval(x) : kernel_closed(x); };
    t.eval_user = t.eval_f;
    t.eval_user_prime = [ks](const Real& x) {
        return x < 1 ? ks->eval_prime(x) : kernel_closed_prime(x);
    };
    t.taylor = [](int n) {
        auto rs = kernel_taylor_rationals(n - 1);
        std::vector<Real> xi(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            xi[static_cast<std::size_t>(j)] =
                to_real(rs[static_cast<std::size_t>(j)] * Rational(factorial(j)));
        return xi;
    };
    t.laplace = LaplaceEvaluator::numeric(t.eval_f);
    t.xmax_default = Real(12);
    t.user_l1_tail = [](const Real& x) {
        // |f| <= e^{-x} (x/12 + 1) / x^3 <= e^{-x}/(6 x^2) for x >= 12
        return exp(-x) / (6 * x * x);
    };
    return t;
}

// ---------------------------------------------------------------------------
// remaining catalog entries
// ---------------------------------------------------------------------------

TargetSpec make_gaussian() {
    TargetSpec t;
    t.name = "gaussian";
    t.eval_f = [](const Real& x) { return exp(-(x * x)); };
    t.eval_user = t.eval_f;
    t.eval_user_prime = [](const Real& x) { return -2 * x * exp(-(x * x)); };
    t.taylor = [](int n) {
        std::vector<Real> xi(static_cast<std::size_t>(n), Real(0));
        for (int k = 0; 2 * k < n; ++k) {
            Rational v = Rational(factorial(2 * k)) / Rational(factorial(k));
            if (k % 2 == 1) v = -v;
            xi[static_cast<std::size_t>(2 * k)] = to_real(v);
        }
        return xi;
    };
    t.laplace = LaplaceEvaluator::numeric(t.eval_f);
    t.xmax_default = Real(12);
    t.user_l1_tail = [](const Real& x) {
        Real e;
        mpfr_erfc(e.backend().data(), x.backend().data(), MPFR_RNDN);
        return sqrt(const_pi()) / 2 * e;
    };
    return t;
}

TargetSpec make_gompertz(const Real& x0, const Real& a, const Real& b, const Real& c) {
    if (!(c > 1) || !(b > 0) || a < 0)
        throw InvalidArgument("gompertz_makeham: requires c > 1, b > 0, a >= 0");
    const Real L = log(c);
    const Real beta = b * exp(x0 * L);  // b c^{x0}

    auto u_exponent = [L, beta, a](const Real& x) {
        // u(x) = -a x - (beta/L)(e^{Lx} - 1); the survival function is e^{u}
        return -(a * x) - beta / L * (exp(L * x) - 1);
    };
    TargetSpec t;
    t.name = "gompertz_makeham";
    t.eval_f = [L, beta, a, u_exponent](const Real& x) {
        return (a + beta * exp(L * x)) * exp(u_exponent(x));
    };
    t.eval_user = t.eval_f;
    t.taylor = [L, beta, a](int n) {
        // f = -(e^u)' with u'(0) = -(a+beta), u^{(i)}(0) = -beta L^{i-1};
        // Leibniz recurrence for the derivatives of e^u at 0
        std::vector<Real> uder(static_cast<std::size_t>(n) + 2);
        uder[1] = -(a + beta);
        Real Lp(1);
        for (int i = 2; i <= n + 1; ++i) {
            Lp *= L;
            uder[static_cast<std::size_t>(i)] = -(beta * Lp);
        }
        std::vector<Real> g(static_cast<std::size_t>(n) + 2);
        g[0] = Real(1);
        for (int m = 0; m <= n; ++m) {
            Real acc(0), binom(1);
            for (int i = 0; i <= m; ++i) {
                acc += binom * uder[static_cast<std::size_t>(i) + 1] *
                       g[static_cast<std::size_t>(m - i)];
                binom = binom * (m - i) / (i + 1);
            }
            g[static_cast<std::size_t>(m) + 1] = acc;
        }
        std::vector<Real> xi(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) xi[static_cast<std::size_t>(j)] = -g[static_cast<std::size_t>(j) + 1];
        return xi;
    };
    t.laplace = LaplaceEvaluator::numeric(t.eval_f);
    t.xmax_default = Real(60);
    t.user_l1_tail = [u_exponent](const Real& x) { return exp(u_exponent(x)); };
    return t;
}

TargetSpec make_lognormal(const Real& sigma) {
    if (!(sigma > 0)) throw InvalidArgument("lognormal_survival: requires sigma > 0");
    const Real sqrt2pi = sqrt(2 * const_pi());
    const Real sqrt2 = sqrt(Real(2));

    auto density = [sigma, sqrt2pi](const Real& x) {
        if (x == 0) return Real(0);
        Real lx = log(x);
        return exp(-(lx * lx) / (2 * sigma * sigma)) / (x * sigma * sqrt2pi);
    };
    auto survival = [sigma, sqrt2](const Real& x) {
        if (x == 0) return Real(1);
        Real t = log(x) / (sigma * sqrt2);
        Real e;
        mpfr_erfc(e.backend().data(), t.backend().data(), MPFR_RNDN);
        return e / 2;
    };

    TargetSpec t;
    t.name = "lognormal_survival";
    t.post_transform = PostTransform::NegateDerivative;
    t.eval_f = survival;
    t.eval_user = density;
    t.eval_user_prime = [density, sigma](const Real& x) {
        // g'(x) = -g(x) (1 + ln(x)/sigma^2) / x
        if (x == 0) return Real(0);
        return -(density(x) * (1 + log(x) / (sigma * sigma)) / x);
    };
    t.taylor = [](int n) {
        std::vector<Real> xi(static_cast<std::size_t>(n), Real(0));
        xi[0] = Real(1);
        return xi;
    };
    // F(z) = (1 - G(z))/z by integration by parts, G = Laplace of the density;
    // the z -> 0 limit is the lognormal mean e^{sigma^2/2}
    t.laplace = LaplaceEvaluator::closed_form([density, sigma](const Complex& z) {
        if (z.is_zero()) return Complex(exp(sigma * sigma / 2));
        Complex G = auto_quadrature(density, z, PrecisionContext::current_digits());
        return (Complex(1) - G) / z;
    });
    t.xmax_default = Real(100);
    t.log_error_grid = true;
    t.user_l1_tail = survival;
    return t;
}

TargetSpec make_hockey_stick() {
    TargetSpec t;
    t.name = "hockey_stick";
    t.eval_f = [](const Real& x) { return x < 1 ? Real(1 - x) : Real(0); };
    t.eval_user = t.eval_f;
    t.taylor = [](int n) {
        std::vector<Real> xi(static_cast<std::size_t>(n), Real(0));
        xi[0] = Real(1);
        if (n > 1) xi[1] = Real(-1);
        return xi;
    };
    t.laplace = LaplaceEvaluator::closed_form([](const Complex& z) {
        const int digits = PrecisionContext::current_digits();
        if (abs(z) < pow10(-(digits / 4))) {
            // (e^{-z} + z - 1)/z^2 = sum_k (-z)^k / (k+2)!
            Complex acc, zk(1);
            const Real floor = pow10(-(digits + 5));
            for (int k = 0;; ++k) {
                Complex term = zk / to_real(Integer(factorial(k + 2)));
                acc += term;
                if (abs(term) < floor * abs(acc)) break;
                zk = zk * (-z);
            }
            return acc;
        }
        return (exp(-z) + z - Complex(1)) / (z * z);
    });
    t.xmax_default = Real(4);
    t.support_end = Real(1);
    t.user_l1_tail = [](const Real& x) { return x < 1 ? Real((1 - x) * (1 - x) / 2) : Real(0); };
    return t;
}

TargetSpec make_unit_step() {
    TargetSpec t;
    t.name = "unit_step";
    t.eval_f = [](const Real& x) { return x <= 1 ? Real(1) : Real(0); };
    t.eval_user = t.eval_f;
    t.taylor = [](int n) {
        std::vector<Real> xi(static_cast<std::size_t>(n), Real(0));
        xi[0] = Real(1);
        return xi;
    };
    t.laplace = LaplaceEvaluator::closed_form([](const Complex& z) {
        const int digits = PrecisionContext::current_digits();
        if (abs(z) < pow10(-(digits / 4))) {
            // (1 - e^{-z})/z = sum_k (-z)^k / (k+1)!
            Complex acc, zk(1);
            const Real floor = pow10(-(digits + 5));
            for (int k = 0;; ++k) {
                Complex term = zk / to_real(Integer(factorial(k + 1)));
                acc += term;
                if (abs(term) < floor * abs(acc)) break;
                zk = zk * (-z);
            }
            return acc;
        }
        return (Complex(1) - exp(-z)) / z;
    });
    t.xmax_default = Real(4);
    t.support_end = Real(1);
    t.user_l1_tail = [](const Real& x) { return x < 1 ? Real(1 - x) : Real(0); };
    return t;
}

Real param_or(const std::map<std::string, std::string>& params, const std::string& key,
              const Real& fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        return Real(it->second);
    } catch (const std::exception&) {
        throw InvalidArgument("target parameter " + key + ": bad decimal \"" + it->second + "\"");
    }
}

void reject_unknown(const std::map<std::string, std::string>& params,
                    std::initializer_list<const char*> known) {
    for (const auto& [k, v] : params) {
        bool ok = false;
        for (const char* name : known)
            if (k == name) ok = true;
        if (!ok) throw InvalidArgument("unknown target parameter: " + k);
    }
}

}  // namespace

TargetSpec make_target(const std::string& name, const std::map<std::string, std::string>& params) {
    if (name == "gaussian") {
        reject_unknown(params, {});
        return make_gaussian();
    }
    if (name == "gamma_kernel") {
        reject_unknown(params, {});
        return make_gamma_kernel();
    }
    if (name == "gompertz_makeham") {
        reject_unknown(params, {"x0", "a", "b", "c"});
        Real c_default = exp(Real("0.04") * log(Real(10)));  // 10^0.04
        return make_gompertz(param_or(params, "x0", Real(65)), param_or(params, "a", Real("0.0007")),
                             param_or(params, "b", Real("0.00005")),
                             param_or(params, "c", c_default));
    }
    if (name == "lognormal_survival") {
        reject_unknown(params, {"sigma"});
        return make_lognormal(param_or(params, "sigma", Real(1)));
    }
    if (name == "hockey_stick") {
        reject_unknown(params, {});
        return make_hockey_stick();
    }
    if (name == "unit_step") {
        reject_unknown(params, {});
        return make_unit_step();
    }
    throw InvalidArgument("unknown target: " + name);
}

std::vector<std::string> target_names() {
    return {"gaussian",           "gamma_kernel", "gompertz_makeham",
            "lognormal_survival", "hockey_stick", "unit_step"};
}

}  // namespace expsum
