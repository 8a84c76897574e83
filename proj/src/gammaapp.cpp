#include "expsum/gammaapp.hpp"

#include "expsum/errors.hpp"

namespace expsum {

using boost::multiprecision::abs;
using boost::multiprecision::exp;
using boost::multiprecision::log;

namespace {

// Glaisher-Kinkelin constant A to 140 digits (OEIS A074962)
constexpr const char* kGlaisher =
    "1.2824271291006226368753425688697917277676889273250011920637400217404063088588264611297364919582023"
    "74394206461203990007489331577913627752804";

}  // namespace

PhiPair phi_cap(const ExpSum& s, const Complex& z) {
    PhiPair out;
    for (const auto& t : s.terms) {
        Complex w = z + t.lambda;
        if (w.is_zero()) throw PoleAtPoint("phi_cap: z + lambda_j vanishes");
        Complex inv2 = t.c / (w * w);
        out.phi += inv2;
        out.dphi -= 2 * (inv2 / w);
    }
    return out;
}

GammaApproximant make_gamma_approximant(const ExpSum& s) {
    GammaApproximant g;
    g.s = s;
    // constants computed at >= 150 digits regardless of the ambient context
    int digits = PrecisionContext::current_digits();
    PrecisionContext ctx(digits < 150 ? 150 : digits);
    g.ln_2pi = const_ln_2pi();
    g.ln_glaisher = log(Real(kGlaisher));
    return g;
}

std::pair<Real, Real> error_bounds(const ExpSum& s, const TargetSpec& t, const Real& x_max) {
    if (!t.eval_user_prime)
        throw InvalidArgument("error_bounds: target must provide a derivative");

    const ExpSum ds = derivative_expsum(s);  // -phi'
    auto eta1 = [&](const Real& x) { return abs(2 * x * x * (t.eval_f(x) - eval_expsum(s, x))); };
    auto eta2 = [&](const Real& x) {
        Real diff = t.eval_f(x) - eval_expsum(s, x);
        Real diff_prime = t.eval_user_prime(x) + eval_expsum(ds, x);  // f' - phi'
        return abs(6 * x * diff + 2 * x * x * diff_prime);
    };

    auto sup_of = [&](const std::function<Real(const Real&)>& fn) {
        const int n = 2000;
        std::vector<Real> xs, vals;
        xs.reserve(n + 301);
        for (int i = 0; i <= n; ++i) xs.push_back(x_max * i / n);
        // log-spaced extension out to 3*x_max: the weighted kernel tail can
        // peak far beyond the dense window at high accuracy levels
        {
            const int m = 300;
            Real ratio = exp(log(Real(3)) / m);
            Real x = x_max;
            for (int i = 0; i < m; ++i) {
                x *= ratio;
                xs.push_back(x);
            }
        }
        vals.reserve(xs.size());
        for (const Real& x : xs) vals.push_back(fn(x));
        Real best(0);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (vals[i] > best) best = vals[i];
            bool local_max = (i == 0 || vals[i] >= vals[i - 1]) &&
                             (i + 1 == xs.size() || vals[i] >= vals[i + 1]);
            if (local_max && vals[i] > 0 && i > 0 && i + 1 < xs.size()) {
                // golden-section refinement inside the bracketing cells
                Real a = xs[i - 1], b = xs[i + 1];
                const Real invphi = (boost::multiprecision::sqrt(Real(5)) - 1) / 2;
                Real c = b - invphi * (b - a), d = a + invphi * (b - a);
                Real fc = fn(c), fd = fn(d);
                const Real wtol = (b - a) / 1000000;
                while (b - a > wtol) {
                    if (fc > fd) {
                        b = d;
                        d = c;
                        fd = fc;
                        c = b - invphi * (b - a);
                        fc = fn(c);
                    } else {
                        a = c;
                        c = d;
                        fc = fd;
                        d = a + invphi * (b - a);
                        fd = fn(d);
                    }
                }
                Real refined = fc > fd ? fc : fd;
                if (refined > best) best = refined;
            }
        }
        return best;
    };

    Real eps1 = sup_of(eta1);
    Real eps2 = sup_of(eta2);

    // analytic exponential bound beyond the extension (x_far = 3 x_max):
    // |f| <= e^{-x}/(6x^2), |f'| <= e^{-x}/x^2 out here, and each sum term
    // x^2 e^{-Re lambda x} is decreasing once Re(lambda) x > 2
    const Real x_far = 3 * x_max;
    Real sum_c(0), sum_cl(0);
    Real min_re = s.min_re_lambda();
    for (const auto& term : s.terms) {
        sum_c += expsum::abs(term.c) * exp(-(term.lambda.re * x_far));
        sum_cl += expsum::abs(term.c * term.lambda) * exp(-(term.lambda.re * x_far));
    }
    if (!(min_re > 0) || min_re * x_far <= 2)
        throw UnstableTail("error_bounds: slow or growing exponential tail");
    Real fb = exp(-x_far) / (6 * x_far * x_far);
    Real fpb = exp(-x_far) / (x_far * x_far);
    Real tail1 = 2 * x_far * x_far * (fb + sum_c);
    Real tail2 = 6 * x_far * (fb + sum_c) + 2 * x_far * x_far * (fpb + sum_cl);
    if (tail1 > eps1) eps1 = tail1;
    if (tail2 > eps2) eps2 = tail2;
    return {eps1, eps2};
}

namespace {

void require_domain(const Complex& z) {
    if (2 * z.re < 3) throw DomainError("gamma approximant: requires Re(z) >= 3/2");
}

}  // namespace

Complex ln_gamma_hat(const GammaApproximant& g, const Complex& z) {
    require_domain(z);
    PhiPair p = phi_cap(g.s, z - Complex(1));
    Complex lnz = expsum::log(z);
    return (z - Complex(Real(1) / 2)) * lnz - z + Complex(g.ln_2pi / 2) +
           Complex(1) / (12 * z) - p.dphi;
}

Complex ln_barnesG_hat(const GammaApproximant& g, const Complex& z) {
    require_domain(z);
    PhiPair p = phi_cap(g.s, z - Complex(1));
    Complex lnz = expsum::log(z);
    Complex zz = z * z;
    Complex r = (zz * (Real(1) / 2) - z + Complex(Real(5) / 12)) * lnz;
    r -= zz * (Real(3) / 4);
    r += (z - Complex(1)) * (g.ln_2pi / 2);
    r += z + Complex(Real(1) / 12) - Complex(g.ln_glaisher);
    r -= Complex(1) / (12 * z);
    r += p.phi - (z - Complex(1)) * p.dphi;
    return r;
}

}  // namespace expsum
