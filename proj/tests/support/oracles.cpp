#include "support/oracles.hpp"

#include "expsum/bernoulli.hpp"

namespace oracles {

using expsum::bernoulli;
using expsum::Rational;
using expsum::to_real;

RationalFunction descend_rational(const RationalFunction& R, const Complex& z1,
                                  const Complex& a1) {
    // (a1 den - num) / ((z - z1) num)
    Polynomial shift({-z1, Complex(Real(1))});
    return RationalFunction(R.den * a1 - R.num, shift * R.num);
}

namespace {

// Stirling tail sum_{n>=1} B_2n / (2n(2n-1) w^{2n-1}), truncated when terms
// stop mattering; w must satisfy Re(w) >= 80 for the truncation error to sit
// below 10^-150
Complex stirling_tail(const Complex& w) {
    Complex w2 = w * w;
    Complex wp = w;  // w^{2n-1}
    Complex acc;
    const Real floor = expsum::pow10(-(expsum::PrecisionContext::current_digits() + 10));
    for (int n = 1; n <= 120; ++n) {
        Rational coef = bernoulli(2 * n) / (Rational(2 * n) * Rational(2 * n - 1));
        Complex term = Complex(to_real(coef)) / wp;
        acc += term;
        if (expsum::abs(term) < floor * (1 + expsum::abs(acc))) break;
        wp = wp * w2;
    }
    return acc;
}

constexpr int kShiftTo = 80;

}  // namespace

Complex lngamma_ref(const Complex& z) {
    // ln Gamma(z) = ln Gamma(z + N) - sum_{k=0}^{N-1} ln(z + k), Re(z) > 0
    Complex acc;
    Complex w = z;
    while (w.re < kShiftTo) {
        acc += expsum::log(w);
        w = w + Complex(Real(1));
    }
    Complex lg = (w - Complex(Real(1) / 2)) * expsum::log(w) - w +
                 Complex(expsum::const_ln_2pi() / 2) + stirling_tail(w);
    return lg - acc;
}

Complex lnbarnesg_ref(const Complex& z) {
    // ln G(w+1) = w^2/2 ln w - 3w^2/4 + w ln(2pi)/2 - ln(w)/12 + 1/12 - ln A
    //             + sum_{k>=1} B_{2k+2} / (2k (2k+2) w^{2k}),
    // pushed to large w by ln G(w+1) = ln Gamma(w) + ln G(w). ln A enters via
    // 1/12 - ln A = zeta'(-1), computed here from its own asymptotic-free
    // route: we instead carry ln A explicitly from the Glaisher constant.
    static const char* kGlaisher =
        "1.2824271291006226368753425688697917277676889273250011920637400217404063088588264611297364919582"
        "02374394206461203990007489331577913627752804";
    const Real lnA = boost::multiprecision::log(Real(kGlaisher));

    Complex acc;  // sum of ln Gamma(w) for the recurrence
    Complex w = z;
    while (w.re < kShiftTo) {
        acc += lngamma_ref(w);
        w = w + Complex(Real(1));
    }
    // now evaluate ln G(w) = ln G((w-1)+1) at large w
    Complex u = w - Complex(Real(1));
    Complex lnu = expsum::log(u);
    Complex r = (u * u) * (Real(1) / 2) * lnu - (u * u) * (Real(3) / 4) +
                u * (expsum::const_ln_2pi() / 2) - lnu * (Real(1) / 12) +
                Complex(Real(1) / 12 - lnA);
    Complex u2 = u * u;
    Complex up = u2;  // u^{2k}
    const Real floor = expsum::pow10(-(expsum::PrecisionContext::current_digits() + 10));
    for (int k = 1; k <= 120; ++k) {
        Rational coef = bernoulli(2 * k + 2) / (Rational(2 * k) * Rational(2 * k + 2));
        Complex term = Complex(to_real(coef)) / up;
        r += term;
        if (expsum::abs(term) < floor * (1 + expsum::abs(r))) break;
        up = up * u2;
    }
    return r - acc;
}

}  // namespace oracles
