#include "expsum/precision.hpp"

#include "expsum/errors.hpp"

namespace expsum {

PrecisionContext::PrecisionContext(int digits) : digits_(digits) {
    if (digits < min_digits)
        throw InvalidArgument("PrecisionContext: digits must be >= 32, got " +
                              std::to_string(digits));
    saved_ = Real::default_precision();
    Real::default_precision(static_cast<unsigned>(digits));
}

PrecisionContext::~PrecisionContext() { Real::default_precision(saved_); }

int PrecisionContext::current_digits() {
    unsigned d = Real::default_precision();
    return d < static_cast<unsigned>(min_digits) ? min_digits : static_cast<int>(d);
}

Real const_pi() {
    Real x;
    mpfr_const_pi(x.backend().data(), MPFR_RNDN);
    return x;
}

Real const_euler() {
    Real x;
    mpfr_const_euler(x.backend().data(), MPFR_RNDN);
    return x;
}

Real const_ln_2pi() { return log(2 * const_pi()); }

Real pow10(long e) {
    Real x;
    if (e >= 0) {
        mpfr_ui_pow_ui(x.backend().data(), 10u, static_cast<unsigned long>(e), MPFR_RNDN);
    } else {
        mpfr_ui_pow_ui(x.backend().data(), 10u, static_cast<unsigned long>(-e), MPFR_RNDN);
        x = 1 / x;
    }
    return x;
}

Real tol_digits(int offset) { return pow10(offset - PrecisionContext::current_digits()); }

}  // namespace expsum
