#pragma once

#include <boost/multiprecision/mpfr.hpp>

namespace expsum {

/// Arbitrary-precision real scalar. Precision (in decimal digits) is taken
/// from the active PrecisionContext at construction time.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Scope guard fixing the working precision, in decimal digits, for every
/// Real/Complex created while it is alive. Contexts nest; the previous
/// precision is restored on destruction.
class PrecisionContext {
  public:
    static constexpr int min_digits = 32;
    static constexpr int default_digits = 100;

    explicit PrecisionContext(int digits = default_digits);
    ~PrecisionContext();

    PrecisionContext(const PrecisionContext&) = delete;
    PrecisionContext& operator=(const PrecisionContext&) = delete;

    int digits() const { return digits_; }

    /// Working precision of the innermost active context (thread-local).
    static int current_digits();

  private:
    int digits_;
    unsigned saved_;
};

/// pi at the current working precision.
Real const_pi();

/// Euler-Mascheroni constant at the current working precision.
Real const_euler();

/// ln(2*pi) at the current working precision.
Real const_ln_2pi();

/// 10^e at the current working precision (e may be negative).
Real pow10(long e);

/// Convenience: 10^(-current_digits() + offset), the usual tolerance shape.
Real tol_digits(int offset);

}  // namespace expsum
