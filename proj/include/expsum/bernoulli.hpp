#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <vector>

#include "expsum/precision.hpp"

namespace expsum {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Exact Bernoulli number B_n (B_1 = -1/2 convention). Results are cached;
/// safe to call from several threads.
Rational bernoulli(int n);

/// n! as an exact integer.
Integer factorial(int n);

/// Correctly rounded Real at the current working precision.
Real to_real(const Rational& q);
Real to_real(const Integer& n);

}  // namespace expsum
