#include "expsum/complex.hpp"

#include "expsum/errors.hpp"

namespace expsum {

Complex exp(const Complex& a) {
    using boost::multiprecision::exp;
    Real m = exp(a.re);
    if (a.im == 0) return {m, Real(0)};
    Real s, c;
    mpfr_sin_cos(s.backend().data(), c.backend().data(), a.im.backend().data(), MPFR_RNDN);
    return {m * c, m * s};
}

Complex log(const Complex& a) {
    using boost::multiprecision::log;
    if (a.is_zero()) throw InvalidArgument("log of zero");
    if (a.im == 0 && a.re > 0) return {log(a.re), Real(0)};
    return {log(abs(a)), arg(a)};
}

Complex sqrt(const Complex& a) {
    using boost::multiprecision::sqrt;
    if (a.is_zero()) return {};
    if (a.im == 0 && a.re > 0) return {sqrt(a.re), Real(0)};
    // sqrt via half-angle: w = sqrt(|a|), result on the principal branch
    Real r = abs(a);
    Real u = sqrt((r + a.re) / 2);
    Real v = sqrt((r - a.re) / 2);
    if (a.im < 0) v = -v;
    return {u, v};
}

std::string to_string(const Complex& a) {
    std::string s = a.re.str(0, std::ios_base::scientific);
    Real ia = boost::multiprecision::abs(a.im);
    s += (a.im < 0 || (a.im == 0 && signbit(a.im))) ? '-' : '+';
    s += ia.str(0, std::ios_base::scientific);
    s += 'i';
    return s;
}

Complex complex_from_string(const std::string& s) {
    if (s.size() < 2 || s.back() != 'i')
        throw InvalidArgument("complex_from_string: expected trailing 'i' in \"" + s + "\"");
    // find the sign separating the two parts: a '+'/'-' not preceded by e/E
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size() - 2; i >= 1; --i) {
        char ch = s[i];
        if ((ch == '+' || ch == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos)
        throw InvalidArgument("complex_from_string: no imaginary part in \"" + s + "\"");
    try {
        Real re(s.substr(0, split));
        Real im(s.substr(split, s.size() - 1 - split));
        return {re, im};
    } catch (const std::exception&) {
        throw InvalidArgument("complex_from_string: malformed number in \"" + s + "\"");
    }
}

}  // namespace expsum
