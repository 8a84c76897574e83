#pragma once

#include <string>

#include "expsum/precision.hpp"

namespace expsum {

/// Arbitrary-precision complex scalar built on Real. Values are immutable in
/// spirit: every operation returns a fresh value at the working precision.
struct Complex {
    Real re;
    Real im;

    Complex() : re(0), im(0) {}
    Complex(const Real& r) : re(r), im(0) {}  // NOLINT: implicit by design
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
};

inline Complex operator+(const Complex& a, const Complex& b) {
    return {a.re + b.re, a.im + b.im};
}
inline Complex operator-(const Complex& a, const Complex& b) {
    return {a.re - b.re, a.im - b.im};
}
inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
inline Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
inline Complex operator*(const Real& s, const Complex& a) { return a * s; }
inline Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }
inline Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline Complex& operator+=(Complex& a, const Complex& b) {
    a.re += b.re;
    a.im += b.im;
    return a;
}
inline Complex& operator-=(Complex& a, const Complex& b) {
    a.re -= b.re;
    a.im -= b.im;
    return a;
}
inline Complex& operator*=(Complex& a, const Complex& b) {
    a = a * b;
    return a;
}
inline bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
}
inline bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

inline Complex conj(const Complex& a) { return {a.re, -a.im}; }

inline Real abs(const Complex& a) {
    using boost::multiprecision::hypot;
    if (a.im == 0) return boost::multiprecision::abs(a.re);
    if (a.re == 0) return boost::multiprecision::abs(a.im);
    return hypot(a.re, a.im);
}

/// |a|^2 without the square root.
inline Real norm2(const Complex& a) { return a.re * a.re + a.im * a.im; }

inline Real arg(const Complex& a) { return atan2(a.im, a.re); }

/// exp(a), exact real result for exact real input.
Complex exp(const Complex& a);

/// Principal branch logarithm.
Complex log(const Complex& a);

Complex sqrt(const Complex& a);

/// Decimal-string form "re+imi" / "re-imi" with round-trip precision,
/// e.g. "5.0e-01+2.5e+00i". Lossless at the context precision.
std::string to_string(const Complex& a);

/// Inverse of to_string. Throws InvalidArgument on malformed input.
Complex complex_from_string(const std::string& s);

}  // namespace expsum
