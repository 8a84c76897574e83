#pragma once

#include <random>
#include <string>

#include "expsum/complex.hpp"

namespace testutil {

using expsum::Complex;
using expsum::Real;

inline Complex C(long re, long im = 0) { return {Real(re), Real(im)}; }

/// re = p/q + (ip/iq) i, exact rational entries
inline Complex CQ(long p, long q, long ip = 0, long iq = 1) {
    return {Real(p) / Real(q), Real(ip) / Real(iq)};
}

inline bool close(const Real& a, const Real& b, const Real& tol) {
    return boost::multiprecision::abs(a - b) <= tol;
}

inline bool close(const Complex& a, const Complex& b, const Real& tol) {
    return expsum::abs(a - b) <= tol;
}

/// relative closeness with the usual 1+|b| floor
inline bool close_rel(const Complex& a, const Complex& b, const Real& tol) {
    return expsum::abs(a - b) <= tol * (1 + expsum::abs(b));
}

/// deterministic uniform double in [lo, hi], exact when stored in a Real
class Rng {
  public:
    explicit Rng(unsigned long long seed) : eng_(seed) {}
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }
    Real real(double lo, double hi) { return Real(uniform(lo, hi)); }
    Complex complex(double lo, double hi) { return {real(lo, hi), real(lo, hi)}; }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

  private:
    std::mt19937_64 eng_;
};

}  // namespace testutil
