#include "expsum/bernoulli.hpp"

#include <mutex>

#include "expsum/errors.hpp"

namespace expsum {

namespace {

std::mutex cache_mutex;
std::vector<Rational> cache;  // B_0, B_1, ..., grown on demand

// extend the cache to hold B_0..B_m using the defining recurrence
// sum_{j=0}^{m} C(m+1, j) B_j = 0
void grow(int m) {
    if (cache.empty()) cache.push_back(Rational(1));
    while (static_cast<int>(cache.size()) <= m) {
        int k = static_cast<int>(cache.size());
        if (k > 1 && k % 2 == 1) {
            cache.push_back(Rational(0));
            continue;
        }
        Rational acc(0);
        Integer binom(1);  // C(k+1, 0)
        for (int j = 0; j < k; ++j) {
            acc += Rational(binom) * cache[static_cast<std::size_t>(j)];
            binom = binom * (k + 1 - j) / (j + 1);
        }
        cache.push_back(-acc / (k + 1));
    }
}

}  // namespace

Rational bernoulli(int n) {
    if (n < 0) throw InvalidArgument("bernoulli: negative index");
    std::lock_guard<std::mutex> lock(cache_mutex);
    grow(n);
    return cache[static_cast<std::size_t>(n)];
}

Integer factorial(int n) {
    if (n < 0) throw InvalidArgument("factorial: negative argument");
    Integer f(1);
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Real to_real(const Integer& n) {
    Real r;
    mpfr_set_z(r.backend().data(), n.backend().data(), MPFR_RNDN);
    return r;
}

Real to_real(const Rational& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
    return r;
}

}  // namespace expsum
