#include "expsum/laplace.hpp"

#include <atomic>
#include <thread>

#include "expsum/errors.hpp"

namespace expsum {

QuadratureParams::QuadratureParams()
    : h(Real(1) / 2), term_floor_exp(-(PrecisionContext::current_digits() + 10)) {}

QuadratureParams::QuadratureParams(Real h_, int floor_exp, long max_terms_)
    : h(std::move(h_)), term_floor_exp(floor_exp), max_terms(max_terms_) {
    if (!(h > 0)) throw InvalidArgument("QuadratureParams: h must be > 0");
}

namespace {

// consecutive below-floor terms required before a side is cut off
constexpr int kTailRun = 3;

Complex exp_neg_zx(const Complex& z, const Real& x) {
    using boost::multiprecision::exp;
    Real m = exp(-(z.re * x));
    if (z.im == 0) return {m, Real(0)};
    Real s, c, phase = -(z.im * x);
    mpfr_sin_cos(s.backend().data(), c.backend().data(), phase.backend().data(), MPFR_RNDN);
    return {m * c, m * s};
}

}  // namespace

Complex de_quadrature(const std::function<Real(const Real&)>& f, const Complex& z,
                      const QuadratureParams& params) {
    using boost::multiprecision::exp;
    const Real floor = pow10(params.term_floor_exp);

    Complex sum;
    for (int dir = 0; dir < 2; ++dir) {
        const long step = dir == 0 ? 1 : -1;
        int run = 0;
        // n = 0 belongs to the positive sweep only
        for (long n = (dir == 0 ? 0 : -1);; n += step) {
            if (n * step > params.max_terms)
                throw NonConvergent("de_quadrature: max_terms reached before truncation");
            Real nh = params.h * static_cast<long>(n);
            Real enh = exp(-nh);
            Real x = exp(nh - enh);
            Complex term = exp_neg_zx(z, x) * (x * f(x) * (1 + enh));
            sum += term;
            if (abs(term) < floor * abs(sum)) {
                if (++run >= kTailRun) break;
            } else {
                run = 0;
            }
        }
    }
    return sum * params.h;
}

Complex de_quadrature_finite(const std::function<Real(const Real&)>& f, const Real& a,
                             const Real& b, const Complex& z, const QuadratureParams& params) {
    using boost::multiprecision::cosh;
    using boost::multiprecision::exp;
    using boost::multiprecision::sinh;
    using boost::multiprecision::tanh;
    const Real floor = pow10(params.term_floor_exp);
    const Real half_len = (b - a) / 2;
    const Real mid = (a + b) / 2;
    const Real half_pi = const_pi() / 2;

    // x = mid + half_len * tanh((pi/2) sinh(t)),  dx = half_len * (pi/2) cosh(t) / cosh^2
    Complex sum;
    for (int dir = 0; dir < 2; ++dir) {
        const long step = dir == 0 ? 1 : -1;
        int run = 0;
        for (long n = (dir == 0 ? 0 : -1);; n += step) {
            if (n * step > params.max_terms)
                throw NonConvergent("de_quadrature_finite: max_terms reached before truncation");
            Real t = params.h * static_cast<long>(n);
            Real sh = half_pi * sinh(t);
            Real u = tanh(sh);
            Real x = mid + half_len * u;
            if (x <= a || x >= b) {
                // node collapsed onto an endpoint at this precision
                if (++run >= kTailRun) break;
                continue;
            }
            Real ch = cosh(sh);
            Real w = half_len * half_pi * cosh(t) / (ch * ch);
            Complex term = exp_neg_zx(z, x) * (f(x) * w);
            sum += term;
            if (abs(term) < floor * abs(sum)) {
                if (++run >= kTailRun) break;
            } else {
                run = 0;
            }
        }
    }
    return sum * params.h;
}

Complex auto_quadrature(const std::function<Real(const Real&)>& f, const Complex& z, int digits,
                        const std::optional<Real>& support_end) {
    constexpr int kMaxHalvings = 12;
    const Real agree = pow10(5 - digits);

    QuadratureParams params(Real(1) / 2, -(digits + 10));
    auto pass = [&]() {
        return support_end ? de_quadrature_finite(f, Real(0), *support_end, z, params)
                           : de_quadrature(f, z, params);
    };

    Complex prev = pass();
    for (int k = 0; k < kMaxHalvings; ++k) {
        params.h = params.h / 2;
        Complex cur = pass();
        if (abs(cur - prev) <= agree * abs(cur)) return cur;
        prev = cur;
    }
    throw NonConvergent("auto_quadrature: no agreement after 12 halvings");
}

LaplaceEvaluator LaplaceEvaluator::closed_form(std::function<Complex(const Complex&)> fn) {
    LaplaceEvaluator ev;
    ev.closed_ = std::move(fn);
    return ev;
}

LaplaceEvaluator LaplaceEvaluator::numeric(std::function<Real(const Real&)> integrand,
                                           std::optional<Real> support_end) {
    LaplaceEvaluator ev;
    ev.integrand_ = std::move(integrand);
    ev.support_end_ = std::move(support_end);
    return ev;
}

Complex LaplaceEvaluator::eval(const Complex& z) const {
    return eval(z, PrecisionContext::current_digits());
}

Complex LaplaceEvaluator::eval(const Complex& z, int digits) const {
    if (closed_) return closed_(z);
    if (!integrand_) throw InvalidArgument("LaplaceEvaluator: empty");
    return auto_quadrature(integrand_, z, digits, support_end_);
}

void parallel_for_indexed(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 0) {
        unsigned hc = std::thread::hardware_concurrency();
        jobs = hc == 0 ? 1 : static_cast<int>(hc);
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    const int digits = PrecisionContext::current_digits();
    std::atomic<std::size_t> next{0};
    std::vector<std::string> errors(n);
    std::atomic<bool> failed{false};
    auto worker = [&]() {
        // mpfr default precision is thread-local; mirror the caller's context
        PrecisionContext ctx(digits);
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (const std::exception& e) {
                errors[i] = e.what();
                failed = true;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failed) {
        for (std::size_t i = 0; i < n; ++i)
            if (!errors[i].empty())
                throw Error("parallel task " + std::to_string(i) + " failed: " + errors[i]);
    }
}

std::vector<Complex> eval_many(const LaplaceEvaluator& ev, const std::vector<Complex>& zs,
                               int jobs) {
    std::vector<Complex> out(zs.size());
    const int digits = PrecisionContext::current_digits();
    parallel_for_indexed(zs.size(), jobs, [&](std::size_t i) { out[i] = ev.eval(zs[i], digits); });
    return out;
}

}  // namespace expsum
