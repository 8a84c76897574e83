#include <doctest.h>

#include "expsum/errors.hpp"
#include "expsum/laplace.hpp"
#include "expsum/padecf.hpp"
#include "expsum/targets.hpp"
#include "support/testutil.hpp"

using namespace expsum;
using namespace testutil;

namespace {
PrecisionContext ctx(100);

Real erfc_real(const Real& x) {
    Real e;
    mpfr_erfc(e.backend().data(), x.backend().data(), MPFR_RNDN);
    return e;
}
}  // namespace

TEST_CASE("fixed-step quadrature of e^{-x} at z=1") {
    // integral of e^{-2x} = 1/2, to >= 60 digits at h = 0.05
    auto f = [](const Real& x) { return exp(-x); };
    QuadratureParams params(Real(1) / 20, -110);
    Complex v = de_quadrature(f, C(1), params);
    CHECK(close(v, CQ(1, 2), pow10(-60)));
    CHECK(v.im == 0);
}

TEST_CASE("quadrature matches the hockey-stick closed form at z=1") {
    // finite-interval rule on [0,1]: the integrand kink sits at the endpoint,
    // which tanh-sinh absorbs
    auto f = [](const Real& x) { return x < 1 ? Real(1 - x) : Real(0); };
    Complex v = auto_quadrature(f, C(1), 100, Real(1));
    CHECK(close(v, expsum::exp(C(-1)), pow10(-90)));
}

TEST_CASE("quadrature of the Gaussian matches the erfc closed form") {
    // integral_0^inf e^{-x^2-zx} dx = (sqrt(pi)/2) e^{z^2/4} erfc(z/2) at z=1
    auto f = [](const Real& x) { return exp(-(x * x)); };
    Complex v = auto_quadrature(f, C(1), 100);
    Real expected = sqrt(const_pi()) / 2 * exp(Real(1) / 4) * erfc_real(Real(1) / 2);
    CHECK(close(v, Complex(expected), pow10(-90)));
}

TEST_CASE("step-halving driver hits the requested agreement") {
    auto f = [](const Real& x) { return exp(-x); };
    Complex third = auto_quadrature(f, C(2), 100);
    CHECK(close(third, CQ(1, 3), pow10(-95)));

    auto g = [](const Real& x) { return exp(-(x * x)); };
    Complex halfpi = auto_quadrature(g, C(0), 100);
    CHECK(close(halfpi, Complex(sqrt(const_pi()) / 2), pow10(-95)));

    auto alg = [](const Real& x) { return 1 / ((1 + x) * (1 + x)); };
    Complex one = auto_quadrature(alg, C(0), 100);
    CHECK(close(one, C(1), pow10(-90)));
}

TEST_CASE("conjugate symmetry of the transform of a real integrand") {
    auto f = [](const Real& x) { return exp(-(x * x)); };
    Real tol = tol_digits(10);
    for (int k = 1; k <= 3; ++k) {
        Complex z{Real(k) / 2, Real(3 - k)};
        Complex a = auto_quadrature(f, z, 100);
        Complex b = auto_quadrature(f, conj(z), 100);
        CHECK(abs(b - conj(a)) <= tol * (1 + abs(a)));
    }
}

TEST_CASE("eval_many is order independent and reports the offending index") {
    LaplaceEvaluator ev = LaplaceEvaluator::numeric([](const Real& x) { return exp(-x); });
    std::vector<Complex> zs;
    for (int k = 0; k < 6; ++k) zs.push_back(C(k + 1, k - 3));

    auto serial = eval_many(ev, zs, 1);
    auto parallel = eval_many(ev, zs, 4);
    REQUIRE(serial.size() == zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) CHECK(serial[i] == parallel[i]);

    CHECK(eval_many(ev, {}, 2).empty());

    // closed-form evaluator passthrough
    TargetSpec hockey = make_target("hockey_stick");
    auto vals = eval_many(hockey.laplace, {C(1), C(2)}, 1);
    CHECK(close(vals[0], expsum::exp(C(-1)), tol_digits(10)));
    CHECK(close(vals[1], (expsum::exp(C(-2)) + C(1)) * CQ(1, 4), tol_digits(10)));

    LaplaceEvaluator bad =
        LaplaceEvaluator::numeric([](const Real&) -> Real { throw NonConvergent("boom"); });
    bool threw = false;
    try {
        eval_many(bad, zs, 2);
    } catch (const Error& e) {
        threw = true;
        CHECK(std::string(e.what()).find("task") != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("numeric and closed-form evaluators agree for compact-support targets") {
    TargetSpec hockey = make_target("hockey_stick");
    TargetSpec step = make_target("unit_step");
    // corner-curve points sampled from the runs these targets are used with
    std::vector<Complex> points;
    for (const Complex& z : build_points(10, Real(0), Real(39))) points.push_back(z);
    for (const Complex& z : build_points(6, Real(0), Real(83)))
        if (z.im > 0) points.push_back(z);
    REQUIRE(points.size() >= 13);
    for (const TargetSpec* t : {&hockey, &step}) {
        LaplaceEvaluator numeric = LaplaceEvaluator::numeric(t->eval_f, t->support_end);
        for (const Complex& z : points) {
            Complex closed = t->laplace.eval(z);
            Complex num = numeric.eval(z);
            CHECK(abs(num - closed) <= tol_digits(10) * (1 + abs(closed)));
        }
    }
}
