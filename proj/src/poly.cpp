#include "expsum/poly.hpp"

#include <algorithm>

#include "expsum/errors.hpp"

namespace expsum {

namespace {
const Complex kZero{};
}

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const Complex& c) {
    return c.is_zero() ? Polynomial() : Polynomial({c});
}

Polynomial Polynomial::from_roots(const std::vector<Complex>& roots) {
    std::vector<Complex> c{Complex(1)};
    for (const Complex& r : roots) {
        std::vector<Complex> next(c.size() + 1);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    return Polynomial(std::move(c));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const Complex& Polynomial::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return kZero;
    return coeffs_[static_cast<std::size_t>(i)];
}

const Complex& Polynomial::leading() const {
    if (coeffs_.empty()) return kZero;
    return coeffs_.back();
}

Complex Polynomial::operator()(const Complex& z) const {
    Complex acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Complex> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Real(static_cast<long>(i));
    return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
    if (coeffs_.empty()) throw InvalidArgument("monic of zero polynomial");
    Polynomial r = *this;
    Complex lead = r.coeffs_.back();
    for (Complex& c : r.coeffs_) c = c / lead;
    r.coeffs_.back() = Complex(1);  // kill the rounding residue in the lead
    return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    }
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    }
    return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Complex& s) {
    if (s.is_zero()) return {};
    std::vector<Complex> c = a.coeffs_;
    for (Complex& x : c) x = x * s;
    return Polynomial(std::move(c));
}

RationalFunction::RationalFunction(Polynomial n, Polynomial d)
    : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw InvalidArgument("RationalFunction: zero denominator");
}

RationalFunction RationalFunction::normalized() const {
    Complex lead = den.leading();
    RationalFunction r;
    r.num = num * (Complex(1) / lead);
    r.den = den.monic();
    return r;
}

Complex RationalFunction::operator()(const Complex& z) const {
    Complex d = den(z);
    if (d.is_zero()) throw PoleAtPoint("rational function evaluated at a pole");
    return num(z) / d;
}

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

namespace {

// Largest |coeff_k / coeff_n| based bound: all roots lie in |z| <= 1 + max.
Real cauchy_radius(const std::vector<Complex>& c) {
    Real lead = abs(c.back());
    Real m(0);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        Real t = abs(c[i]) / lead;
        if (t > m) m = t;
    }
    return 1 + m;
}

}  // namespace

std::vector<Complex> poly_roots(const Polynomial& p, const RootOptions& opts) {
    if (p.degree() < 1) throw InvalidArgument("poly_roots: degree must be >= 1");

    std::vector<Complex> c = p.coeffs();

    // peel off exact zero roots (z^k factors occur in assembled fractions)
    std::vector<Complex> roots;
    std::size_t shift = 0;
    while (shift < c.size() - 1 && c[shift].is_zero()) ++shift;
    if (shift > 0) {
        roots.assign(shift, Complex(0));
        c.erase(c.begin(), c.begin() + static_cast<long>(shift));
    }
    const int n = static_cast<int>(c.size()) - 1;
    if (n == 0) return roots;
    if (n == 1) {
        roots.push_back(-(c[0] / c[1]));
        return roots;
    }

    Polynomial q{std::vector<Complex>(c)};
    Polynomial dq = q.derivative();

    // initial guesses: Cauchy circle, jittered so no two angles coincide and
    // no guess sits on the real axis
    Real radius = cauchy_radius(c);
    Real two_pi = 2 * const_pi();
    std::vector<Complex> x(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        Real theta = two_pi * (Real(k) + Real(1) / 3) / n + Real(1) / 2;
        Real s, co;
        mpfr_sin_cos(s.backend().data(), co.backend().data(), theta.backend().data(), MPFR_RNDN);
        x[static_cast<std::size_t>(k)] = Complex(radius * co, radius * s);
    }

    const int digits = PrecisionContext::current_digits();
    const Real step_tol = pow10(5 - digits);
    const Real noise_eps = pow10(2 - digits);

    // backward-error scale sum |a_k| |x|^k, the residual level at which the
    // evaluation itself is pure rounding noise
    std::vector<Real> abs_c;
    abs_c.reserve(c.size());
    for (const Complex& ck : c) abs_c.push_back(abs(ck));
    auto noise_scale = [&](const Complex& at) {
        Real scale(0), power(1), ra = abs(at);
        for (const Real& a : abs_c) {
            scale += a * power;
            power *= ra;
        }
        return scale;
    };

    // a root is done when its correction is negligible or its residual has
    // hit the evaluation noise floor (clustered roots never meet a pure
    // step tolerance)
    std::vector<bool> done(static_cast<std::size_t>(n), false);
    bool converged = false;
    for (int iter = 0; iter < opts.max_iterations && !converged; ++iter) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            if (done[static_cast<std::size_t>(i)]) continue;
            auto& xi = x[static_cast<std::size_t>(i)];
            Complex pv = q(xi);
            if (pv.is_zero() || abs(pv) <= noise_eps * noise_scale(xi)) {
                done[static_cast<std::size_t>(i)] = true;
                continue;
            }
            Complex dv = dq(xi);
            if (dv.is_zero()) {
                // sitting on a critical point; nudge off and retry next sweep
                xi = xi + Complex(radius * pow10(-digits / 2), Real(0));
                converged = false;
                continue;
            }
            Complex w = pv / dv;  // Newton correction
            Complex sum;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                sum += Complex(Real(1)) / (xi - x[static_cast<std::size_t>(j)]);
            }
            Complex denom = Complex(Real(1)) - w * sum;
            if (denom.is_zero()) {
                xi = xi + Complex(radius * pow10(-digits / 2), Real(0));
                converged = false;
                continue;
            }
            Complex delta = w / denom;
            xi = xi - delta;
            if (abs(delta) > step_tol * (1 + abs(xi)))
                converged = false;
            else
                done[static_cast<std::size_t>(i)] = true;
        }
    }
    if (!converged)
        throw NonConvergence("poly_roots: Ehrlich-Aberth did not converge within " +
                             std::to_string(opts.max_iterations) + " iterations");

    // residual check, backward-error style
    const Real resid_tol = pow10(10 - digits);
    for (int i = 0; i < n; ++i) {
        const Complex& r = x[static_cast<std::size_t>(i)];
        Real scale(0);
        Real ra = abs(r), power(1);
        for (const Complex& ck : c) {
            scale += abs(ck) * power;
            power *= ra;
        }
        if (abs(q(r)) > resid_tol * scale)
            throw NonConvergence("poly_roots: residual tolerance not met");
    }

    roots.insert(roots.end(), x.begin(), x.end());
    return roots;
}

// ---------------------------------------------------------------------------
// Series expansion and partial fractions
// ---------------------------------------------------------------------------

std::vector<Complex> series_at_infinity(const RationalFunction& R, int n) {
    if (n <= 0) throw InvalidArgument("series_at_infinity: n must be positive");
    const int dn = R.num.degree();
    const int dd = R.den.degree();
    if (dn > dd) throw DivergentAtInfinity("series_at_infinity: deg(num) > deg(den)");

    // match coefficients of z^(dd-m) in num = den * sum b_j z^-j
    const Complex& lead = R.den.coeff(dd);
    std::vector<Complex> b(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        Complex acc = R.num.coeff(dd - m);
        for (int j = 0; j < m; ++j) acc -= R.den.coeff(dd - m + j) * b[static_cast<std::size_t>(j)];
        b[static_cast<std::size_t>(m)] = acc / lead;
    }
    return b;
}

std::vector<PartialFractionTerm> partial_fractions(const RationalFunction& R) {
    if (R.num.degree() >= R.den.degree())
        throw InvalidArgument("partial_fractions: requires deg(num) < deg(den)");

    std::vector<Complex> poles = poly_roots(R.den);

    // simple-pole separation test; the 10^3 headroom keeps double-root
    // clusters (which split to ~10^(-digits/2) times curvature constants)
    // on the failing side
    Real max_abs(1);
    for (const Complex& r : poles) {
        Real t = abs(r);
        if (t > max_abs) max_abs = t;
    }
    const Real sep = tol_digits(3 + PrecisionContext::current_digits() / 2) * max_abs;
    for (std::size_t i = 0; i < poles.size(); ++i)
        for (std::size_t j = i + 1; j < poles.size(); ++j)
            if (abs(poles[i] - poles[j]) <= sep)
                throw MultiplePole("partial_fractions: poles too close to be simple");

    Polynomial dden = R.den.derivative();
    std::vector<PartialFractionTerm> out;
    out.reserve(poles.size());
    for (const Complex& pole : poles) {
        Complex dv = dden(pole);
        if (dv.is_zero()) throw MultiplePole("partial_fractions: den'(pole) = 0");
        out.push_back({R.num(pole) / dv, pole});
    }
    return out;
}

}  // namespace expsum
