#include "expsum/pipeline.hpp"

#include <algorithm>

#include "expsum/errors.hpp"

namespace expsum {

using boost::multiprecision::abs;
using boost::multiprecision::exp;
using boost::multiprecision::log;

Real ExpSum::max_abs_c() const {
    Real m(0);
    for (const auto& t : terms) {
        Real a = expsum::abs(t.c);
        if (a > m) m = a;
    }
    return m;
}

Real ExpSum::min_re_lambda() const {
    if (terms.empty()) return Real(0);
    Real m = terms.front().lambda.re;
    for (const auto& t : terms)
        if (t.lambda.re < m) m = t.lambda.re;
    return m;
}

namespace {

bool term_less(const ExpSumTerm& a, const ExpSumTerm& b) {
    if (a.lambda.re != b.lambda.re) return a.lambda.re < b.lambda.re;
    return a.lambda.im < b.lambda.im;
}

}  // namespace

bool ExpSum::conjugate_closed() const {
    // terms are sorted by (Re lambda, Im lambda), so the mirror of each
    // complex term can be binary-searched
    for (const auto& t : terms) {
        if (t.lambda.im == 0) {
            if (t.c.im != 0) return false;
            continue;
        }
        ExpSumTerm probe{conj(t.c), conj(t.lambda)};
        auto it = std::lower_bound(terms.begin(), terms.end(), probe, term_less);
        bool found = false;
        for (; it != terms.end() && it->lambda == probe.lambda; ++it) {
            if (it->c == probe.c) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

void ApproxConfig::validate() const {
    if (M < 1) throw InvalidArgument("ApproxConfig: M must be >= 1");
    if (n_inf < 1) throw InvalidArgument("ApproxConfig: n_inf must be >= 1");
    if (p() < 2) throw InvalidArgument("ApproxConfig: p = 2M - n_inf must be >= 2");
    if (!(B > 0)) throw InvalidArgument("ApproxConfig: B must be > 0");
    if (A < 0) throw InvalidArgument("ApproxConfig: A must be >= 0");
    if (digits < PrecisionContext::min_digits)
        throw InvalidArgument("ApproxConfig: digits must be >= 32");
}

ExpSum from_rational(const RationalFunction& R) {
    auto pf = partial_fractions(R);  // propagates MultiplePole

    const Real tol = tol_digits(PrecisionContext::current_digits() / 2);
    std::vector<ExpSumTerm> raw;
    raw.reserve(pf.size());
    for (const auto& term : pf) raw.push_back({term.residue, -term.pole});

    std::vector<ExpSumTerm> out;
    std::vector<bool> used(raw.size(), false);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (used[i]) continue;
        ExpSumTerm& a = raw[i];
        if (abs(a.lambda.im) <= tol * (1 + expsum::abs(a.lambda))) {
            // effectively real: kill the imaginary rounding noise
            out.push_back({Complex(a.c.re), Complex(a.lambda.re)});
            used[i] = true;
            continue;
        }
        // find the best conjugate partner
        std::size_t best = raw.size();
        Real best_dist(0);
        for (std::size_t j = i + 1; j < raw.size(); ++j) {
            if (used[j]) continue;
            Real d = expsum::abs(raw[j].lambda - conj(a.lambda));
            if (best == raw.size() || d < best_dist) {
                best = j;
                best_dist = d;
            }
        }
        if (best == raw.size() || best_dist > tol * (1 + expsum::abs(a.lambda)) ||
            expsum::abs(raw[best].c - conj(a.c)) > tol * (1 + expsum::abs(a.c)))
            throw InvalidArgument("from_rational: residues/poles are not conjugate-closed");
        used[i] = used[best] = true;
        Complex lam = (a.lambda + conj(raw[best].lambda)) * (Real(1) / 2);
        Complex c = (a.c + conj(raw[best].c)) * (Real(1) / 2);
        out.push_back({c, lam});
        out.push_back({conj(c), conj(lam)});
    }
    std::sort(out.begin(), out.end(), term_less);
    return ExpSum{std::move(out)};
}

Real eval_expsum(const ExpSum& s, const Real& x) {
    if (s.conjugate_closed()) {
        // paired fast path: no imaginary residue by construction
        Real acc(0);
        for (const auto& t : s.terms) {
            if (t.lambda.im < 0) continue;
            Complex e = expsum::exp(Complex(-(t.lambda.re * x), -(t.lambda.im * x)));
            Real re_part = t.c.re * e.re - t.c.im * e.im;
            acc += t.lambda.im == 0 ? re_part : 2 * re_part;
        }
        return acc;
    }
    Complex acc;
    Real scale(0);
    for (const auto& t : s.terms) {
        acc += t.c * expsum::exp(Complex(-(t.lambda.re * x), -(t.lambda.im * x)));
        scale += abs(t.c.re) + abs(t.c.im);
    }
    const Real tol = tol_digits(PrecisionContext::current_digits() / 2);
    if (abs(acc.im) > tol * scale)
        throw ImaginaryLeak("eval_expsum: sum is not conjugate-closed (imaginary residue " +
                            acc.im.str(3, std::ios_base::scientific) + ")");
    return acc.re;
}

ExpSum derivative_expsum(const ExpSum& s) {
    ExpSum d;
    d.terms.reserve(s.terms.size());
    for (const auto& t : s.terms) d.terms.push_back({t.c * t.lambda, t.lambda});
    return d;
}

// ---------------------------------------------------------------------------
// error measurement
// ---------------------------------------------------------------------------

namespace {

// golden-section maximization of fn on [a, b] down to width 1e-6 * (b - a)
std::pair<Real, Real> golden_max(const std::function<Real(const Real&)>& fn, Real a, Real b) {
    const Real invphi = (boost::multiprecision::sqrt(Real(5)) - 1) / 2;
    const Real width_tol = (b - a) / 1000000;
    Real c = b - invphi * (b - a);
    Real d = a + invphi * (b - a);
    Real fc = fn(c), fd = fn(d);
    while (b - a > width_tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = fn(d);
        }
    }
    return fc > fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

Real adaptive_simpson(const std::function<Real(const Real&)>& fn, const Real& a, const Real& b,
                      Real fa, Real fm, Real fb, const Real& whole, const Real& tol, int depth) {
    Real m = (a + b) / 2;
    Real lm = (a + m) / 2, rm = (m + b) / 2;
    Real flm = fn(lm), frm = fn(rm);
    Real left = (m - a) / 6 * (fa + 4 * flm + fm);
    Real right = (b - m) / 6 * (fm + 4 * frm + fb);
    Real delta = left + right - whole;
    if (depth <= 0 || abs(delta) <= 15 * tol) return left + right + delta / 15;
    return adaptive_simpson(fn, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson(fn, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

Real integrate_cell(const std::function<Real(const Real&)>& fn, const Real& a, const Real& b,
                    const Real& fa, const Real& fb, const Real& tol, int depth) {
    Real m = (a + b) / 2;
    Real fm = fn(m);
    Real whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return adaptive_simpson(fn, a, b, fa, fm, fb, whole, tol, depth);
}

}  // namespace

ErrorReport error_metrics(const TargetSpec& t, const ExpSum& s, const Real& x_max, int n_grid) {
    if (!(x_max > 0)) throw InvalidArgument("error_metrics: x_max must be > 0");
    if (n_grid < 100) throw InvalidArgument("error_metrics: n_grid must be >= 100");

    ErrorReport rep;
    rep.max_abs_c = s.max_abs_c();
    rep.min_re_lambda = s.min_re_lambda();
    rep.unstable_tail = !s.terms.empty() && !(rep.min_re_lambda > 0);

    // composite grid: uniform on [0, x_max], plus a log-spaced cluster near 0
    // for antiderivative-transformed targets
    std::vector<Real> xs;
    xs.reserve(static_cast<std::size_t>(n_grid) + static_cast<std::size_t>(n_grid) / 2 + 8);
    for (int i = 0; i <= n_grid; ++i) xs.push_back(x_max * i / n_grid);
    if (t.post_transform == PostTransform::NegateDerivative) {
        const Real lo = pow10(-8);
        const Real hi = x_max < 1 ? x_max : Real(1);
        const int m = n_grid / 2;
        Real ratio = exp(log(hi / lo) / m);
        Real x = lo;
        for (int i = 0; i <= m; ++i) {
            xs.push_back(x);
            x *= ratio;
        }
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    }

    auto user = [&](const Real& x) { return t.eval_user(x); };
    auto err_signed = [&](const Real& x) { return user(x) - eval_expsum(s, x); };
    auto err_abs = [&](const Real& x) { return abs(err_signed(x)); };

    std::vector<Real> e(xs.size());
    rep.grid.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        e[i] = err_signed(xs[i]);
        rep.grid.emplace_back(xs[i], e[i]);
    }

    // L_inf: grid scan plus golden-section refinement around local maxima
    Real linf(0), linf_loc(0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Real a = abs(e[i]);
        if (a > linf) {
            linf = a;
            linf_loc = xs[i];
        }
        bool is_local_max = (i == 0 || a >= abs(e[i - 1])) &&
                            (i + 1 == xs.size() || a >= abs(e[i + 1]));
        if (is_local_max && a > 0) {
            Real lo = i == 0 ? xs[0] : xs[i - 1];
            Real hi = i + 1 == xs.size() ? xs[i] : xs[i + 1];
            if (hi > lo) {
                auto [where, val] = golden_max(err_abs, lo, hi);
                if (val > linf) {
                    linf = val;
                    linf_loc = where;
                }
            }
        }
    }
    rep.linf = linf;
    rep.linf_location = linf_loc;

    // L1 on the grid cells, adaptive Simpson per cell; the tolerance floor
    // keeps near-zero error curves from recursing to full depth
    Real coarse(0);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        coarse += (abs(e[i]) + abs(e[i + 1])) / 2 * (xs[i + 1] - xs[i]);
    Real cell_tol = coarse * pow10(-6) / static_cast<long>(xs.size());
    {
        Real floor = tol_digits(0) * (1 + x_max);
        if (cell_tol < floor) cell_tol = floor;
    }
    Real l1(0);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        l1 += integrate_cell(err_abs, xs[i], xs[i + 1], abs(e[i]), abs(e[i + 1]), cell_tol, 10);

    // tail beyond x_max: integrate |e| numerically out to where the
    // pointwise bound sum |c_j| e^{-Re(lambda_j) x} is negligible, then add
    // the analytic remainder sum |c_j| e^{-Re lambda_j xf}/Re lambda_j and
    // the |f| tail
    if (!rep.unstable_tail && !s.terms.empty()) {
        Real sum_abs_c(0);
        for (const auto& term : s.terms) sum_abs_c += expsum::abs(term.c);
        const Real minre = rep.min_re_lambda;
        Real x_far = x_max;
        if (sum_abs_c > 0) {
            Real target = log(sum_abs_c) + Real(40) * log(Real(10));
            x_far = target / minre;
            if (x_far < x_max) x_far = x_max;
            if (x_far > x_max + 2000) x_far = x_max + 2000;
        }
        if (x_far > x_max) {
            const int m = 200;
            Real ratio = exp(log(x_far / x_max) / m);
            Real a = x_max, fa = err_abs(a);
            for (int i = 0; i < m; ++i) {
                Real b = a * ratio;
                Real fb = err_abs(b);
                if (fa > rep.linf) {  // keep the sup honest out here too
                    rep.linf = fa;
                    rep.linf_location = a;
                }
                l1 += integrate_cell(err_abs, a, b, fa, fb, cell_tol, 6);
                a = b;
                fa = fb;
            }
        }
        Real analytic(0);
        for (const auto& term : s.terms)
            analytic += expsum::abs(term.c) * exp(-(term.lambda.re * x_far)) / term.lambda.re;
        l1 += analytic;
        if (t.user_l1_tail) l1 += t.user_l1_tail(x_far);
    } else if (t.user_l1_tail) {
        l1 += t.user_l1_tail(x_max);
    }
    rep.l1 = l1;
    return rep;
}

// ---------------------------------------------------------------------------
// the pipeline
// ---------------------------------------------------------------------------

std::pair<ExpSum, ErrorReport> approximate(const TargetSpec& t, const ApproxConfig& cfg) {
    cfg.validate();
    PrecisionContext ctx(cfg.digits);
    const int p = cfg.p();

    // step (iii): interpolation points
    std::vector<Complex> points = build_points(p, cfg.A, cfg.B);

    // step (ii): Taylor coefficients at 0+
    std::vector<Real> xi;
    try {
        xi = taylor_coeffs(t, cfg.n_inf);
    } catch (const Error& e) {
        throw PipelineError("step ii", e.what());
    }
    if (xi[0] == 0)
        throw PipelineError("step ii", "xi_0 = 0: target needs an antiderivative transform");

    // Laplace values on the lower half; mirror by conjugation for the rest
    const int half = (p + 1) / 2;
    std::vector<Complex> zs_low(points.begin(), points.begin() + half);
    std::vector<Complex> low;
    try {
        low = eval_many(t.laplace, zs_low, cfg.jobs);
    } catch (const Error& e) {
        throw PipelineError("step iv (Laplace values)", e.what());
    }
    std::vector<Complex> values(static_cast<std::size_t>(p));
    for (int j = 0; j < half; ++j) {
        values[static_cast<std::size_t>(j)] = low[static_cast<std::size_t>(j)];
        values[static_cast<std::size_t>(p - 1 - j)] = conj(low[static_cast<std::size_t>(j)]);
    }

    PadeProblem problem;
    problem.points = std::move(points);
    problem.values = std::move(values);
    problem.xi = xi;
    problem.p = p;
    problem.n_inf = cfg.n_inf;
    problem.M = cfg.M;

    SolveInfo info;
    RationalFunction R;
    try {
        R = solve(problem, info);
    } catch (const Error& e) {
        throw PipelineError("step iv", e.what());
    }

    ExpSum s;
    try {
        s = from_rational(R);
    } catch (const Error& e) {
        throw PipelineError("step v", e.what());
    }
    if (t.post_transform == PostTransform::NegateDerivative) s = derivative_expsum(s);

    ErrorReport rep;
    try {
        rep = error_metrics(t, s, t.xmax_default, 2000);
    } catch (const Error& e) {
        throw PipelineError("step vi", e.what());
    }
    rep.interp_residual = info.interp_residual;
    return {std::move(s), std::move(rep)};
}

SweepResult sweep(const TargetSpec& t, int M, int n_inf, const std::vector<Real>& A_grid,
                  const std::vector<Real>& B_grid, const Objective& objective, int digits,
                  int jobs) {
    if (A_grid.empty() || B_grid.empty()) throw InvalidArgument("sweep: empty parameter grid");

    SweepResult result;
    bool have_winner = false;
    Real best_score(0);

    for (const Real& A : A_grid) {
        for (const Real& B : B_grid) {
            SweepRow row;
            row.A = A;
            row.B = B;
            ApproxConfig cfg;
            cfg.M = M;
            cfg.n_inf = n_inf;
            cfg.A = A;
            cfg.B = B;
            cfg.digits = digits;
            cfg.jobs = jobs;
            try {
                auto [sum, rep] = approximate(t, cfg);
                row.ok = true;
                row.status = "ok";
                row.report = rep;

                bool feasible = true;
                Real score;
                switch (objective.kind) {
                    case Objective::L1: score = rep.l1; break;
                    case Objective::Linf: score = rep.linf; break;
                    case Objective::MaxCoefConstrained:
                        score = rep.l1;
                        feasible = rep.max_abs_c < objective.max_coef_bound;
                        if (!feasible) row.status = "ok (max|c| out of bound)";
                        break;
                }
                if (feasible && (!have_winner || score < best_score)) {
                    have_winner = true;
                    best_score = score;
                    result.config = cfg;
                    result.report = rep;
                    result.sum = sum;
                }
            } catch (const Error& e) {
                row.ok = false;
                row.status = e.what();
            }
            result.rows.push_back(std::move(row));
        }
    }
    if (!have_winner) throw AllFailed("sweep: no grid point satisfied the objective");
    return result;
}

CdfResult cdf_from_laplace(const ExpSum& s, const std::function<Complex(const Complex&)>& F_X,
                           const Real& u) {
    if (!(u > 0)) throw InvalidArgument("cdf_from_laplace: u must be > 0");
    Complex acc;
    for (const auto& t : s.terms) acc += t.c * F_X(t.lambda / Complex(u));
    CdfResult r;
    r.raw = acc.re;
    r.value = r.raw;
    if (r.value < 0) r.value = Real(0);
    if (r.value > 1) r.value = Real(1);
    return r;
}

}  // namespace expsum
