#include "expsum/padecf.hpp"

#include "expsum/errors.hpp"

namespace expsum {

void PadeProblem::validate() const {
    if (p < 2) throw InvalidArgument("PadeProblem: p must be >= 2");
    if (n_inf < 1) throw InvalidArgument("PadeProblem: n_inf must be >= 1");
    if (M < 1 || p + n_inf != 2 * M)
        throw InvalidArgument("PadeProblem: p + n_inf must equal 2M with M >= 1");
    if (points.size() != static_cast<std::size_t>(p) ||
        values.size() != static_cast<std::size_t>(p) ||
        xi.size() != static_cast<std::size_t>(n_inf))
        throw InvalidArgument("PadeProblem: data sizes do not match p / n_inf");

    const Real tol = tol_digits(PrecisionContext::current_digits() / 2);
    for (int j = 0; j < p; ++j) {
        const Complex& z = points[static_cast<std::size_t>(j)];
        if (z.re < 0) throw InvalidArgument("PadeProblem: Re(z_j) must be >= 0");
        const Complex& zm = points[static_cast<std::size_t>(p - 1 - j)];
        const Complex& a = values[static_cast<std::size_t>(j)];
        const Complex& am = values[static_cast<std::size_t>(p - 1 - j)];
        if (abs(zm - conj(z)) > tol * (1 + abs(z)) || abs(am - conj(a)) > tol * (1 + abs(a)))
            throw InvalidArgument("PadeProblem: data is not conjugate-symmetric");
    }
}

std::vector<Complex> build_points(int p, const Real& A, const Real& B) {
    if (p < 2) throw InvalidArgument("build_points: p must be >= 2");
    if (!(B > 0)) throw InvalidArgument("build_points: B must be > 0");
    if (A < 0) throw InvalidArgument("build_points: A must be >= 0");

    std::vector<Complex> z(static_cast<std::size_t>(p));
    // lower half (t <= 1/2): z_j = (1 - 2t_j)(A - Bi); mirror the rest so the
    // symmetry z_{p+1-j} = conj(z_j) is exact
    for (int j = 1; 2 * (j - 1) <= p - 1; ++j) {
        Real t = Real(j - 1) / (p - 1);
        Real s = 1 - 2 * t;
        z[static_cast<std::size_t>(j - 1)] = Complex(s * A, -(s * B));
    }
    for (int j = p; 2 * (j - 1) > p - 1; --j)
        z[static_cast<std::size_t>(j - 1)] = conj(z[static_cast<std::size_t>(p - j)]);
    return z;
}

std::vector<Complex> series_descend_case1(const std::vector<Complex>& b, const Complex& z1,
                                          const Complex& a1, int k) {
    if (k < 1 || b.size() < static_cast<std::size_t>(k) + 1)
        throw InvalidArgument("series_descend_case1: need k+1 input coefficients");
    if (!b[0].is_zero())
        throw InvalidArgument("series_descend_case1: expected b[0] = 0");
    if (b[1].is_zero())
        throw DegenerateSeries("series descent: leading coefficients both vanish");

    std::vector<Complex> out(static_cast<std::size_t>(k));
    out[0] = a1 / b[1];
    for (int n = 1; n < k; ++n) {
        Complex acc = b[static_cast<std::size_t>(n)];
        for (int i = 0; i <= n - 1; ++i) {
            acc += out[static_cast<std::size_t>(i)] *
                   (b[static_cast<std::size_t>(n + 1 - i)] - z1 * b[static_cast<std::size_t>(n - i)]);
        }
        out[static_cast<std::size_t>(n)] = -(acc / b[1]);
    }
    return out;
}

std::vector<Complex> series_descend_case2(const std::vector<Complex>& b, const Complex& z1,
                                          const Complex& a1, int k) {
    if (k < 1 || b.size() < static_cast<std::size_t>(k))
        throw InvalidArgument("series_descend_case2: need k input coefficients");
    if (b[0].is_zero())
        throw InvalidArgument("series_descend_case2: expected b[0] != 0");

    std::vector<Complex> out(static_cast<std::size_t>(k) + 1);
    out[0] = Complex(0);
    out[1] = a1 / b[0] - Complex(1);
    for (int n = 1; n < k; ++n) {
        Complex acc = b[static_cast<std::size_t>(n)];
        for (int i = 1; i <= n; ++i) {
            acc += out[static_cast<std::size_t>(i)] *
                   (b[static_cast<std::size_t>(n + 1 - i)] - z1 * b[static_cast<std::size_t>(n - i)]);
        }
        out[static_cast<std::size_t>(n) + 1] = -(acc / b[0]);
    }
    return out;
}

std::vector<ValuePair> value_descend(const std::vector<ValuePair>& values, const Complex& z_l,
                                     const Complex& a_l) {
    std::vector<ValuePair> out;
    out.reserve(values.size());
    for (const ValuePair& v : values) {
        if (v.a.is_zero())
            throw ZeroInterpolant("value descent: interpolant vanishes at a remaining point");
        out.push_back({v.z, (a_l / v.a - Complex(1)) / (v.z - z_l)});
    }
    return out;
}

std::pair<Complex, std::vector<Complex>> terminal_cf(const std::vector<Complex>& gamma, int K) {
    if (K < 0 || K % 2 != 0) throw InvalidArgument("terminal_cf: K must be even and >= 0");
    if (gamma.size() < static_cast<std::size_t>(K) + 1)
        throw InvalidArgument("terminal_cf: need K+1 series coefficients");

    Complex constant = gamma[0];
    std::vector<Complex> d;
    d.reserve(static_cast<std::size_t>(K));
    if (K == 0) return {constant, d};

    // tail = coefficients of R_l - const in z^-1, z^-2, ...
    std::vector<Complex> tail(gamma.begin() + 1, gamma.begin() + 1 + K);
    for (int m = 1; m <= K; ++m) {
        const Complex head = tail[0];
        if (head.is_zero())
            throw DegenerateSeries("terminal continued fraction: leading tail coefficient vanished");
        d.push_back(head);
        if (m == K) break;
        // next function is head / (tail as a power series in 1/z); its
        // constant term is one; keep only the shrinking tail
        std::size_t len = tail.size();
        std::vector<Complex> recip(len);
        recip[0] = Complex(1) / head;
        for (std::size_t n = 1; n < len; ++n) {
            Complex acc;
            for (std::size_t i = 1; i <= n; ++i) acc += tail[i] * recip[n - i];
            recip[n] = -(acc / head);
        }
        std::vector<Complex> next(len - 1);
        for (std::size_t n = 1; n < len; ++n) next[n - 1] = head * recip[n];
        tail = std::move(next);
    }
    return {constant, d};
}

RationalFunction assemble(const ContinuedFraction& cf) {
    const int K = static_cast<int>(cf.terminal_d.size());

    // terminal part: R_p = c + d1/z / (1 + d2/z / (1 + ... (1 + dK/z)))
    const Polynomial z01({Complex(0), Complex(1)});  // the polynomial z
    RationalFunction rp;
    if (K == 0) {
        rp = RationalFunction(Polynomial::constant(cf.terminal_constant),
                              Polynomial::constant(Complex(1)));
    } else {
        // T_K = 1 + d_K/z, then T_m = 1 + d_m/(z T_{m+1}) down to m = 1
        Polynomial tn = z01 + Polynomial::constant(cf.terminal_d.back());
        Polynomial td = z01;
        for (int m = K - 1; m >= 1; --m) {
            Polynomial zn = z01 * tn;
            tn = zn + td * cf.terminal_d[static_cast<std::size_t>(m - 1)];
            td = std::move(zn);
        }
        // each inner step introduced an exact common factor z; strip them
        {
            std::vector<Complex> nc = tn.coeffs(), dc = td.coeffs();
            std::size_t s = 0;
            while (s < nc.size() && s < dc.size() && nc[s].is_zero() && dc[s].is_zero()) ++s;
            nc.erase(nc.begin(), nc.begin() + static_cast<long>(s));
            dc.erase(dc.begin(), dc.begin() + static_cast<long>(s));
            tn = Polynomial(std::move(nc));
            td = Polynomial(std::move(dc));
        }
        // R_p = c - 1 + T_1
        rp = RationalFunction(tn + td * (cf.terminal_constant - Complex(1)), td);
    }

    // finite stages backwards: R_{j-1} = v_j / (1 + (z - z_j) R_j), where
    // v_1 = head, v_{j+1} = stages[j-1].a, and z_j comes from stages / z_terminal
    std::vector<Complex> vs{cf.head};
    std::vector<Complex> zs;
    for (const ValuePair& s : cf.stages) {
        vs.push_back(s.a);
        zs.push_back(s.z);
    }
    zs.push_back(cf.z_terminal);

    RationalFunction r = rp;
    for (std::size_t j = vs.size(); j-- > 0;) {
        Polynomial shift({-zs[j], Complex(1)});  // z - z_j
        Polynomial den = r.den + shift * r.num;
        Polynomial num = r.den * vs[j];
        r = RationalFunction(std::move(num), std::move(den));
    }
    return r.normalized();
}

namespace {

RationalFunction solve_impl(const PadeProblem& problem, SolveInfo* info) {
    problem.validate();
    if (problem.xi[0] == 0)
        throw InvalidArgument("solve: requires xi_0 != 0 (use an antiderivative transform)");

    const int p = problem.p;
    const int n_inf = problem.n_inf;

    DescentState st;
    st.level = 0;
    st.gamma.assign(static_cast<std::size_t>(n_inf) + 1, Complex(0));
    for (int j = 0; j < n_inf; ++j)
        st.gamma[static_cast<std::size_t>(j) + 1] = Complex(problem.xi[static_cast<std::size_t>(j)]);
    st.pending.resize(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j)
        st.pending[static_cast<std::size_t>(j)] = {problem.points[static_cast<std::size_t>(j)],
                                                   problem.values[static_cast<std::size_t>(j)]};

    // run the p descent levels, recording the consumed (z, value) pairs;
    // consumed[l] = (z_{l+1}, a_{l+1}^{(l)}) is exactly the l-th fraction datum
    std::vector<ValuePair> consumed;
    consumed.reserve(static_cast<std::size_t>(p));

    for (int level = 0; level < p; ++level) {
        const Complex z_l = st.pending[0].z;
        const Complex a_l = st.pending[0].a;
        if (a_l.is_zero())
            throw ZeroInterpolant("solve: interpolation value vanished at level " +
                                  std::to_string(level));
        if (info) info->gamma0_zero.push_back(st.gamma[0].is_zero());
        consumed.push_back({z_l, a_l});

        std::vector<ValuePair> rest(st.pending.begin() + 1, st.pending.end());
        st.pending = rest.empty() ? std::vector<ValuePair>{} : value_descend(rest, z_l, a_l);

        const int have = static_cast<int>(st.gamma.size());
        if (level % 2 == 0) {
            if (!st.gamma[0].is_zero())
                throw DegenerateSeries("solve: expected vanishing series head at even level");
            st.gamma = series_descend_case1(st.gamma, z_l, a_l, have - 1);
        } else {
            if (st.gamma[0].is_zero())
                throw DegenerateSeries("solve: expected nonzero series head at odd level");
            st.gamma = series_descend_case2(st.gamma, z_l, a_l, have);
        }
        st.level = level + 1;
    }

    ContinuedFraction cf;
    cf.head = consumed[0].a;
    for (int j = 0; j + 1 < p; ++j)
        cf.stages.push_back({consumed[static_cast<std::size_t>(j)].z,
                             consumed[static_cast<std::size_t>(j) + 1].a});
    cf.z_terminal = consumed[static_cast<std::size_t>(p) - 1].z;

    const int K = (p % 2 == 0) ? n_inf : n_inf - 1;
    if (info) info->K = K;
    auto [constant, d] = terminal_cf(st.gamma, K);
    cf.terminal_constant = constant;
    cf.terminal_d = std::move(d);

    RationalFunction R = assemble(cf);

    // verification: interpolation conditions and expansion at infinity
    const Real tol = tol_digits(PrecisionContext::current_digits() / 2);
    Real interp_max(0), series_max(0);
    for (int j = 0; j < p; ++j) {
        Complex rv;
        try {
            rv = R(problem.points[static_cast<std::size_t>(j)]);
        } catch (const PoleAtPoint&) {
            throw VerificationFailed("solve: assembled function has a pole at an interpolation point");
        }
        const Complex& aj = problem.values[static_cast<std::size_t>(j)];
        Real resid = abs(rv - aj) / (1 + abs(aj));
        if (resid > interp_max) interp_max = resid;
    }
    std::vector<Complex> b = series_at_infinity(R, n_inf + 1);
    for (int j = 0; j <= n_inf; ++j) {
        Complex expected = (j == 0) ? Complex(0) : Complex(problem.xi[static_cast<std::size_t>(j) - 1]);
        Real resid = abs(b[static_cast<std::size_t>(j)] - expected) / (1 + abs(expected));
        if (resid > series_max) series_max = resid;
    }
    if (info) {
        info->interp_residual = interp_max;
        info->series_residual = series_max;
    }
    if (interp_max > tol)
        throw VerificationFailed("solve: interpolation conditions violated (residual " +
                                 interp_max.str(3, std::ios_base::scientific) + ")");
    if (series_max > tol)
        throw VerificationFailed("solve: expansion at infinity violated (residual " +
                                 series_max.str(3, std::ios_base::scientific) + ")");
    return R;
}

}  // namespace

RationalFunction solve(const PadeProblem& problem) { return solve_impl(problem, nullptr); }

RationalFunction solve(const PadeProblem& problem, SolveInfo& info) {
    info = SolveInfo{};
    return solve_impl(problem, &info);
}

}  // namespace expsum
