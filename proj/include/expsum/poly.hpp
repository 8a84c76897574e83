#pragma once

#include <vector>

#include "expsum/complex.hpp"

namespace expsum {

/// Dense univariate polynomial over Complex, coefficients in ascending
/// degree order. The zero polynomial is the empty coefficient list and has
/// degree -1. The last stored coefficient is never an exact zero.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs);

    static Polynomial zero() { return {}; }
    static Polynomial constant(const Complex& c);
    /// Monic polynomial with the given roots.
    static Polynomial from_roots(const std::vector<Complex>& roots);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Complex>& coeffs() const { return coeffs_; }

    /// Coefficient of z^i; zero outside the stored range.
    const Complex& coeff(int i) const;
    const Complex& leading() const;

    Complex operator()(const Complex& z) const;  // Horner evaluation

    Polynomial derivative() const;
    /// Divide through by the leading coefficient.
    Polynomial monic() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Complex& s);

  private:
    void trim();
    std::vector<Complex> coeffs_;
};

/// Quotient of two polynomials. `den` must not be identically zero.
struct RationalFunction {
    Polynomial num;
    Polynomial den;

    RationalFunction() = default;
    RationalFunction(Polynomial n, Polynomial d);

    /// Same function with a monic denominator.
    RationalFunction normalized() const;

    /// num(z)/den(z); throws PoleAtPoint when den(z) is exactly zero at the
    /// working precision.
    Complex operator()(const Complex& z) const;
};

struct RootOptions {
    int max_iterations = 500;
};

/// All deg(p) roots (with multiplicity) by the Ehrlich-Aberth simultaneous
/// iteration. Initial guesses sit on a circle of Cauchy-bound radius.
/// Throws NonConvergence if the correction tolerance is not met within the
/// iteration cap.
std::vector<Complex> poly_roots(const Polynomial& p, const RootOptions& opts = {});

/// First n coefficients b_0..b_{n-1} of R(z) = sum_j b_j z^-j as z -> inf,
/// by reversed-coefficient truncated power-series division.
/// Throws DivergentAtInfinity when deg(num) > deg(den).
std::vector<Complex> series_at_infinity(const RationalFunction& R, int n);

struct PartialFractionTerm {
    Complex residue;
    Complex pole;
};

/// Residue/pole pairs of R with deg(num) < deg(den) and simple poles only.
/// Poles closer than 10^(-digits/2)*max|root| trip MultiplePole.
std::vector<PartialFractionTerm> partial_fractions(const RationalFunction& R);

}  // namespace expsum
