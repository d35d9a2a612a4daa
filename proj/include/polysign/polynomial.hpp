#ifndef POLYSIGN_POLYNOMIAL_HPP
#define POLYSIGN_POLYNOMIAL_HPP

#include <vector>

#include "polysign/rational.hpp"

namespace polysign {

/// Dense univariate polynomial with exact rational coefficients,
/// constant term first.  The zero polynomial stores no coefficients;
/// otherwise the highest stored coefficient is nonzero.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);
    static Poly constant(const Rational& c);
    static Poly monomial(int degree, const Rational& c);

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const std::vector<Rational>& coeffs() const { return c_; }
    // coefficient of x^j; zero beyond the stored range
    const Rational& coeff(int j) const;

    Rational evaluate(const Rational& x) const;
    double evaluate_double(double x) const;

    Poly derivative() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly scaled(const Rational& s) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    /// P(u + v x) by binomial expansion, exact.
    Poly compose_affine(const Rational& u, const Rational& v) const;

    /// Antiderivative with zero constant term.
    Poly antiderivative() const;

    /// Exact integral over [lo, hi].
    Rational integral(const Rational& lo, const Rational& hi) const;

    /// Largest k with (x - r)^k dividing P.  Requires a nonzero polynomial.
    int root_multiplicity(const Rational& r) const;

    /// Quotient by (x - r), discarding the remainder.
    Poly deflate(const Rational& r) const;

    /// Sum of |c_j|.
    Rational coeff_abs_sum() const;

    std::string str() const;

private:
    void trim();
    std::vector<Rational> c_;
};

} // namespace polysign

#endif
