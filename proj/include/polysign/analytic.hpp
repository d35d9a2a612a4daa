#ifndef POLYSIGN_ANALYTIC_HPP
#define POLYSIGN_ANALYTIC_HPP

#include <string>
#include <vector>

#include "polysign/collider.hpp"
#include "polysign/instance.hpp"
#include "polysign/polynomial.hpp"
#include "polysign/rootcert.hpp"

namespace polysign {

/// The window-norm constant and the aggregated slope of the counting bound.
struct Constants {
    double c1;          // default 9 pi / sqrt(2)
    double chain_slope; // c1 + 4 + 1/3

    Constants();
    explicit Constants(double c1_override);
};

/// Numeric integral value with a conservative absolute error estimate and
/// the number of quadrature panels that produced it.
struct Estimate {
    double value = 0;
    double error = 0;
    long panels = 0;
};

/// One checked inequality.  holds <=> lhs <= rhs + tolerance, where the
/// tolerance combines quadrature error estimates with small fixed slack.
struct BoundReport {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    bool holds = false;
    double margin = 0; // rhs - lhs
    long subdivisions = 0;
    double tolerance = 0;
};

/// Monic product over the sign-change locations (witness midpoints mapped
/// onto (0,1)); the empty product is the constant 1.
struct SeparatorPolynomial {
    std::vector<Rational> roots;
    Poly poly;
};

/// Builds the separator from a sign-change certificate taken over the
/// window (1-2a, 1-a), mapping each witness midpoint u to (1-a-u)/a.
SeparatorPolynomial make_separator(const SignChangeCertificate& sc,
                                   const Rational& a);

/// Integral of log|P| over [lo, hi].  Real roots are isolated first; a
/// narrow window around each is integrated in closed form against the local
/// model mu log|x-r|, and the smooth remainder goes to adaptive quadrature.
Estimate log_abs_integral(const Poly& P, const Rational& lo, const Rational& hi,
                          double abs_tol = 1e-9);

/// Integral of log^- |P| = max(0, -log|P|) over (lo, hi): the interval is
/// split where |P| crosses 1 and only the |P| <= 1 pieces contribute.
Estimate log_minus_integral(const Poly& P, const Rational& lo,
                            const Rational& hi);

/// Geometric mean exp((1/(hi-lo)) integral of log|P|).
Estimate l0_norm(const Poly& P, const Rational& lo, const Rational& hi);

/// (1/(hi-lo)) integral of |P|, as the exact sum of |antiderivative
/// differences| between isolated-root midpoints.  The only inexactness is
/// the placement of the split points, within 2^-44 of the true roots.
Rational l1_norm_rational(const Poly& P, const Rational& lo, const Rational& hi);
double l1_norm(const Poly& P, const Rational& lo, const Rational& hi);

/// Plain integral of P, exact.
Rational exact_signed_integral(const Poly& P, const Rational& lo,
                               const Rational& hi);

/// Coefficient-shape validators and bound checkers for the three norm
/// inequalities on the window I_a = (1-2a, 1-a):
///   one: integral of log^-|P| over I_a is at most c1 log(4M);
///   two: the geometric mean of P on I_a is at least exp(-c1 log(4M)/a);
///   three: as two, weakened by (1-2a)^k when the k low coefficients vanish.
/// P must decompose as sum b_j a_j x^j with b_j in {-1,0,1}, a_j in [1,M],
/// and a nonzero coefficient at index 0 (respectively at index k).
BoundReport check_logminus_cap(const Poly& P, const Rational& a,
                               const Rational& M,
                               const Constants& consts = Constants());
BoundReport check_geomean_floor(const Poly& P, const Rational& a,
                                const Rational& M,
                                const Constants& consts = Constants());
BoundReport check_shifted_floor(const Poly& P, const Rational& a,
                                const Rational& M, int k,
                                const Constants& consts = Constants());

/// Largest multiple of 2^-16 that is positive and at most
/// min(1/3, sqrt(log(4M)/n)).  Requires the size condition log(4M) <= n/9.
Rational choose_a(int n, const Rational& M);

/// Largest m >= 1 with (n/m) log2 > (log2+1)m + log(2n+2)
/// + chain_slope sqrt(log(4M) n); 0 when no m qualifies.
int guaranteed_m(int n, const Rational& M,
                 const Constants& consts = Constants());

/// Every link of the certified counting argument, checked on one concrete
/// construction.  Throws ChainViolation naming the first failing link.
struct ChainReport {
    std::vector<BoundReport> links;
    int sign_changes = 0;         // s, the certified count
    double closed_form_lower = 0; // exp(-(c1+4) sqrt(log(4M) n)), the floor's
                                  // closed form at the canonical parameter
    bool all_hold = false;
};

ChainReport proof_chain_check(const Poly& P, const ProblemInstance& inst, int m,
                              const CollisionCertificate& cert,
                              const SignChangeCertificate& sc,
                              const Constants& consts = Constants());

} // namespace polysign

#endif
