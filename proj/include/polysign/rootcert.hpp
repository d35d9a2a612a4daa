#ifndef POLYSIGN_ROOTCERT_HPP
#define POLYSIGN_ROOTCERT_HPP

#include <cstdint>
#include <vector>

#include "polysign/instance.hpp"
#include "polysign/polynomial.hpp"

namespace polysign {

/// Certifies the count of sign changes (odd-multiplicity interior roots) of a
/// polynomial in an open interval.  Each witness interval contains exactly one
/// odd-multiplicity root and the polynomial takes strictly opposite signs at
/// its rational endpoints.
struct SignChangeCertificate {
    int count = 0;
    Rational interval_lo, interval_hi;   // target open interval
    Rational effective_lo, effective_hi; // after any endpoint nudging
    bool nudged = false;
    std::vector<std::pair<Rational, Rational>> witnesses; // ordered, disjoint
};

/// P / gcd(P, P'), returned as a primitive integer polynomial with positive
/// leading coefficient.  Same distinct roots as P, all simple.
Poly squarefree_part(const Poly& P);

/// Yun decomposition: P = c * prod F_k^k with the F_k squarefree, pairwise
/// coprime, primitive, positive leading coefficient.  Factors with k such
/// that F_k is constant are omitted.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& P);

/// Number of distinct real roots in the open interval (lo, hi), by a Sturm
/// chain with primitive-part reduction.  Endpoints that happen to be roots
/// are nudged inward by (hi-lo)/2^40 (repeatedly halved if needed).
int sturm_count(const Poly& P, const Rational& lo, const Rational& hi);

/// One real root of P, located and refined.
struct IsolatedRoot {
    Rational lo, hi;  // open interval containing exactly this root
    int multiplicity; // multiplicity in P
};

/// Disjoint isolating intervals, refined to width <= refine_width, for all
/// distinct real roots of P strictly inside (lo, hi); ordered left to right.
std::vector<IsolatedRoot> isolate_roots(const Poly& P, const Rational& lo,
                                        const Rational& hi,
                                        const Rational& refine_width);

/// Sign-change certificate for P on the open interval (lo, hi).
SignChangeCertificate count_sign_changes(const Poly& P, const Rational& lo,
                                         const Rational& hi);

/// Largest k with (x-1)^k dividing P, by repeated exact synthetic division.
int multiplicity_at_one(const Poly& P);

struct MultiplicityResult {
    int k = 0;          // best multiplicity found
    SignVector witness; // coefficients in {-1,0,1} achieving it
    bool exact = false; // true when the search space was exhausted
    std::uint64_t nodes = 0;
};

/// Explores nonzero polynomials of degree <= n with coefficients in {-1,0,1}
/// for the largest multiplicity of the zero at 1.  Exhaustive for small n;
/// beyond that a DFS pruned by the linear conditions P^(i)(1) = 0, cut off
/// by the node budget (result then a flagged lower bound).
MultiplicityResult max_multiplicity_search(int n, std::uint64_t budget);

} // namespace polysign

#endif
