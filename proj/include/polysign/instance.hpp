#ifndef POLYSIGN_INSTANCE_HPP
#define POLYSIGN_INSTANCE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "polysign/polynomial.hpp"

namespace polysign {

/// 0/1 coefficient mask selecting a subset polynomial sum_j d_j a_j x^j.
struct SelectionVector {
    std::vector<std::uint8_t> d;

    bool operator==(const SelectionVector& o) const = default;

    /// Bits of t, lowest index least significant.  Requires len <= 64.
    static SelectionVector from_bits(std::uint64_t t, int len);
    std::uint64_t to_bits() const; // requires length <= 64
    std::string to_string() const; // "0110...", index j at position j
    static SelectionVector parse(const std::string& s);
};

/// Coefficient signs b_j in {-1,0,1} with k the least nonzero index
/// (k == -1 for the zero vector).
struct SignVector {
    std::vector<std::int8_t> b;
    int k = -1;

    static SignVector from_coeffs(std::vector<std::int8_t> coeffs);
    bool is_zero() const { return k < 0; }
    std::string to_string() const; // "+-0...", index j at position j
};

/// Weights a_0..a_n in [1,M], the window parameter a, and the window
/// I_a = (1-2a, 1-a).
class ProblemInstance {
public:
    /// Validates 1 <= a_j <= M and 0 < a <= 1/3.  The size condition
    /// M <= exp(n/9)/4 is deliberately *not* enforced here: small test
    /// instances violate it and the collision machinery does not need it.
    /// Callers that rely on the canonical parameter choice must check
    /// frame_holds().
    ProblemInstance(int n, Rational M, std::vector<Rational> weights, Rational a);

    /// All-ones weights.
    static ProblemInstance ones(int n, Rational a);

    int n() const { return n_; }
    const Rational& M() const { return M_; }
    const std::vector<Rational>& weights() const { return weights_; }
    const Rational& a() const { return a_; }

    /// I_a endpoints, exact.
    Rational window_lo() const { return Rational(1) - 2 * a_; }
    Rational window_hi() const { return Rational(1) - a_; }

    /// log M <= log(1/4) + n/9, checked in floating point with 1e-12 slack.
    bool frame_holds() const;

    /// (n+1) * M, the height of the moment cube.
    Rational cube_side() const { return Rational(n_ + 1) * M_; }

private:
    int n_;
    Rational M_;
    std::vector<Rational> weights_;
    Rational a_;
};

/// P(z) = sum_j b_j a_j z^j, exact.
Poly assemble(const ProblemInstance& inst, const SignVector& b);

/// Subset polynomial of a selection mask: sum_j d_j a_j z^j.
Poly assemble(const ProblemInstance& inst, const SelectionVector& d);

/// P(1 - a - a x): transports the window (1-2a, 1-a) onto (0,1)
/// (reversing orientation).  Exact; degree preserved.
Poly affine_pullback(const Poly& P, const Rational& a);

/// b = d1 - d2 and the assembled difference polynomial.
/// Throws IdenticalSelections when d1 == d2.
std::pair<SignVector, Poly> difference(const SelectionVector& d1,
                                       const SelectionVector& d2,
                                       const ProblemInstance& inst);

} // namespace polysign

#endif
