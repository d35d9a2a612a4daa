#ifndef POLYSIGN_MOMENTS_HPP
#define POLYSIGN_MOMENTS_HPP

#include <vector>

#include "polysign/instance.hpp"

namespace polysign {

/// Quantization of the moment cube [0, (n+1)M]^m into N = L^m subcubes of
/// side h = (n+1)M/L, with L the largest integer satisfying L^m <= 2^n.
struct GridSpec {
    int m = 0;
    Integer L;
    Integer N;   // L^m
    Rational h;  // (n+1)M / L

    /// Canonical grid for an instance.  Throws InvalidGrid unless 1 <= m <= n.
    static GridSpec make(const ProblemInstance& inst, int m);

    /// Closed-form gap bound 2(n+1)M 2^(-n/m) dominating h, for reporting.
    static double loose_gap(const ProblemInstance& inst, int m);
};

/// (integral of Ptilde(x) x^j over [0,1])_{j<m}, exact.
struct MomentVector {
    std::vector<Rational> v;

    bool operator==(const MomentVector& o) const = default;
    MomentVector operator-(const MomentVector& o) const;
};

/// Names a subcube: idx_j = floor(v_j / h), each in [0, L).
struct CellIndex {
    std::vector<Integer> idx;
    bool operator==(const CellIndex& o) const = default;
};

/// mu_{i,j} = integral over [0,1] of (1-a-ax)^i x^j dx, exact.
Rational basis_moment(int i, int j, const Rational& a);

/// Memoized kernel table for one (instance, m): column i holds the exact
/// per-index contributions w_i a_i mu_{i,j}, plus the same columns scaled by
/// a common denominator so enumeration can run on integers.
class MomentTable {
public:
    MomentTable(const ProblemInstance& inst, int m);

    int m() const { return m_; }
    const ProblemInstance& instance() const { return inst_; }

    /// Exact moment vector of a selection mask, v_j = sum_i d_i a_i mu_{i,j}.
    MomentVector moments(const SelectionVector& d) const;

    /// Column of exact contributions for index i (length m).
    const std::vector<Rational>& column(int i) const { return cols_[i]; }

    /// Integer-scaled columns: scaled(i)[j] = denom * column(i)[j].
    const std::vector<Integer>& scaled_column(int i) const { return icols_[i]; }
    const Integer& denom() const { return denom_; }

private:
    const ProblemInstance& inst_;
    int m_;
    std::vector<std::vector<Rational>> cols_;
    std::vector<std::vector<Integer>> icols_;
    Integer denom_;
};

/// Exact moment vector without a table (convenience; builds kernels on the fly).
MomentVector moment_vector(const SelectionVector& d, const ProblemInstance& inst,
                           int m);

/// Half-open cells [k h, (k+1) h), top boundary clamped to L-1.
/// Throws OutOfCube if any component is negative or exceeds (n+1)M.
CellIndex quantize(const MomentVector& v, const GridSpec& g,
                   const ProblemInstance& inst);

} // namespace polysign

#endif
