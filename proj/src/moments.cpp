#include "polysign/moments.hpp"

#include <cmath>

namespace polysign {

GridSpec GridSpec::make(const ProblemInstance& inst, int m) {
    if (m < 1 || m > inst.n())
        throw InvalidGrid("number of moments m must satisfy 1 <= m <= n");
    GridSpec g;
    g.m = m;
    // largest L with L^m <= 2^n, by exact integer bisection
    Integer two_n = pow_integer(2, inst.n());
    Integer lo = 1;
    Integer hi = pow_integer(2, inst.n() / m + 1);
    while (lo < hi) {
        Integer mid = (lo + hi + 1) / 2;
        if (pow_integer(mid, m) <= two_n)
            lo = mid;
        else
            hi = mid - 1;
    }
    g.L = lo;
    g.N = pow_integer(g.L, m);
    g.h = inst.cube_side() / Rational(g.L);
    return g;
}

double GridSpec::loose_gap(const ProblemInstance& inst, int m) {
    return 2.0 * inst.cube_side().get_d() *
           std::exp2(-static_cast<double>(inst.n()) / m);
}

MomentVector MomentVector::operator-(const MomentVector& o) const {
    MomentVector r;
    r.v.resize(v.size());
    for (size_t j = 0; j < v.size(); ++j) r.v[j] = v[j] - o.v[j];
    return r;
}

Rational basis_moment(int i, int j, const Rational& a) {
    if (i < 0 || j < 0) throw InvalidParameter("basis_moment needs i, j >= 0");
    if (a <= 0 || a > Rational(1, 3))
        throw InvalidParameter("basis_moment needs 0 < a <= 1/3");
    // integral of (1-a-ax)^i x^j = sum_t C(i,t) (1-a)^(i-t) (-a)^t / (t+j+1)
    Rational u = Rational(1) - a;
    Rational upow = pow_rational(u, i);
    Rational ratio = -a / u; // u > 0 since a < 1
    Rational term = upow;    // C(i,t) u^(i-t) (-a)^t at t=0
    Rational s(0);
    for (int t = 0; t <= i; ++t) {
        s += term / Rational(t + j + 1);
        if (t < i) {
            term *= ratio;
            term *= Rational(i - t);
            term /= Rational(t + 1);
        }
    }
    return s;
}

MomentTable::MomentTable(const ProblemInstance& inst, int m)
    : inst_(inst), m_(m) {
    // Any positive number of moments is meaningful here; the m <= n
    // restriction only matters for the pigeonhole grid and is enforced by
    // GridSpec::make.
    if (m < 1)
        throw InvalidGrid("number of moments m must be positive");
    const int n = inst.n();
    cols_.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        cols_[i].resize(m);
        for (int j = 0; j < m; ++j)
            cols_[i][j] = inst.weights()[i] * basis_moment(i, j, inst.a());
    }
    denom_ = 1;
    for (const auto& col : cols_)
        for (const auto& q : col)
            mpz_lcm(denom_.get_mpz_t(), denom_.get_mpz_t(),
                    q.get_den().get_mpz_t());
    icols_.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        icols_[i].resize(m);
        for (int j = 0; j < m; ++j) {
            Rational scaled = cols_[i][j] * Rational(denom_);
            // exact by construction of the lcm
            icols_[i][j] = scaled.get_num();
        }
    }
}

MomentVector MomentTable::moments(const SelectionVector& d) const {
    if (static_cast<int>(d.d.size()) != inst_.n() + 1)
        throw LengthMismatch("selection vector length != n+1");
    MomentVector v;
    v.v.assign(m_, Rational(0));
    for (size_t i = 0; i < d.d.size(); ++i)
        if (d.d[i])
            for (int j = 0; j < m_; ++j) v.v[j] += cols_[i][j];
    return v;
}

MomentVector moment_vector(const SelectionVector& d, const ProblemInstance& inst,
                           int m) {
    MomentTable table(inst, m);
    return table.moments(d);
}

CellIndex quantize(const MomentVector& v, const GridSpec& g,
                   const ProblemInstance& inst) {
    CellIndex c;
    c.idx.resize(v.v.size());
    Rational top = inst.cube_side();
    for (size_t j = 0; j < v.v.size(); ++j) {
        const Rational& q = v.v[j];
        if (q < 0 || q > top)
            throw OutOfCube("moment component outside [0, (n+1)M]");
        Integer k = floor_rational(q / g.h);
        if (k > g.L - 1) k = g.L - 1; // top boundary belongs to the last cell
        c.idx[j] = k;
    }
    return c;
}

} // namespace polysign
