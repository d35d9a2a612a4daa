#ifndef POLYSIGN_TEST_ORACLES_HPP
#define POLYSIGN_TEST_ORACLES_HPP

// Independent reference implementations for the test suite.  Deliberately
// different algorithms from the library under test: Simpson instead of
// Gauss-Legendre panels, a dense sign grid with bisection instead of Sturm
// chains, a straight first-collision map instead of the incremental
// enumerations, and a long-double scan for the counting bound.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "polysign/collider.hpp"
#include "polysign/moments.hpp"

namespace oracle {

using polysign::Integer;
using polysign::Poly;
using polysign::ProblemInstance;
using polysign::Rational;
using polysign::SelectionVector;

// ---------------------------------------------------------------- Simpson

inline double simpson_rec(const std::function<double(double)>& f, double a,
                          double b, double fa, double fm, double fb,
                          double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15 * tol)
        return left + right + (left + right - whole) / 15;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double tol,
                               int depth = 44) {
    const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// ------------------------------------------------- dense-grid sign counter

inline std::vector<double> dcoeffs(const Poly& P) {
    std::vector<double> c;
    c.reserve(P.coeffs().size());
    for (const Rational& q : P.coeffs()) c.push_back(polysign::to_double(q));
    return c;
}

/// Sign of P at a rational point: double Horner with a cancellation guard,
/// exact rational evaluation when the guard trips.
inline int sign_at(const Poly& P, const std::vector<double>& c,
                   const Rational& x) {
    const double xd = polysign::to_double(x);
    const double ax = std::fabs(xd);
    double v = 0, vb = 0;
    for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j) {
        v = v * xd + c[j];
        vb = vb * ax + std::fabs(c[j]);
    }
    if (std::isfinite(v) && std::fabs(v) > 1e-9 * vb) return v > 0 ? 1 : -1;
    return mpq_sgn(Rational(P.evaluate(x)).get_mpq_t());
}

/// Strict sign changes of P on the open interval (lo, hi): sample K strictly
/// interior points, count flips over the nonzero-sign subsequence, and
/// confirm each flip bracket by exact bisection (40 halvings, re-checking
/// that opposite signs persist).
inline int grid_sign_changes(const Poly& P, const Rational& lo,
                             const Rational& hi, int K = 4096) {
    const std::vector<double> c = dcoeffs(P);
    int count = 0;
    int last = 0;
    Rational last_x;
    for (int i = 0; i < K; ++i) {
        Rational x = lo + (hi - lo) * (2 * i + 1) / (2 * K);
        const int s = sign_at(P, c, x);
        if (s == 0) continue;
        if (last != 0 && s != last) {
            Rational u = last_x, v = x;
            int su = last;
            for (int step = 0; step < 40; ++step) {
                Rational mid = (u + v) / 2;
                const int sm = sign_at(P, c, mid);
                if (sm == 0) break;
                if (sm == su) u = mid;
                else v = mid;
            }
            ++count;
        }
        last = s;
        last_x = x;
    }
    return count;
}

// ---------------------------------------------- first-collision brute force

/// Smallest (t2, then t1) pair of selection codes landing in one grid cell,
/// by plain enumeration with exact cell indices.
inline std::pair<std::uint64_t, std::uint64_t> first_collision(
    const ProblemInstance& inst, int m) {
    const polysign::GridSpec g = polysign::GridSpec::make(inst, m);
    const int len = inst.n() + 1;
    std::map<std::vector<Integer>, std::uint64_t> seen;
    for (std::uint64_t t = 0;; ++t) {
        SelectionVector d = SelectionVector::from_bits(t, len);
        polysign::MomentVector v = polysign::moment_vector(d, inst, m);
        polysign::CellIndex cell = polysign::quantize(v, g, inst);
        auto [it, fresh] = seen.emplace(cell.idx, t);
        if (!fresh) return {it->second, t};
    }
}

// -------------------------------------------------- counting bound (scan)

/// Long-double scan of the explicit counting inequality; mirrors only the
/// printed formula, none of the library code.
inline int guaranteed_m_scan(long long n, long double M) {
    const long double pi_l = 3.14159265358979323846264338327950288L;
    const long double slope =
        9.0L * pi_l / std::sqrt(2.0L) + 4.0L + 1.0L / 3.0L;
    const long double l4m = std::log(4.0L * M);
    const long double tail =
        std::log(2.0L * static_cast<long double>(n) + 2.0L) +
        slope * std::sqrt(l4m * static_cast<long double>(n));
    const long double ln2 = std::log(2.0L);
    int best = 0;
    for (long long m = 1; m <= n; ++m) {
        const long double lhs = static_cast<long double>(n) / m * ln2;
        const long double rhs = (ln2 + 1.0L) * m + tail;
        if (lhs > rhs)
            best = static_cast<int>(m);
        else
            break;
    }
    return best;
}

} // namespace oracle

#endif
