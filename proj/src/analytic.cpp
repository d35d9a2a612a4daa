#include "polysign/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "polysign/errors.hpp"
#include "polysign/moments.hpp"

namespace polysign {
namespace {

int sign_of(const Rational& x) { return mpq_sgn(x.get_mpq_t()); }

/// log|q| for nonzero rational q, stable for values far outside double range.
double log_abs_rational(const Rational& q) {
    signed long en = 0, ed = 0;
    double dn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
    double dd = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
    return std::log(std::fabs(dn)) - std::log(dd) +
           std::numbers::ln2 * static_cast<double>(en - ed);
}

/// F with F' = log|t|, F(0) = 0.
double lint(double t) {
    return t == 0.0 ? 0.0 : t * std::log(std::fabs(t)) - t;
}

// 15-point Gauss-Legendre rule on [-1,1] (node 0 plus symmetric pairs).
constexpr double kNode[8] = {
    0.0,
    0.2011940939974345, 0.3941513470775634, 0.5709721726085388,
    0.7244177313601701, 0.8482065834104272, 0.9372733924007060,
    0.9879925180204854};
constexpr double kWeight[8] = {
    0.2025782419255613,
    0.1984314853271116, 0.1861610000155622, 0.1662692058169939,
    0.1395706779261543, 0.1071592204671719, 0.0703660474881081,
    0.0307532419961173};

/// log|P(x)| with a double Horner fast path; exact rational evaluation when
/// cancellation eats the float value.
struct LogAbsFn {
    const Poly& P;
    std::vector<double> dc;

    explicit LogAbsFn(const Poly& p) : P(p) {
        dc.reserve(p.coeffs().size());
        for (const Rational& c : p.coeffs()) dc.push_back(to_double(c));
    }

    double operator()(double x) const {
        double v = 0, vb = 0;
        const double ax = std::fabs(x);
        for (int j = static_cast<int>(dc.size()) - 1; j >= 0; --j) {
            v = v * x + dc[j];
            vb = vb * ax + std::fabs(dc[j]);
        }
        if (std::isfinite(v) && std::fabs(v) > 1e-12 * vb)
            return std::log(std::fabs(v));
        Rational pv = P.evaluate(Rational(x));
        if (sign_of(pv) == 0) return -708.0; // measure-zero node on a root
        return log_abs_rational(pv);
    }
};

template <class F>
double gl15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    double s = kWeight[0] * f(c);
    for (int i = 1; i < 8; ++i)
        s += kWeight[i] * (f(c - hw * kNode[i]) + f(c + hw * kNode[i]));
    return s * hw;
}

template <class F>
void adapt(const F& f, double a, double b, double whole, double tol, int depth,
           Estimate& acc) {
    const double mid = 0.5 * (a + b);
    const double left = gl15(f, a, mid);
    const double right = gl15(f, mid, b);
    const double diff = std::fabs(left + right - whole);
    // The tolerance is a flat per-panel budget: halving it with the panels
    // starves the zoom toward a nearby singularity (the refinement estimate
    // bottoms out at evaluation noise while the demand keeps shrinking, and
    // the tree goes exponential).  The noise floor accepts panels whose
    // refinement gain is below double rounding; every accepted discrepancy
    // is charged to the reported error either way.
    const double noise =
        1e-14 * (std::fabs(left) + std::fabs(right) + std::fabs(whole));
    if (depth >= 48 || diff <= tol || diff <= noise) {
        acc.value += left + right;
        acc.error += diff;
        acc.panels += 2;
        return;
    }
    adapt(f, a, mid, left, tol, depth + 1, acc);
    adapt(f, mid, b, right, tol, depth + 1, acc);
}

template <class F>
void integrate_segment(const F& f, double a, double b, double tol,
                       Estimate& acc) {
    if (!(b > a)) return;
    // the 1/64 share keeps the sum of accepted per-panel discrepancies near
    // the requested segment budget across a typical few-dozen-panel run
    adapt(f, a, b, gl15(f, a, b), tol / 64, 0, acc);
}

const Rational& rat_max(const Rational& a, const Rational& b) {
    return a < b ? b : a;
}
const Rational& rat_min(const Rational& a, const Rational& b) {
    return a < b ? a : b;
}

} // namespace

Constants::Constants() {
    c1 = 9.0 * std::numbers::pi / std::sqrt(2.0);
    chain_slope = c1 + 4.0 + 1.0 / 3.0;
}

Constants::Constants(double c1_override) {
    c1 = c1_override;
    chain_slope = c1 + 4.0 + 1.0 / 3.0;
}

SeparatorPolynomial make_separator(const SignChangeCertificate& sc,
                                   const Rational& a) {
    if (!(a > 0 && 3 * a <= 1))
        throw InvalidParameter("window parameter must lie in (0, 1/3]");
    SeparatorPolynomial sep;
    sep.poly = Poly::constant(1);
    for (const auto& [wl, wh] : sc.witnesses) {
        Rational u = (wl + wh) / 2;
        Rational x = (1 - a - u) / a; // window point mapped back to (0,1)
        sep.roots.push_back(x);
        sep.poly = sep.poly * Poly(std::vector<Rational>{-x, Rational(1)});
    }
    return sep;
}

Estimate log_abs_integral(const Poly& P, const Rational& lo, const Rational& hi,
                          double abs_tol) {
    if (P.is_zero()) throw ZeroPolynomial("log integral of the zero polynomial");
    if (!(lo < hi)) throw InvalidParameter("log integral needs lo < hi");
    Estimate acc;
    const Rational len = hi - lo;
    if (P.degree() == 0) {
        acc.value = to_double(len) * log_abs_rational(P.coeff(0));
        return acc;
    }

    // Isolate every real root near the interval, tightly.
    const Rational pad = len / 8;
    const Rational width = len / (Integer(1) << 44);
    const Rational delta = len / (Integer(1) << 36);
    auto roots = isolate_roots(P, lo - pad, hi + pad, width);

    // Merge per-root windows (midpoint +- delta) that overlap; each window
    // is integrated against the local model
    //   log|P(x)| ~ sum mu_i log|x - r_i| + C,
    // with C calibrated by an exact evaluation at the window's edge.
    struct Win {
        Rational lo, hi;
        std::vector<std::pair<Rational, int>> roots; // midpoint, multiplicity
    };
    std::vector<Win> wins;
    for (const IsolatedRoot& r : roots) {
        Rational mid = (r.lo + r.hi) / 2;
        Rational wl = mid - delta, wr = mid + delta;
        if (wr <= lo || wl >= hi) continue;
        wl = rat_max(wl, lo);
        wr = rat_min(wr, hi);
        if (!wins.empty() && wins.back().hi >= wl) {
            wins.back().hi = rat_max(wins.back().hi, wr);
        } else {
            wins.push_back({wl, wr, {}});
        }
        wins.back().roots.emplace_back(std::move(mid), r.multiplicity);
    }

    for (const Win& w : wins) {
        const Rational probe = (w.hi < hi) ? w.hi : w.lo;
        double C = log_abs_rational(P.evaluate(probe));
        int mu_total = 0;
        for (const auto& [mid, mu] : w.roots) {
            C -= mu * log_abs_rational(probe - mid);
            mu_total += mu;
        }
        const double wl = to_double(w.lo), wr = to_double(w.hi);
        double piece = C * (wr - wl);
        for (const auto& [mid, mu] : w.roots) {
            const double r = to_double(mid);
            piece += mu * (lint(wr - r) - lint(wl - r));
        }
        acc.value += piece;
        // The model is excellent for isolated roots; the charge covers the
        // off-model remainder generously (windows are ~2^-36 of the span).
        acc.error += (wr - wl) * 50.0 * (1 + mu_total);
        acc.panels += 1;
    }

    // Quadrature on the root-free remainder.
    LogAbsFn f(P);
    double smooth_len = 0;
    std::vector<std::pair<double, double>> segs;
    Rational cursor = lo;
    for (const Win& w : wins) {
        segs.emplace_back(to_double(cursor), to_double(w.lo));
        cursor = w.hi;
    }
    segs.emplace_back(to_double(cursor), to_double(hi));
    for (const auto& [sa, sb] : segs)
        if (sb > sa) smooth_len += sb - sa;
    if (smooth_len > 0)
        for (const auto& [sa, sb] : segs)
            if (sb > sa)
                integrate_segment(f, sa, sb, abs_tol * (sb - sa) / smooth_len,
                                  acc);
    return acc;
}

Estimate log_minus_integral(const Poly& P, const Rational& lo,
                            const Rational& hi) {
    if (P.is_zero())
        throw ZeroPolynomial("log-minus integral of the zero polynomial");
    if (!(lo < hi)) throw InvalidParameter("log-minus integral needs lo < hi");
    const Rational len = hi - lo;
    Estimate acc;
    if (P.degree() == 0) {
        Rational c = abs(P.coeff(0));
        if (c < 1) acc.value = -to_double(len) * log_abs_rational(c);
        return acc;
    }

    // Split where |P| crosses 1, then charge exactly the |P| <= 1 pieces.
    Poly boundary = P * P - Poly::constant(1);
    const Rational width = len / (Integer(1) << 44);
    std::vector<Rational> cuts{lo};
    for (const IsolatedRoot& r : isolate_roots(boundary, lo, hi, width))
        cuts.push_back((r.lo + r.hi) / 2);
    cuts.push_back(hi);
    acc.error += static_cast<double>(cuts.size()) * to_double(width) * 8.0;

    const double len_d = to_double(len);
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Rational& u = cuts[i];
        const Rational& v = cuts[i + 1];
        if (!(u < v)) continue;
        // exact segment classification at a probe clear of |P| = 1
        bool below = false, decided = false;
        for (int k = 1; k <= 16 && !decided; ++k) {
            Rational probe = u + (v - u) * k / 17;
            Rational val = abs(P.evaluate(probe));
            if (val == 1) continue;
            below = val < 1;
            decided = true;
        }
        if (!decided) continue; // |P| pinned to 1 across probes: contributes 0
        if (!below) continue;
        Estimate part = log_abs_integral(P, u, v, 1e-7 * to_double(v - u) / len_d);
        acc.value -= part.value;
        acc.error += part.error;
        acc.panels += part.panels;
    }
    if (acc.value < 0) acc.value = 0; // clip quadrature jitter around zero
    return acc;
}

Estimate l0_norm(const Poly& P, const Rational& lo, const Rational& hi) {
    if (P.is_zero()) throw ZeroPolynomial("geometric mean of the zero polynomial");
    if (!(lo < hi)) throw InvalidParameter("geometric mean needs lo < hi");
    const double len = to_double(hi - lo);
    Estimate raw = log_abs_integral(P, lo, hi, 1e-9 * len);
    Estimate out;
    out.value = std::exp(raw.value / len);
    out.error = out.value * std::expm1(raw.error / len);
    out.panels = raw.panels;
    return out;
}

Rational l1_norm_rational(const Poly& P, const Rational& lo,
                          const Rational& hi) {
    if (!(lo < hi)) throw InvalidParameter("mean absolute value needs lo < hi");
    if (P.is_zero()) return Rational(0);
    const Rational width = (hi - lo) / (Integer(1) << 44);
    std::vector<Rational> cuts{lo};
    for (const IsolatedRoot& r : isolate_roots(P, lo, hi, width))
        cuts.push_back((r.lo + r.hi) / 2);
    cuts.push_back(hi);
    Poly F = P.antiderivative();
    Rational total(0);
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        total += abs(F.evaluate(cuts[i + 1]) - F.evaluate(cuts[i]));
    return total / (hi - lo);
}

double l1_norm(const Poly& P, const Rational& lo, const Rational& hi) {
    return to_double(l1_norm_rational(P, lo, hi));
}

Rational exact_signed_integral(const Poly& P, const Rational& lo,
                               const Rational& hi) {
    return P.integral(lo, hi);
}

namespace {

/// P must read as sum_{j>=k} b_j a_j x^j with b_j in {-1,0,1}, a_j in [1,M],
/// and b_k nonzero.
void require_form(const Poly& P, const Rational& M, int k, const char* label) {
    if (P.is_zero() || P.degree() < k)
        throw FormViolation(std::string(label) + ": no coefficient at the lead index");
    for (int j = 0; j < k; ++j)
        if (sign_of(P.coeff(j)) != 0)
            throw FormViolation(std::string(label) +
                                ": nonzero coefficient below the lead index");
    if (sign_of(P.coeff(k)) == 0)
        throw FormViolation(std::string(label) + ": lead coefficient vanishes");
    for (int j = k; j <= P.degree(); ++j) {
        Rational c = abs(P.coeff(j));
        if (sign_of(c) != 0 && (c < 1 || c > M))
            throw FormViolation(std::string(label) +
                                ": coefficient magnitude outside [1, M]");
    }
}

void require_window(const Rational& a) {
    if (!(a > 0 && 3 * a <= 1))
        throw InvalidParameter("window parameter must lie in (0, 1/3]");
}

} // namespace

BoundReport check_logminus_cap(const Poly& P, const Rational& a,
                               const Rational& M, const Constants& consts) {
    require_window(a);
    require_form(P, M, 0, "log-minus cap");
    Estimate lm = log_minus_integral(P, 1 - 2 * a, 1 - a);
    BoundReport r;
    r.name = "logminus-cap";
    r.lhs = lm.value;
    r.rhs = consts.c1 * std::log(4 * to_double(M));
    r.subdivisions = lm.panels;
    r.tolerance = lm.error + 1e-9 * (1 + std::fabs(r.rhs));
    r.holds = r.lhs <= r.rhs + r.tolerance;
    r.margin = r.rhs - r.lhs;
    return r;
}

BoundReport check_geomean_floor(const Poly& P, const Rational& a,
                                const Rational& M, const Constants& consts) {
    require_window(a);
    require_form(P, M, 0, "geometric-mean floor");
    Estimate g = l0_norm(P, 1 - 2 * a, 1 - a);
    BoundReport r;
    r.name = "geomean-floor";
    r.lhs = std::exp(-consts.c1 * std::log(4 * to_double(M)) / to_double(a));
    r.rhs = g.value;
    r.subdivisions = g.panels;
    r.tolerance = g.error + 1e-9 * (1 + r.rhs);
    r.holds = r.lhs <= r.rhs + r.tolerance;
    r.margin = r.rhs - r.lhs;
    return r;
}

BoundReport check_shifted_floor(const Poly& P, const Rational& a,
                                const Rational& M, int k,
                                const Constants& consts) {
    require_window(a);
    if (k < 0) throw InvalidParameter("lead index must be nonnegative");
    require_form(P, M, k, "shifted floor");
    Estimate g = l0_norm(P, 1 - 2 * a, 1 - a);
    const double ad = to_double(a);
    BoundReport r;
    r.name = "shifted-floor";
    r.lhs = std::pow(1 - 2 * ad, k) *
            std::exp(-consts.c1 * std::log(4 * to_double(M)) / ad);
    r.rhs = g.value;
    r.subdivisions = g.panels;
    r.tolerance = g.error + 1e-9 * (1 + r.rhs);
    r.holds = r.lhs <= r.rhs + r.tolerance;
    r.margin = r.rhs - r.lhs;
    return r;
}

namespace {

void require_frame(int n, const Rational& M) {
    if (n < 1) throw InvalidParameter("degree bound must be at least 1");
    if (!(M >= 1)) throw InvalidParameter("weight bound must be at least 1");
    const double l4m = std::log(4 * to_double(M));
    if (!(l4m <= n / 9.0 + 1e-12))
        throw FrameViolation("size condition log(4M) <= n/9 fails");
}

} // namespace

Rational choose_a(int n, const Rational& M) {
    require_frame(n, M);
    const double l4m = std::log(4 * to_double(M));
    const double target = std::sqrt(l4m / n);
    long k = static_cast<long>(std::floor(target * 65536.0));
    if (k > 21845) k = 21845; // largest multiple of 2^-16 not above 1/3
    // round-down guard: accept k only when (k/2^16)^2 <= log(4M)/n clearly
    while (k >= 1 && !(static_cast<double>(k) * k * n <=
                       l4m * 4294967296.0 * (1 - 1e-13)))
        --k;
    if (k < 1)
        throw InvalidParameter("window quantum 2^-16 too coarse for these parameters");
    return Rational(Integer(k)) / 65536;
}

int guaranteed_m(int n, const Rational& M, const Constants& consts) {
    require_frame(n, M);
    const double l4m = std::log(4 * to_double(M));
    const double tail =
        std::log(2.0 * n + 2) + consts.chain_slope * std::sqrt(l4m * n);
    int best = 0;
    for (int m = 1; m <= n; ++m) {
        const double lhs = (static_cast<double>(n) / m) * std::numbers::ln2;
        const double rhs = (std::numbers::ln2 + 1) * m + tail;
        if (lhs > rhs)
            best = m;
        else
            break;
    }
    return best;
}

ChainReport proof_chain_check(const Poly& P, const ProblemInstance& inst, int m,
                              const CollisionCertificate& cert,
                              const SignChangeCertificate& sc,
                              const Constants& consts) {
    ChainReport rep;
    const Rational& a = inst.a();
    const int n = inst.n();
    const double ad = to_double(a);
    const double l4m = std::log(4 * to_double(inst.M()));
    const int s = sc.count;
    rep.sign_changes = s;
    rep.closed_form_lower = std::exp(-(consts.c1 + 4) * std::sqrt(l4m * n));

    auto push = [&rep](BoundReport r) {
        r.margin = r.rhs - r.lhs;
        rep.links.push_back(std::move(r));
        if (!rep.links.back().holds)
            throw ChainViolation("proof chain failed at link '" +
                                 rep.links.back().name + "'");
    };

    // moment-gap: the certificate's exact content, recomputed from scratch.
    {
        BoundReport r;
        r.name = "moment-gap";
        GridSpec g = GridSpec::make(inst, m);
        bool ok = cert.grid.m == m && cert.grid.L == g.L && cert.grid.h == g.h &&
                  static_cast<int>(cert.delta.v.size()) == m &&
                  !(cert.d1 == cert.d2) && P == assemble(inst, cert.b);
        MomentVector v1 = moment_vector(cert.d1, inst, m);
        MomentVector v2 = moment_vector(cert.d2, inst, m);
        double worst = 0;
        for (int j = 0; ok && j < m; ++j) {
            Rational dj = v1.v[j] - v2.v[j];
            ok = ok && dj == cert.delta.v[j] && abs(dj) < g.h;
            worst = std::max(worst, to_double(abs(dj) / g.h));
        }
        r.lhs = worst;
        r.rhs = 1.0;
        r.holds = ok;
        push(std::move(r));
    }

    // window-power: (1-2a)^n >= exp(-4 a n).
    {
        BoundReport r;
        r.name = "window-power";
        r.lhs = std::exp(-4 * ad * n);
        r.rhs = std::pow(1 - 2 * ad, n);
        r.tolerance = 1e-12 * (1 + r.rhs);
        r.holds = r.lhs <= r.rhs + r.tolerance;
        push(std::move(r));
    }

    Estimate l0P = l0_norm(P, inst.window_lo(), inst.window_hi());

    // window-floor: geometric mean of P on the window clears the explicit
    // floor exp(-c1 log(4M)/a - 4 a n) at this instance's rational a.
    {
        BoundReport r;
        r.name = "window-floor";
        r.lhs = std::exp(-consts.c1 * l4m / ad - 4 * ad * n);
        r.rhs = l0P.value;
        r.subdivisions = l0P.panels;
        r.tolerance = l0P.error + 1e-9 * (1 + r.rhs);
        r.holds = r.lhs <= r.rhs + r.tolerance;
        push(std::move(r));
    }

    Poly Pt = affine_pullback(P, a);
    SeparatorPolynomial sep = make_separator(sc, a);
    Poly PtQ = Pt * sep.poly;
    const Rational zero(0), one(1);

    Estimate l0Pt = l0_norm(Pt, zero, one);
    Estimate l0Q = l0_norm(sep.poly, zero, one);
    Estimate l0PQ = l0_norm(PtQ, zero, one);

    // pullback-invariance: the affine change of variables preserves the
    // geometric mean.
    {
        BoundReport r;
        r.name = "pullback-invariance";
        r.lhs = std::fabs(l0Pt.value / l0P.value - 1.0);
        r.rhs = 0.0;
        r.subdivisions = l0Pt.panels;
        r.tolerance = l0P.error / l0P.value +
                      l0Pt.error / std::max(l0Pt.value, 1e-300) + 1e-7;
        r.holds = r.lhs <= r.rhs + r.tolerance;
        push(std::move(r));
    }

    // separator-size: coefficient mass of the monic separator, exactly.
    Rational Qsum = sep.poly.coeff_abs_sum();
    {
        BoundReport r;
        r.name = "separator-size";
        Rational cap = Rational(Integer(1) << s);
        r.lhs = to_double(Qsum);
        r.rhs = to_double(cap);
        r.holds = Qsum <= cap;
        push(std::move(r));
    }

    // separator-floor: each separator factor x - u with u in [0,1] has
    //   integral of log|x-u| over [0,1]  =  u log u + (1-u) log(1-u) - 1,
    // minimized at u = 1/2 with value -(1 + log 2); so the geometric mean of
    // the s-factor product is at least (2e)^-s.  (The often-quoted per-factor
    // floor 1/e is the endpoint value and fails for interior roots.)
    const double factor_floor = 1.0 + std::numbers::ln2;
    {
        BoundReport r;
        r.name = "separator-floor";
        r.lhs = std::exp(-factor_floor * static_cast<double>(s));
        r.rhs = l0Q.value;
        r.subdivisions = l0Q.panels;
        r.tolerance = l0Q.error + 1e-9 * (1 + r.rhs);
        r.holds = r.lhs <= r.rhs + r.tolerance;
        push(std::move(r));
    }

    // product-rule: geometric means multiply.
    {
        BoundReport r;
        r.name = "product-rule";
        const double prod = l0Pt.value * l0Q.value;
        r.lhs = std::fabs(l0PQ.value / std::max(prod, 1e-300) - 1.0);
        r.rhs = 0.0;
        r.subdivisions = l0PQ.panels;
        r.tolerance = l0PQ.error / std::max(l0PQ.value, 1e-300) +
                      l0Pt.error / std::max(l0Pt.value, 1e-300) +
                      l0Q.error / std::max(l0Q.value, 1e-300) + 1e-7;
        r.holds = r.lhs <= r.rhs + r.tolerance;
        push(std::move(r));
    }

    // Exact split-point slop for the mean-absolute integral of PtQ.
    Rational l1r = l1_norm_rational(PtQ, zero, one);
    Rational slop = Rational(2 * std::max(PtQ.degree(), 0)) *
                    PtQ.coeff_abs_sum() / (Integer(1) << 44);

    // mean-compare: geometric mean <= mean absolute value.
    {
        BoundReport r;
        r.name = "mean-compare";
        r.lhs = l0PQ.value;
        r.rhs = to_double(l1r);
        r.tolerance = l0PQ.error + to_double(slop) + 1e-9 * (1 + r.rhs);
        r.holds = r.lhs <= r.rhs + r.tolerance;
        push(std::move(r));
    }

    // sign-alignment: PtQ keeps one sign outside the witness slivers, so the
    // mean absolute value exceeds |signed integral| by at most the slivers'
    // worth: 2 (n+1) M * Qsum * (total transported witness width).
    Rational signed_int = exact_signed_integral(PtQ, zero, one);
    Rational wit_width(0);
    for (const auto& [wl, wh] : sc.witnesses) wit_width += (wh - wl) / a;
    Rational align_slack = 2 * inst.cube_side() * Qsum * wit_width;
    {
        BoundReport r;
        r.name = "sign-alignment";
        r.lhs = to_double(l1r);
        r.rhs = to_double(abs(signed_int));
        r.tolerance = to_double(align_slack + slop);
        r.holds = l1r <= abs(signed_int) + align_slack + slop; // exact
        push(std::move(r));
    }

    // moment-sum: expand the signed integral over the separator's
    // coefficients against exact pullback moments; for j < m these equal the
    // certificate's deltas, and when s < m the whole sum is below Qsum * h.
    {
        BoundReport r;
        r.name = "moment-sum";
        bool ok = true;
        Rational tri(0);
        for (int j = 0; j <= sep.poly.degree(); ++j) {
            Rational Ij(0); // integral of Pt(x) x^j over [0,1], exact
            for (int i = 0; i <= Pt.degree(); ++i)
                Ij += Pt.coeff(i) / (i + j + 1);
            if (j < m) ok = ok && Ij == cert.delta.v[j];
            tri += abs(sep.poly.coeff(j)) * abs(Ij);
        }
        ok = ok && abs(signed_int) <= tri;
        r.lhs = to_double(abs(signed_int));
        if (s < m) {
            Rational cap = Qsum * cert.grid.h;
            ok = ok && tri <= cap;
            r.rhs = to_double(cap);
        } else {
            r.rhs = to_double(tri);
        }
        r.holds = ok;
        push(std::move(r));
    }

    // chain-ends: the explicit floor through the product against the
    // explicit ceiling through the moment gaps, end to end.
    {
        BoundReport r;
        r.name = "chain-ends";
        r.lhs = std::exp(-consts.c1 * l4m / ad - 4 * ad * n -
                         factor_floor * static_cast<double>(s));
        Rational upper = s < m ? Rational(Qsum * cert.grid.h)
                               : Rational(abs(signed_int));
        upper += align_slack + slop;
        r.rhs = to_double(upper);
        r.tolerance = 1e-9 * (1 + r.rhs);
        r.holds = r.lhs <= r.rhs + r.tolerance;
        push(std::move(r));
    }

    rep.all_hold = true;
    return rep;
}

} // namespace polysign
