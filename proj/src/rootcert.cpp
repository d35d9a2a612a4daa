#include "polysign/rootcert.hpp"

#include <cstdlib>
#include <utility>

#include "polysign/errors.hpp"

namespace polysign {
namespace {

int sign_of(const Rational& x) { return mpq_sgn(x.get_mpq_t()); }

/// Scales a nonzero polynomial by a positive rational so its coefficients
/// become coprime integers; the sign pattern is preserved.  Optionally flips
/// the overall sign so the leading coefficient is positive.
Poly primitive_part(const Poly& P, bool positive_leading) {
    if (P.is_zero()) return P;
    Integer den = 1;
    for (const Rational& c : P.coeffs())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    Integer content = 0;
    std::vector<Integer> z(P.coeffs().size());
    for (size_t j = 0; j < z.size(); ++j) {
        z[j] = P.coeff(static_cast<int>(j)).get_num() *
               (den / P.coeff(static_cast<int>(j)).get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z[j].get_mpz_t());
    }
    if (positive_leading && sgn(z.back()) < 0) content = -content;
    std::vector<Rational> out(z.size());
    for (size_t j = 0; j < z.size(); ++j) out[j] = Rational(z[j] / content);
    return Poly(std::move(out));
}

/// Remainder of A divided by B over the rationals; requires deg B >= 0.
Poly rational_rem(const Poly& A, const Poly& B) {
    const int db = B.degree();
    std::vector<Rational> r(A.coeffs());
    for (int i = A.degree(); i >= db; --i) {
        if (sign_of(r[i]) == 0) continue;
        Rational q = r[i] / B.coeff(db);
        for (int j = 0; j < db; ++j) r[i - db + j] -= q * B.coeff(j);
        r[i] = 0;
    }
    r.resize(db > 0 ? db : 0);
    return Poly(std::move(r));
}

/// Exact quotient A / B; throws if B does not divide A.
Poly exact_quotient(const Poly& A, const Poly& B) {
    if (A.is_zero()) return Poly();
    const int db = B.degree();
    std::vector<Rational> r(A.coeffs());
    std::vector<Rational> q(A.degree() - db + 1);
    for (int i = A.degree(); i >= db; --i) {
        if (sign_of(r[i]) == 0) continue;
        Rational f = r[i] / B.coeff(db);
        q[i - db] = f;
        for (int j = 0; j < db; ++j) r[i - db + j] -= f * B.coeff(j);
        r[i] = 0;
    }
    for (const Rational& c : r)
        if (sign_of(c) != 0) throw Error("internal: inexact polynomial quotient");
    return Poly(std::move(q));
}

/// Primitive gcd with positive leading coefficient, by a Euclidean remainder
/// sequence reduced to primitive parts at every step.
Poly poly_gcd(Poly A, Poly B) {
    A = primitive_part(A, true);
    B = primitive_part(B, true);
    if (A.degree() < B.degree()) std::swap(A, B);
    while (!B.is_zero()) {
        Poly R = rational_rem(A, B);
        A = std::move(B);
        B = R.is_zero() ? Poly() : primitive_part(R, true);
    }
    return A;
}

/// Sturm chain f0 = P, f1 = P', f_{i+1} = -rem(f_{i-1}, f_i), each entry
/// reduced to its primitive part by a positive scalar only.
std::vector<Poly> sturm_chain(const Poly& P) {
    std::vector<Poly> chain;
    chain.push_back(primitive_part(P, false));
    Poly d = P.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(primitive_part(d, false));
    while (chain.back().degree() >= 0) {
        Poly R = rational_rem(chain[chain.size() - 2], chain.back());
        if (R.is_zero()) break;
        chain.push_back(primitive_part(-R, false));
    }
    return chain;
}

int variations(const std::vector<Poly>& chain, const Rational& x) {
    int count = 0, last = 0;
    for (const Poly& f : chain) {
        int s = sign_of(f.evaluate(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

/// Moves the endpoints of (lo, hi) inward, in steps starting at
/// (hi - lo)/2^40 and halving on a rare repeat hit, until S is nonzero at
/// both.  Sets nudged if anything moved.
void nudge_inward(const Poly& S, Rational& lo, Rational& hi, bool& nudged) {
    Rational eps = (hi - lo) / Rational(Integer(1) << 40);
    while (sign_of(S.evaluate(lo)) == 0 && lo < hi) {
        lo += eps;
        eps /= 2;
        nudged = true;
    }
    eps = (hi - lo) / Rational(Integer(1) << 40);
    while (sign_of(S.evaluate(hi)) == 0 && lo < hi) {
        hi -= eps;
        eps /= 2;
        nudged = true;
    }
}

/// Splits (lo, hi), known to contain `count` distinct roots of squarefree S
/// and none at its endpoints, into isolating intervals appended in order.
/// An exact rational root hit by a midpoint gets a private bubble.
void isolate_rec(const Poly& S, const std::vector<Poly>& chain,
                 const Rational& lo, const Rational& hi, int count,
                 std::vector<std::pair<Rational, Rational>>& out) {
    if (count == 0) return;
    if (count == 1) {
        out.emplace_back(lo, hi);
        return;
    }
    Rational mid = (lo + hi) / 2;
    if (sign_of(S.evaluate(mid)) == 0) {
        Rational d = (hi - lo) / 4;
        while (true) {
            Rational l = mid - d, r = mid + d;
            if (sign_of(S.evaluate(l)) != 0 && sign_of(S.evaluate(r)) != 0 &&
                variations(chain, l) - variations(chain, r) == 1) {
                int left = variations(chain, lo) - variations(chain, l);
                isolate_rec(S, chain, lo, l, left, out);
                out.emplace_back(l, r);
                isolate_rec(S, chain, r, hi, count - 1 - left, out);
                return;
            }
            d /= 2;
        }
    }
    int left = variations(chain, lo) - variations(chain, mid);
    isolate_rec(S, chain, lo, mid, left, out);
    isolate_rec(S, chain, mid, hi, count - left, out);
}

/// Shrinks an isolating interval of squarefree S (one simple root inside,
/// opposite signs at the ends) by sign bisection until it is narrower than
/// `width` and strictly inside (olo, ohi).  A midpoint landing exactly on
/// the root is replaced by a small bubble around it.
void refine_interval(const Poly& S, Rational& l, Rational& r,
                     const Rational& width, const Rational& olo,
                     const Rational& ohi) {
    int sl = sign_of(S.evaluate(l));
    while (r - l > width || l <= olo || r >= ohi) {
        Rational mid = (l + r) / 2;
        int s = sign_of(S.evaluate(mid));
        if (s == 0) {
            Rational u = (r - l) / 4;
            while (sign_of(S.evaluate(mid - u)) == 0 ||
                   sign_of(S.evaluate(mid + u)) == 0)
                u /= 2;
            l = mid - u;
            r = mid + u;
            sl = sign_of(S.evaluate(l));
        } else if (s == sl) {
            l = mid;
        } else {
            r = mid;
        }
    }
}

} // namespace

Poly squarefree_part(const Poly& P) {
    if (P.is_zero()) throw ZeroPolynomial("squarefree part of the zero polynomial");
    if (P.degree() == 0) return Poly::constant(1);
    Poly g = poly_gcd(P, P.derivative());
    return primitive_part(exact_quotient(P, g), true);
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& P) {
    if (P.is_zero()) throw ZeroPolynomial("squarefree decomposition of the zero polynomial");
    std::vector<std::pair<Poly, int>> out;
    if (P.degree() == 0) return out;
    // Yun's algorithm on the primitive part.
    Poly f = primitive_part(P, true);
    Poly d = f.derivative();
    Poly a = poly_gcd(f, d);
    Poly b = exact_quotient(f, a);
    Poly c = exact_quotient(d, a);
    int k = 1;
    while (b.degree() >= 1) {
        Poly e = c - b.derivative();
        Poly g = poly_gcd(b, e);
        if (g.degree() >= 1) out.emplace_back(g, k);
        b = exact_quotient(b, g);
        c = exact_quotient(e, g);
        ++k;
    }
    return out;
}

int sturm_count(const Poly& P, const Rational& lo, const Rational& hi) {
    if (P.is_zero()) throw ZeroPolynomial("root count of the zero polynomial");
    if (!(lo < hi)) throw InvalidParameter("root count needs lo < hi");
    auto chain = sturm_chain(P);
    Rational a = lo, b = hi;
    bool nudged = false;
    nudge_inward(chain[0], a, b, nudged);
    if (!(a < b)) return 0;
    return variations(chain, a) - variations(chain, b);
}

std::vector<IsolatedRoot> isolate_roots(const Poly& P, const Rational& lo,
                                        const Rational& hi,
                                        const Rational& refine_width) {
    if (P.is_zero()) throw ZeroPolynomial("root isolation of the zero polynomial");
    if (!(lo < hi)) throw InvalidParameter("root isolation needs lo < hi");
    if (sign_of(refine_width) <= 0) throw InvalidParameter("refine width must be positive");
    Poly S = squarefree_part(P);
    if (S.degree() < 1) return {};
    Rational a = lo, b = hi;
    bool nudged = false;
    nudge_inward(S, a, b, nudged);
    if (!(a < b)) return {};
    auto chain = sturm_chain(S);
    int total = variations(chain, a) - variations(chain, b);
    std::vector<std::pair<Rational, Rational>> spans;
    isolate_rec(S, chain, a, b, total, spans);

    auto decomp = squarefree_decomposition(P);
    std::vector<IsolatedRoot> out;
    out.reserve(spans.size());
    for (auto& [l, r] : spans) {
        refine_interval(S, l, r, refine_width, lo, hi);
        int mult = 0;
        for (const auto& [factor, power] : decomp) {
            if (factor.degree() >= 1 && sturm_count(factor, l, r) == 1) {
                mult = power;
                break;
            }
        }
        if (mult == 0) throw Error("internal: isolated root matches no squarefree factor");
        out.push_back({l, r, mult});
    }
    return out;
}

SignChangeCertificate count_sign_changes(const Poly& P, const Rational& lo,
                                         const Rational& hi) {
    if (P.is_zero()) throw ZeroPolynomial("sign changes of the zero polynomial");
    if (!(lo < hi)) throw InvalidParameter("sign-change count needs lo < hi");
    SignChangeCertificate cert;
    cert.interval_lo = lo;
    cert.interval_hi = hi;
    Poly S = squarefree_part(P);
    Rational a = lo, b = hi;
    nudge_inward(S, a, b, cert.nudged);
    cert.effective_lo = a;
    cert.effective_hi = b;
    if (!(a < b) || S.degree() < 1) return cert;
    Rational width = (hi - lo) / Rational(Integer(1) << 30);
    for (const IsolatedRoot& root : isolate_roots(P, a, b, width)) {
        if (root.multiplicity % 2 == 0) continue;
        if (sign_of(P.evaluate(root.lo)) * sign_of(P.evaluate(root.hi)) >= 0)
            throw Error("internal: witness endpoints fail the sign test");
        ++cert.count;
        cert.witnesses.emplace_back(root.lo, root.hi);
    }
    return cert;
}

int multiplicity_at_one(const Poly& P) { return P.root_multiplicity(1); }

namespace {

/// Multiplicity of the root at 1 of an integer-coefficient polynomial, by
/// repeated synthetic division.  Exact; coefficients stay mpz.
int mult_at_one_exact(std::vector<Integer> c) {
    int k = 0;
    while (c.size() > 0) {
        Integer sum = 0;
        for (const Integer& x : c) sum += x;
        if (sgn(sum) != 0) break;
        // quotient by (x - 1): running suffix sums
        std::vector<Integer> q(c.size() - 1);
        Integer acc = 0;
        for (size_t j = c.size() - 1; j >= 1; --j) {
            acc += c[j];
            q[j - 1] = acc;
        }
        c = std::move(q);
        ++k;
    }
    return k;
}

struct DfsState {
    int conditions;                         // require T_i = 0 for i < conditions
    std::vector<std::vector<long long>> binom; // binom[j][i], i < conditions
    std::vector<long long> remaining;       // per i: sum of binom[j][i] for j < cursor
    std::vector<long long> t;               // partial condition sums
    std::vector<std::int8_t> coeff;
    std::uint64_t nodes = 0;
    std::uint64_t budget;
    bool cut = false;
    bool found = false;
    std::vector<std::int8_t> witness;
};

/// Assigns coefficients from index j downward; prunes any branch whose
/// partial sums can no longer reach zero with the remaining capacity.
void dfs_assign(DfsState& st, int j, bool any_nonzero) {
    if (st.cut || st.found) return;
    if (++st.nodes > st.budget) {
        st.cut = true;
        return;
    }
    for (int i = 0; i < st.conditions; ++i)
        if (std::llabs(st.t[i]) > st.remaining[i]) return;
    if (j < 0) {
        if (!any_nonzero) return;
        for (int i = 0; i < st.conditions; ++i)
            if (st.t[i] != 0) return;
        st.found = true;
        st.witness = st.coeff;
        return;
    }
    for (int i = 0; i < st.conditions; ++i) st.remaining[i] -= st.binom[j][i];
    for (std::int8_t c : {std::int8_t(1), std::int8_t(-1), std::int8_t(0)}) {
        st.coeff[j] = c;
        if (c != 0)
            for (int i = 0; i < st.conditions; ++i) st.t[i] += c * st.binom[j][i];
        dfs_assign(st, j - 1, any_nonzero || c != 0);
        if (c != 0)
            for (int i = 0; i < st.conditions; ++i) st.t[i] -= c * st.binom[j][i];
        if (st.cut || st.found) break;
    }
    st.coeff[j] = 0;
    for (int i = 0; i < st.conditions; ++i) st.remaining[i] += st.binom[j][i];
}

} // namespace

MultiplicityResult max_multiplicity_search(int n, std::uint64_t budget) {
    if (n < 0) throw InvalidParameter("degree bound must be nonnegative");
    if (budget == 0) throw InvalidParameter("node budget must be positive");
    MultiplicityResult res;

    if (n <= 12) {
        // Exhaustive sweep over all 3^(n+1) coefficient vectors; values fit
        // comfortably in 64-bit through every synthetic division.
        std::uint64_t total = 1;
        for (int j = 0; j <= n; ++j) total *= 3;
        std::vector<std::int8_t> c(n + 1);
        std::vector<long long> work(n + 1);
        res.exact = true;
        for (std::uint64_t code = 0; code < total; ++code) {
            if (++res.nodes > budget) {
                res.exact = false;
                break;
            }
            std::uint64_t t = code;
            bool any = false;
            for (int j = 0; j <= n; ++j) {
                c[j] = static_cast<std::int8_t>(t % 3) - 1;
                t /= 3;
                any = any || c[j] != 0;
            }
            if (!any) continue;
            int len = n + 1;
            for (int j = 0; j <= n; ++j) work[j] = c[j];
            int k = 0;
            while (len > 0) {
                long long sum = 0;
                for (int j = 0; j < len; ++j) sum += work[j];
                if (sum != 0) break;
                // quotient by (x - 1) as running suffix sums; each original
                // entry is saved before its slot is overwritten
                long long acc = 0;
                long long saved = work[len - 1];
                for (int j = len - 1; j >= 1; --j) {
                    acc += saved;
                    saved = work[j - 1];
                    work[j - 1] = acc;
                }
                --len;
                ++k;
            }
            if (k > res.k || res.witness.b.empty()) {
                res.k = k;
                res.witness = SignVector::from_coeffs(c);
            }
        }
        return res;
    }

    if (n > 50) throw CapExceeded("multiplicity search supports n <= 50");

    // Pruned DFS: look for any admissible vector with multiplicity at least
    // k_try, raising k_try until a phase comes back empty.
    for (int k_try = 1;; ++k_try) {
        DfsState st;
        st.conditions = k_try;
        st.binom.assign(n + 1, std::vector<long long>(k_try));
        st.remaining.assign(k_try, 0);
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i < k_try; ++i) {
                st.binom[j][i] = binomial(j, i).get_si();
                st.remaining[i] += st.binom[j][i];
            }
        st.t.assign(k_try, 0);
        st.coeff.assign(n + 1, 0);
        st.budget = budget > res.nodes ? budget - res.nodes : 1;
        dfs_assign(st, n, false);
        res.nodes += st.nodes;
        if (st.found) {
            std::vector<Integer> z(st.witness.begin(), st.witness.end());
            res.k = mult_at_one_exact(std::move(z));
            res.witness = SignVector::from_coeffs(st.witness);
            res.exact = false;
            if (res.k >= k_try) k_try = res.k; // skip past what the witness gives
            continue;
        }
        if (!st.cut) res.exact = true;
        break;
    }
    return res;
}

} // namespace polysign
