#include "polysign/polynomial.hpp"

#include <sstream>

namespace polysign {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rational& c) {
    return Poly(std::vector<Rational>{c});
}

Poly Poly::monomial(int degree, const Rational& c) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& Poly::coeff(int j) const {
    static const Rational zero(0);
    if (j < 0 || j >= static_cast<int>(c_.size())) return zero;
    return c_[j];
}

Rational Poly::evaluate(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

double Poly::evaluate_double(double x) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + it->get_d();
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rational> d(c_.size() - 1);
    for (size_t j = 1; j < c_.size(); ++j)
        d[j - 1] = c_[j] * Rational(static_cast<long>(j));
    return Poly(std::move(d));
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (size_t j = 0; j < r.size(); ++j) {
        if (j < c_.size()) r[j] += c_[j];
        if (j < o.c_.size()) r[j] += o.c_[j];
    }
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    std::vector<Rational> r(c_);
    for (auto& q : r) q = -q;
    return Poly(std::move(r));
}

Poly Poly::scaled(const Rational& s) const {
    if (s == 0) return Poly();
    std::vector<Rational> r(c_);
    for (auto& q : r) q *= s;
    return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
}

Poly Poly::compose_affine(const Rational& u, const Rational& v) const {
    // coefficient of x^t in sum_i c_i (u + v x)^i is
    //   v^t * sum_{i>=t} c_i * C(i,t) * u^(i-t)
    if (is_zero()) return Poly();
    const int n = degree();
    std::vector<Rational> upow(n + 1);
    upow[0] = 1;
    for (int e = 1; e <= n; ++e) upow[e] = upow[e - 1] * u;
    std::vector<Rational> out(n + 1);
    Rational vpow(1);
    for (int t = 0; t <= n; ++t) {
        Rational s(0);
        for (int i = t; i <= n; ++i) {
            if (c_[i] == 0) continue;
            s += c_[i] * Rational(binomial(i, t)) * upow[i - t];
        }
        out[t] = s * vpow;
        vpow *= v;
    }
    return Poly(std::move(out));
}

Poly Poly::antiderivative() const {
    if (is_zero()) return Poly();
    std::vector<Rational> r(c_.size() + 1);
    for (size_t j = 0; j < c_.size(); ++j)
        r[j + 1] = c_[j] / Rational(static_cast<long>(j + 1));
    return Poly(std::move(r));
}

Rational Poly::integral(const Rational& lo, const Rational& hi) const {
    Poly F = antiderivative();
    return F.evaluate(hi) - F.evaluate(lo);
}

int Poly::root_multiplicity(const Rational& r) const {
    if (is_zero()) throw ZeroPolynomial("root_multiplicity of zero polynomial");
    int k = 0;
    Poly p = *this;
    while (!p.is_zero() && p.evaluate(r) == 0) {
        p = p.deflate(r);
        ++k;
    }
    return k;
}

Poly Poly::deflate(const Rational& r) const {
    // synthetic division by (x - r); remainder must vanish
    if (is_zero()) throw ZeroPolynomial("deflate of zero polynomial");
    std::vector<Rational> q(c_.size() - 1);
    Rational acc(0);
    for (size_t j = c_.size(); j-- > 1;) {
        acc = acc * r + c_[j];
        q[j - 1] = acc;
    }
    return Poly(std::move(q));
}

Rational Poly::coeff_abs_sum() const {
    Rational s(0);
    for (const auto& q : c_) s += abs(q);
    return s;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        if (!first) os << " + ";
        os << c_[j].get_str() << "*x^" << j;
        first = false;
    }
    return os.str();
}

} // namespace polysign
