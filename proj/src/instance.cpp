#include "polysign/instance.hpp"

#include <cmath>

namespace polysign {

SelectionVector SelectionVector::from_bits(std::uint64_t t, int len) {
    SelectionVector d;
    d.d.resize(len);
    for (int j = 0; j < len; ++j) d.d[j] = (t >> j) & 1;
    return d;
}

std::uint64_t SelectionVector::to_bits() const {
    std::uint64_t t = 0;
    for (size_t j = 0; j < d.size(); ++j)
        if (d[j]) t |= (std::uint64_t(1) << j);
    return t;
}

std::string SelectionVector::to_string() const {
    std::string s(d.size(), '0');
    for (size_t j = 0; j < d.size(); ++j)
        if (d[j]) s[j] = '1';
    return s;
}

SelectionVector SelectionVector::parse(const std::string& s) {
    SelectionVector d;
    d.d.reserve(s.size());
    for (char ch : s) {
        if (ch != '0' && ch != '1')
            throw InvalidParameter("selection vector must be over {0,1}");
        d.d.push_back(ch == '1');
    }
    return d;
}

SignVector SignVector::from_coeffs(std::vector<std::int8_t> coeffs) {
    SignVector b;
    b.b = std::move(coeffs);
    b.k = -1;
    for (size_t j = 0; j < b.b.size(); ++j) {
        if (b.b[j] < -1 || b.b[j] > 1)
            throw InvalidParameter("sign vector entries must be in {-1,0,1}");
        if (b.b[j] != 0 && b.k < 0) b.k = static_cast<int>(j);
    }
    return b;
}

std::string SignVector::to_string() const {
    std::string s(b.size(), '0');
    for (size_t j = 0; j < b.size(); ++j)
        s[j] = b[j] == 0 ? '0' : (b[j] > 0 ? '+' : '-');
    return s;
}

ProblemInstance::ProblemInstance(int n, Rational M, std::vector<Rational> weights,
                                 Rational a)
    : n_(n), M_(std::move(M)), weights_(std::move(weights)), a_(std::move(a)) {
    if (n_ < 1) throw InvalidParameter("degree bound n must be >= 1");
    if (M_ < 1) throw InvalidParameter("weight cap M must be >= 1");
    if (static_cast<int>(weights_.size()) != n_ + 1)
        throw LengthMismatch("expected n+1 weights");
    for (const auto& w : weights_)
        if (w < 1 || w > M_)
            throw InvalidParameter("weights must lie in [1, M]");
    if (a_ <= 0 || a_ > Rational(1, 3))
        throw InvalidParameter("window parameter a must lie in (0, 1/3]");
}

ProblemInstance ProblemInstance::ones(int n, Rational a) {
    return ProblemInstance(n, 1, std::vector<Rational>(n + 1, Rational(1)),
                           std::move(a));
}

bool ProblemInstance::frame_holds() const {
    double logM = std::log(M_.get_d());
    double bound = std::log(0.25) + n_ / 9.0;
    return logM <= bound + 1e-12;
}

Poly assemble(const ProblemInstance& inst, const SignVector& b) {
    if (static_cast<int>(b.b.size()) != inst.n() + 1)
        throw LengthMismatch("sign vector length != n+1");
    std::vector<Rational> c(b.b.size());
    for (size_t j = 0; j < b.b.size(); ++j)
        if (b.b[j] != 0)
            c[j] = Rational(static_cast<int>(b.b[j])) * inst.weights()[j];
    return Poly(std::move(c));
}

Poly assemble(const ProblemInstance& inst, const SelectionVector& d) {
    if (static_cast<int>(d.d.size()) != inst.n() + 1)
        throw LengthMismatch("selection vector length != n+1");
    std::vector<Rational> c(d.d.size());
    for (size_t j = 0; j < d.d.size(); ++j)
        if (d.d[j]) c[j] = inst.weights()[j];
    return Poly(std::move(c));
}

Poly affine_pullback(const Poly& P, const Rational& a) {
    if (a <= 0 || a > Rational(1, 3))
        throw InvalidParameter("pullback parameter a must lie in (0, 1/3]");
    return P.compose_affine(Rational(1) - a, -a);
}

std::pair<SignVector, Poly> difference(const SelectionVector& d1,
                                       const SelectionVector& d2,
                                       const ProblemInstance& inst) {
    if (d1.d.size() != d2.d.size())
        throw LengthMismatch("selection vectors differ in length");
    if (d1 == d2)
        throw IdenticalSelections("difference of identical selection vectors");
    std::vector<std::int8_t> c(d1.d.size());
    for (size_t j = 0; j < c.size(); ++j)
        c[j] = static_cast<std::int8_t>(static_cast<int>(d1.d[j]) -
                                        static_cast<int>(d2.d[j]));
    SignVector b = SignVector::from_coeffs(std::move(c));
    Poly P = assemble(inst, b);
    return {std::move(b), std::move(P)};
}

} // namespace polysign
