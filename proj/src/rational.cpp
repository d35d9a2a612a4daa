#include "polysign/rational.hpp"

namespace polysign {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty())
        throw InvalidParameter("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw InvalidParameter("bad rational literal: " + s);
    if (q.get_den() == 0)
        throw InvalidParameter("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer floor_rational(const Rational& q) {
    return floor_div(q.get_num(), q.get_den());
}

Rational pow_rational(const Rational& base, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), e);
    r.canonicalize();
    return r;
}

Integer pow_integer(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

} // namespace polysign
