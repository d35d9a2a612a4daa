#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polysign/errors.hpp"
#include "polysign/instance.hpp"
#include "polysign/polynomial.hpp"
#include "polysign/rng.hpp"

using namespace polysign;

namespace {
Rational Q(long num, long den = 1) { return Rational(num) / den; }
}

TEST_CASE("rational helpers") {
    CHECK(parse_rational("3/6") == Q(1, 2));
    CHECK(parse_rational("-7") == Q(-7));
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidParameter);
    CHECK_THROWS_AS(parse_rational("x"), InvalidParameter);
    CHECK(format_rational(Q(1, 2)) == "1/2");
    CHECK(floor_rational(Q(7, 2)) == 3);
    CHECK(floor_rational(Q(-7, 2)) == -4);
    CHECK(pow_rational(Q(2, 3), 3) == Q(8, 27));
    CHECK(pow_integer(Integer(2), 10) == 1024);
    CHECK(binomial(5, 2) == 10);
    CHECK(to_double(Q(1, 2)) == 0.5);
}

TEST_CASE("polynomial basics") {
    Poly z;
    CHECK(z.is_zero());
    CHECK(z.degree() == -1);

    Poly p(std::vector<Rational>{Q(1), Q(-2), Q(1)}); // (x-1)^2
    CHECK(p.degree() == 2);
    CHECK(p.evaluate(Q(3)) == 4);
    CHECK(p.evaluate_double(3.0) == doctest::Approx(4.0));
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(5) == 0);

    // trailing zeros trim away
    Poly q(std::vector<Rational>{Q(2), Q(0), Q(0)});
    CHECK(q.degree() == 0);

    CHECK(p.derivative() == Poly(std::vector<Rational>{Q(-2), Q(2)}));
    CHECK((p + (-p)).is_zero());
    CHECK(p - p == Poly());
    CHECK(p.scaled(Q(3)).coeff(2) == 3);

    // (x-1)^2 * (x+1) = x^3 - x^2 - x + 1
    Poly r = p * Poly(std::vector<Rational>{Q(1), Q(1)});
    CHECK(r == Poly(std::vector<Rational>{Q(1), Q(-1), Q(-1), Q(1)}));

    CHECK(p.coeff_abs_sum() == 4);
    CHECK(Poly::monomial(3, Q(2)).evaluate(Q(2)) == 16);
    CHECK(Poly::constant(Q(5)).degree() == 0);
}

TEST_CASE("polynomial calculus and roots") {
    Poly x(std::vector<Rational>{Q(0), Q(1)});
    CHECK(x.antiderivative() == Poly(std::vector<Rational>{Q(0), Q(0), Q(1, 2)}));
    CHECK(x.integral(Q(0), Q(1)) == Q(1, 2));

    // integral of 5/3 - x/3 over [0,1] = 5/3 - 1/6 = 3/2
    Poly lin(std::vector<Rational>{Q(5, 3), Q(-1, 3)});
    CHECK(lin.integral(Q(0), Q(1)) == Q(3, 2));

    Poly p(std::vector<Rational>{Q(1), Q(-2), Q(1)}); // (x-1)^2
    CHECK(p.root_multiplicity(Q(1)) == 2);
    CHECK(p.root_multiplicity(Q(2)) == 0);
    CHECK(p.deflate(Q(1)) == Poly(std::vector<Rational>{Q(-1), Q(1)}));

    // composition: p(u + v x) at x equals p evaluated at u + v x
    Poly comp = p.compose_affine(Q(2, 3), Q(-1, 3));
    for (long num = -3; num <= 3; ++num) {
        Rational xx = Q(num, 2);
        CHECK(comp.evaluate(xx) == p.evaluate(Q(2, 3) - Q(1, 3) * xx));
    }
}

TEST_CASE("selection and sign vectors") {
    SelectionVector d = SelectionVector::from_bits(0b1011, 5);
    CHECK(d.to_string() == "11010");
    CHECK(d.to_bits() == 0b1011);
    CHECK(SelectionVector::parse("11010") == d);
    CHECK_THROWS_AS(SelectionVector::parse("10x"), InvalidParameter);

    SignVector b = SignVector::from_coeffs({0, -1, 0, 1});
    CHECK(b.k == 1);
    CHECK(b.to_string() == "0-0+");
    CHECK_FALSE(b.is_zero());
    CHECK(SignVector::from_coeffs({0, 0}).is_zero());
    CHECK_THROWS_AS(SignVector::from_coeffs({2}), InvalidParameter);
}

TEST_CASE("instance frame and window") {
    ProblemInstance inst = ProblemInstance::ones(4, Q(1, 3));
    CHECK(inst.n() == 4);
    CHECK(inst.M() == 1);
    CHECK(inst.window_lo() == Q(1, 3));
    CHECK(inst.window_hi() == Q(2, 3));
    CHECK(inst.cube_side() == 5);

    // size condition log(4M) <= n/9 with M = 1 turns true at n = 13
    CHECK_FALSE(ProblemInstance::ones(12, Q(1, 3)).frame_holds());
    CHECK(ProblemInstance::ones(13, Q(1, 3)).frame_holds());

    CHECK_THROWS_AS(ProblemInstance(2, Q(1), {Q(1), Q(2), Q(1)}, Q(1, 3)),
                    InvalidParameter); // weight above M
    CHECK_THROWS_AS(ProblemInstance(2, Q(2), {Q(1), Q(1, 2), Q(1)}, Q(1, 3)),
                    InvalidParameter); // weight below 1
    CHECK_THROWS_AS(ProblemInstance::ones(2, Q(1, 2)), InvalidParameter);
    CHECK_THROWS_AS(ProblemInstance::ones(2, Q(0)), InvalidParameter);
    CHECK_THROWS_AS(ProblemInstance(2, Q(1), {Q(1), Q(1)}, Q(1, 3)),
                    LengthMismatch); // wrong weight count
}

TEST_CASE("assembly and pullback") {
    ProblemInstance inst(2, Q(2), {Q(1), Q(3, 2), Q(2)}, Q(1, 3));
    SignVector b = SignVector::from_coeffs({1, -1, 1});
    Poly P = assemble(inst, b);
    CHECK(P == Poly(std::vector<Rational>{Q(1), Q(-3, 2), Q(2)}));

    SelectionVector d = SelectionVector::from_bits(0b101, 3);
    CHECK(assemble(inst, d) == Poly(std::vector<Rational>{Q(1), Q(0), Q(2)}));

    // pullback hits P(1 - a - a x) pointwise
    Poly Pt = affine_pullback(P, Q(1, 3));
    for (long num = 0; num <= 4; ++num) {
        Rational x = Q(num, 4);
        CHECK(Pt.evaluate(x) == P.evaluate(Q(2, 3) - Q(1, 3) * x));
    }
    CHECK(Pt.degree() == P.degree());

    auto [db, dp] = difference(SelectionVector::from_bits(0b011, 3),
                               SelectionVector::from_bits(0b101, 3), inst);
    CHECK(db.to_string() == "0+-");
    CHECK(dp == Poly(std::vector<Rational>{Q(0), Q(3, 2), Q(-2)}));
    CHECK_THROWS_AS(difference(d, d, inst), IdenticalSelections);
}

TEST_CASE("seeded generator streams") {
    SplitMix64 g(42);
    SplitMix64 h(42);
    for (int i = 0; i < 100; ++i) CHECK(g.next() == h.next());

    // counter addressing matches the sequential stream
    SplitMix64 s(7);
    for (std::uint64_t i = 0; i < 20; ++i)
        CHECK(s.next() == SplitMix64::at(7, i));

    SplitMix64 u(3);
    for (int i = 0; i < 1000; ++i) {
        CHECK(u.next_below(17) < 17);
        const double x = u.next_unit();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    CHECK(std::string(SplitMix64::kName) == "splitmix64");
}
