#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "polysign/errors.hpp"
#include "polysign/moments.hpp"
#include "polysign/rng.hpp"

using namespace polysign;

namespace {
Rational Q(long num, long den = 1) { return Rational(num) / den; }
}

TEST_CASE("basis moments, closed forms") {
    // integral over [0,1] of (1 - a - a x)^i x^j
    CHECK(basis_moment(0, 0, Q(1, 3)) == 1);
    CHECK(basis_moment(0, 3, Q(1, 4)) == Q(1, 4));
    CHECK(basis_moment(1, 0, Q(1, 3)) == Q(1, 2));
    CHECK(basis_moment(1, 1, Q(1, 3)) == Q(2, 9));
    CHECK(basis_moment(2, 0, Q(1, 3)) == Q(7, 27));
}

TEST_CASE("moment vectors of explicit selections") {
    ProblemInstance inst = ProblemInstance::ones(1, Q(1, 3));
    MomentVector v =
        moment_vector(SelectionVector::from_bits(0b11, 2), inst, 2);
    REQUIRE(v.v.size() == 2);
    CHECK(v.v[0] == Q(3, 2));
    CHECK(v.v[1] == Q(13, 18));

    MomentVector z =
        moment_vector(SelectionVector::from_bits(0, 2), inst, 2);
    CHECK(z.v[0] == 0);
    CHECK(z.v[1] == 0);

    MomentVector d = v - z;
    CHECK(d == v);
}

TEST_CASE("grid construction") {
    // L is the largest integer with L^m <= 2^n
    GridSpec g = GridSpec::make(ProblemInstance::ones(2, Q(1, 3)), 1);
    CHECK(g.L == 4);
    CHECK(g.N == 4);
    CHECK(g.h == Q(3, 4));

    GridSpec g2 = GridSpec::make(ProblemInstance::ones(10, Q(1, 4)), 3);
    CHECK(g2.L == 10); // 10^3 = 1000 <= 1024 < 11^3
    CHECK(g2.N == 1000);
    CHECK(g2.h == Q(11, 10));

    GridSpec g3 = GridSpec::make(ProblemInstance::ones(4, Q(1, 3)), 4);
    CHECK(g3.L == 2); // 2^4 = 16 = 2^4
    CHECK(g3.N == 16);

    CHECK_THROWS_AS(GridSpec::make(ProblemInstance::ones(4, Q(1, 3)), 0),
                    InvalidGrid);
    CHECK_THROWS_AS(GridSpec::make(ProblemInstance::ones(4, Q(1, 3)), 5),
                    InvalidGrid);

    // the loose gap dominates the exact cell side
    ProblemInstance inst = ProblemInstance::ones(9, Q(1, 3));
    for (int m = 1; m <= 4; ++m) {
        GridSpec g9 = GridSpec::make(inst, m);
        CHECK(to_double(g9.h) <= GridSpec::loose_gap(inst, m) + 1e-12);
    }
}

TEST_CASE("quantization cells") {
    ProblemInstance inst = ProblemInstance::ones(2, Q(1, 3));
    GridSpec g = GridSpec::make(inst, 1); // h = 3/4, L = 4

    auto cell_of = [&](const Rational& x) {
        MomentVector v;
        v.v = {x};
        return quantize(v, g, inst).idx[0];
    };
    CHECK(cell_of(Q(0)) == 0);
    CHECK(cell_of(Q(3, 2)) == 2);
    CHECK(cell_of(Q(13, 18)) == 0);
    CHECK(cell_of(Q(3, 4)) == 1);  // half-open: boundary goes up
    CHECK(cell_of(Q(3)) == 3);     // top face clamps to L-1
    CHECK_THROWS_AS(cell_of(Q(-1, 2)), OutOfCube);
    CHECK_THROWS_AS(cell_of(Q(7, 2)), OutOfCube);
}

TEST_CASE("memoized table agrees with the direct computation") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(8));
        std::vector<Rational> w(n + 1);
        for (Rational& x : w)
            x = 1 + Rational(static_cast<long>(rng.next_below(9))) / 8;
        ProblemInstance inst(n, Q(2), w, Q(1, 4));
        const int m = 1 + static_cast<int>(rng.next_below(n));
        MomentTable tab(inst, m);
        CHECK(tab.m() == m);
        CHECK(tab.denom() > 0);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j < m; ++j)
                CHECK(tab.scaled_column(i)[j] ==
                      tab.denom() * tab.column(i)[j]);
        for (int t = 0; t < 16; ++t) {
            SelectionVector d =
                SelectionVector::from_bits(rng.next_below(1ull << (n + 1)),
                                           n + 1);
            CHECK(tab.moments(d) == moment_vector(d, inst, m));
        }
    }
}

TEST_CASE("exact moments match adaptive Simpson quadrature") {
    SplitMix64 rng(5150);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(10));
        ProblemInstance inst = ProblemInstance::ones(n, Q(1, 3));
        const int m = 1 + static_cast<int>(rng.next_below(std::min(n, 4)));
        SelectionVector d = SelectionVector::from_bits(
            rng.next_below(1ull << (n + 1)), n + 1);
        MomentVector v = moment_vector(d, inst, m);
        Poly Pt = affine_pullback(assemble(inst, d), inst.a());
        for (int j = 0; j < m; ++j) {
            const double ref = oracle::adaptive_simpson(
                [&](double x) {
                    return Pt.evaluate_double(x) * std::pow(x, j);
                },
                0.0, 1.0, 1e-14);
            CHECK(std::fabs(ref - to_double(v.v[j])) <= 1e-12);
        }
    }
}
