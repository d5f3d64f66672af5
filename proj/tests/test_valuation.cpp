#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "berk/field.hpp"
#include "berk/monomial.hpp"

using namespace berk;

TEST_CASE("rational round trip") {
    CHECK(rat_to_string(rat_from_string("3/6")) == "1/2");
    CHECK(rat_to_string(rat_from_string("-4/2")) == "-2");
    CHECK(rat_to_string(Rat(7)) == "7");
    CHECK_THROWS_AS(rat_from_string("1/0"), validation_error);
    CHECK_THROWS_AS(rat_from_string("x"), validation_error);
    CHECK_THROWS_AS(rat_from_string(""), validation_error);
}

TEST_CASE("p-adic valuation") {
    CHECK(vp(Rat(8), 2) == 3);
    CHECK(vp(Rat(3, 4), 2) == -2);
    CHECK(vp(Rat(-18), 3) == 2);
    CHECK(vp(Rat(5, 7), 3) == 0);
    CHECK_THROWS_AS(vp(Rat(0), 2), domain_error);
}

TEST_CASE("radius order and arithmetic") {
    Radius z = Radius::zero(), i = Radius::inf();
    Radius half = Radius::exp(Rat(-1)); // p^-1
    Radius one = Radius::one();
    Radius two = Radius::exp(Rat(1));

    CHECK(z < half);
    CHECK(half < one);
    CHECK(one < two);
    CHECK(two < i);
    CHECK(!(i < i));
    CHECK(half * two == one);
    CHECK(z * two == z);
    CHECK(i * half == i);
    CHECK_THROWS_AS(z * i, domain_error);
    CHECK(two.pow(Rat(1, 2)) == Radius::exp(Rat(1, 2)));
    CHECK(z.pow(Rat(3)) == z);
    CHECK(i.pow(Rat(0)) == one);
    CHECK_THROWS_AS(z.pow(Rat(-1)), domain_error);
    CHECK(half.inverse() == two);
    CHECK(z.inverse() == i);
    CHECK(rmax(half, two) == two);
    CHECK(rmin(z, half) == z);
}

TEST_CASE("field absolute value") {
    Field F(2);
    CHECK(F.abs(Rat(8)) == Radius::exp(Rat(-3)));
    CHECK(F.abs(Rat(3, 4)) == Radius::exp(Rat(2)));
    CHECK(F.abs(Rat(0)) == Radius::zero());
    CHECK(F.abs(Rat(5)) == Radius::one());
    CHECK(F.dist(Rat(1), Rat(3)) == Radius::exp(Rat(-1)));
    CHECK_THROWS_AS(Field(4), validation_error);
    CHECK_THROWS_AS(Field(1), validation_error);
}

TEST_CASE("residue") {
    Field F(3);
    CHECK(F.residue(Rat(7)) == 1);
    CHECK(F.residue(Rat(-1)) == 2);
    CHECK(F.residue(Rat(1, 2)) == 2); // 2*2 = 4 = 1 mod 3
    CHECK_THROWS_AS(F.residue(Rat(1, 3)), domain_error);
}

TEST_CASE("abs is multiplicative and ultrametric") {
    Field F(5);
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> d(-400, 400);
    for (int k = 0; k < 500; ++k) {
        int an = d(rng), ad = d(rng), bn = d(rng), bd = d(rng);
        if (ad == 0 || bd == 0) continue;
        Rat a(an, ad), b(bn, bd);
        a.canonicalize();
        b.canonicalize();
        CHECK(F.abs(a * b) == F.abs(a) * F.abs(b));
        CHECK(F.abs(a + b) <= rmax(F.abs(a), F.abs(b)));
        if (F.abs(a) != F.abs(b))
            CHECK(F.abs(a + b) == rmax(F.abs(a), F.abs(b)));
    }
}

TEST_CASE("radius order is total on random triples") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> d(-6, 6);
    auto pick = [&]() -> Radius {
        int k = d(rng);
        if (k == -6) return Radius::zero();
        if (k == 6) return Radius::inf();
        int den = 1 + (std::abs(d(rng)) % 3);
        return Radius::exp(Rat(k, den));
    };
    for (int k = 0; k < 300; ++k) {
        Radius a = pick(), b = pick(), c = pick();
        // exactly one of <, ==, > holds
        int rel = (a < b) + (a == b) + (b < a);
        CHECK(rel == 1);
        if (a < b && b < c) CHECK(a < c);
        if (a <= b && b <= a) CHECK(a == b);
    }
}

TEST_CASE("monomial evaluation and crossing") {
    Monomial m1{Radius::exp(Rat(-1)), Rat(1)};  // p^-1 * t
    Monomial m2{Radius::exp(Rat(-3)), Rat(3)};  // p^-3 * t^3
    CHECK(m1.eval(Radius::one()) == Radius::exp(Rat(-1)));
    CHECK(m1.eval(Radius::zero()) == Radius::zero());
    CHECK(m1.eval(Radius::inf()) == Radius::inf());
    CHECK(Monomial::constant(Radius::one()).eval(Radius::zero()) == Radius::one());

    auto t = crossing(m1, m2);
    REQUIRE(t.has_value());
    CHECK(*t == Radius::exp(Rat(1)));
    CHECK(m1.eval(*t) == m2.eval(*t));

    CHECK(!crossing(m1, m1).has_value());
    CHECK(!crossing(m1, Monomial::constant(Radius::zero())).has_value());

    // random crossings satisfy the defining equation exactly
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int k = 0; k < 200; ++k) {
        Monomial a{Radius::exp(Rat(d(rng), 2)), Rat(1 + std::abs(d(rng)))};
        Monomial b{Radius::exp(Rat(d(rng), 3)), Rat(1 + std::abs(d(rng)))};
        auto x = crossing(a, b);
        if (!x) {
            CHECK(a.deg == b.deg);
            continue;
        }
        CHECK(a.eval(*x) == b.eval(*x));
    }

    CHECK((m1 * m2) == Monomial{Radius::exp(Rat(-4)), Rat(4)});
    CHECK(m2.powed(Rat(1, 3)) == Monomial{Radius::exp(Rat(-1)), Rat(1)});
}
