#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "sumbounds/exact.hpp"

using namespace sumbounds;

TEST_CASE("dyadic round trip through double is exact") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1e30, 1e30);
    for (int i = 0; i < 20000; ++i) {
        double v = U(rng) * std::ldexp(1.0, static_cast<int>(rng() % 120) - 60);
        Dyadic d = Dyadic::from_double(v);
        CHECK(d.to_double() == v);
    }
    CHECK(Dyadic::from_double(0.0).is_zero());
    CHECK(Dyadic::from_double(0x1p-1074).to_double() == 0x1p-1074);  // min subnormal
    CHECK(Dyadic::from_double(-0x1.fffffffffffffp1023).to_double() ==
          -0x1.fffffffffffffp1023);
}

TEST_CASE("dyadic arithmetic agrees with double where double is exact") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 5000; ++i) {
        // small integers scaled by powers of two: all ops exact in double too
        double a = static_cast<double>(static_cast<int>(rng() % 2001) - 1000);
        double b = static_cast<double>(static_cast<int>(rng() % 2001) - 1000);
        int e = static_cast<int>(rng() % 21) - 10;
        a = std::ldexp(a, e);
        b = std::ldexp(b, e);
        CHECK((Dyadic::from_double(a) + Dyadic::from_double(b)).to_double() == a + b);
        CHECK((Dyadic::from_double(a) - Dyadic::from_double(b)).to_double() == a - b);
        CHECK((Dyadic::from_double(a) * Dyadic::from_double(b)).to_double() == a * b);
    }
}

TEST_CASE("dyadic addition tracks bits double cannot hold") {
    Dyadic big = Dyadic::from_double(1.0);
    Dyadic tiny = Dyadic::pow2(-100);
    Dyadic s = big + tiny;
    CHECK(s != big);
    CHECK((s - tiny) == big);
    CHECK(s.to_double() == 1.0);  // nearest double loses the tail
}

TEST_CASE("dyadic comparison is a total order consistent with subtraction") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> U(-4.0, 4.0);
    for (int i = 0; i < 5000; ++i) {
        Dyadic a = Dyadic::from_double(U(rng));
        Dyadic b = Dyadic::from_double(U(rng));
        int c = Dyadic::cmp(a, b);
        CHECK(c == (a - b).sign());
    }
}

TEST_CASE("to_double rounds to nearest, ties to even") {
    // 1 + 2^-53 sits exactly on the midpoint between 1 and 1+2^-52
    Dyadic v = Dyadic::from_double(1.0) + Dyadic::pow2(-53);
    CHECK(v.to_double() == 1.0);
    // 1 + 2^-52 + 2^-53 ties to the even neighbour above
    Dyadic w = Dyadic::from_double(1.0 + 0x1p-52) + Dyadic::pow2(-53);
    CHECK(w.to_double() == 1.0 + 0x1p-51);
    // above the midpoint rounds up
    Dyadic u = v + Dyadic::pow2(-80);
    CHECK(u.to_double() == 1.0 + 0x1p-52);
    // below the midpoint rounds down
    Dyadic t = v - Dyadic::pow2(-80);
    CHECK(t.to_double() == 1.0);
}

TEST_CASE("to_double handles double subnormals and overflow") {
    Dyadic sub = Dyadic::pow2(-1074) + Dyadic::pow2(-1075);  // midpoint, even -> 2^-1073? no: tie between 2^-1074 and 2^-1073
    // 1.5 * 2^-1074 is halfway between 2^-1074 (odd mantissa 1) and 2^-1073 (mantissa 2, even)
    CHECK(sub.to_double() == 0x1p-1073);
    CHECK(Dyadic::pow2(-1076).to_double() == 0.0);
    CHECK(std::isinf(Dyadic::pow2(1024).to_double()));
    CHECK(Dyadic::pow2(1023).to_double() == 0x1p1023);
}

TEST_CASE("round_to_bits ties to even at the kept width") {
    // 11 to 3 bits: halfway between 10 (mantissa 101, odd) and 12 (110, even)
    Dyadic v(mpz_class(11), 0);
    CHECK(v.round_to_bits(3) == Dyadic(mpz_class(12), 0));
    Dyadic w(mpz_class(10), 0);  // 101 * 2 after normalization, already 3 bits
    CHECK(w.round_to_bits(3) == w);
    // halfway: 0b1100 to 2 bits: 0b11 and remainder 0 -> stays
    CHECK(Dyadic(mpz_class(12), 0).round_to_bits(2) == Dyadic(mpz_class(12), 0));
    // 0b101 to 2 bits: halfway between 0b10 and 0b11, even target 0b10
    CHECK(Dyadic(mpz_class(5), 0).round_to_bits(2) == Dyadic(mpz_class(4), 0));
    // 0b111 to 2 bits: halfway between 0b11 and 0b100, even target 0b100
    CHECK(Dyadic(mpz_class(7), 0).round_to_bits(2) == Dyadic(mpz_class(8), 0));
}

TEST_CASE("rational conversions are exact both ways for dyadic values") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(-100.0, 100.0);
    for (int i = 0; i < 2000; ++i) {
        double v = U(rng);
        Rational q = rational_from_double(v);
        CHECK(rational_to_double(q) == v);
    }
}

TEST_CASE("rational_to_double rounds non-dyadic rationals to nearest") {
    Rational third(1, 3);
    double d = rational_to_double(third);
    CHECK(d == 1.0 / 3.0);  // hardware division is correctly rounded
    CHECK(rational_to_double(Rational(2, 3)) == 2.0 / 3.0);
    CHECK(rational_to_double(Rational(-1, 7)) == -1.0 / 7.0);
    CHECK(rational_to_double(Rational(0)) == 0.0);
    std::mt19937_64 rng(19);
    for (int i = 0; i < 3000; ++i) {
        long num = static_cast<long>(rng() % 2000001) - 1000000;
        long den = static_cast<long>(rng() % 999983) + 1;
        Rational q(num, den);
        q.canonicalize();
        double want = static_cast<double>(num) / static_cast<double>(den);
        CHECK(rational_to_double(q) == want);
    }
}

TEST_CASE("sqrt_dyadic reproduces sqrt(2) to 40 digits") {
    Dyadic r = sqrt_dyadic(Dyadic(2), 160);
    // reference digits of sqrt(2)
    Rational want(
        "14142135623730950488016887242096980785696718753769480731766797379907/"
        "10000000000000000000000000000000000000000000000000000000000000000000");
    want.canonicalize();
    Rational got = r.to_rational();
    Rational err = got - want;
    if (sgn(err) < 0) err = -err;
    Rational tol(1, 1);
    tol /= Rational("10000000000000000000000000000000000000000");  // 1e-40
    CHECK(err < tol);
}

TEST_CASE("sqrt_dyadic squares back within tolerance") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> U(0.0, 1e6);
    for (int i = 0; i < 300; ++i) {
        Dyadic x = Dyadic::from_double(U(rng));
        Dyadic r = sqrt_dyadic(x, 120);
        Dyadic err = (r * r - x).abs();
        // relative error of r*r stays near 2^-120
        Dyadic tol = x * Dyadic::pow2(-110);
        if (x.is_zero())
            CHECK(err.is_zero());
        else
            CHECK(err <= tol);
    }
}
