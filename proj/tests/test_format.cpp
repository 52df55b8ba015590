#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sumbounds/format.hpp"
#include "sumbounds/oracle.hpp"
#include "sumbounds/rng.hpp"

using namespace sumbounds;

TEST_CASE("unit roundoffs are the exact powers of two") {
    CHECK(float_format(Precision::half).unit_roundoff == 0x1p-11);
    CHECK(float_format(Precision::single).unit_roundoff == 0x1p-24);
    CHECK(float_format(Precision::dbl).unit_roundoff == 0x1p-53);
    CHECK(float_format(Precision::half).unit_roundoff_exact() == Dyadic::pow2(-11));
    CHECK(float_format(Precision::single).unit_roundoff_exact() == Dyadic::pow2(-24));
    // unit roundoff is half the distance from 1 to the next representable value
    const FloatFormat& h = float_format(Precision::half);
    double next_after_one = 1.0 + 2.0 * h.unit_roundoff;
    CHECK(round_to_format(next_after_one, h).value == next_after_one);
    CHECK(round_to_format(1.0 + h.unit_roundoff * 1.5, h).value == next_after_one);
}

TEST_CASE("format constants") {
    const FloatFormat& h = float_format(Precision::half);
    CHECK(h.precision_bits == 11);
    CHECK(h.max_finite == 65504.0);
    CHECK(h.min_normal == 0x1p-14);
    CHECK(h.min_subnormal == 0x1p-24);
    const FloatFormat& s = float_format(Precision::single);
    CHECK(s.precision_bits == 24);
    CHECK(s.max_finite == static_cast<double>(std::numeric_limits<float>::max()));
    CHECK(float_format_from_label("half").name == Precision::half);
    CHECK_THROWS_AS(float_format_from_label("bfloat16"), invalid_input_error);
}

// The midpoint cases are pinned through the exact-rational oracle first and
// the fast path must agree.
TEST_CASE("ties to even at known half-precision midpoints") {
    const FloatFormat& h = float_format(Precision::half);

    // 2048 + 1: 2049 is the midpoint of the neighbours 2048 and 2050
    auto ex = oracle::round_exact(Rational(2049), h);
    CHECK(ex.value == 2048.0);
    CHECK(round_add({2048.0, Precision::half}, {1.0, Precision::half}).value == 2048.0);

    // 1 + 2^-11: midpoint of 1 and 1 + 2^-10; even mantissa wins, so 1
    Rational mid = Rational(1) + Rational(1, 2048);
    auto ex2 = oracle::round_exact(mid, h);
    CHECK(ex2.value == 1.0);
    CHECK(round_add({1.0, Precision::half}, {0x1p-11, Precision::half}).value == 1.0);

    // and one step above the midpoint rounds up
    Rational above = mid + Rational(1, 1 << 24);
    CHECK(oracle::round_exact(above, h).value == 1.0 + 0x1p-10);
}

TEST_CASE("exactly representable sums round to themselves") {
    CHECK(round_add({1.0f, Precision::single}, {1.0f, Precision::single}).value == 2.0);
    CHECK(round_add({0.5, Precision::half}, {0.25, Precision::half}).value == 0.75);
}

TEST_CASE("round_add rejects mixed formats and non-finite input") {
    CHECK_THROWS_AS(round_add({1.0, Precision::half}, {1.0, Precision::single}),
                    invalid_input_error);
    CHECK_THROWS_AS(
        round_add({HUGE_VAL, Precision::single}, {1.0, Precision::single}),
        invalid_input_error);
}

TEST_CASE("round_add overflow raises") {
    CHECK_THROWS_AS(
        round_add({65504.0, Precision::half}, {65504.0, Precision::half}),
        fp_overflow_error);
    // 65504 + 8: exact 65512 < midpoint 65520, still rounds down to 65504
    CHECK(round_add({65504.0, Precision::half}, {8.0, Precision::half}).value ==
          65504.0);
    // 65504 + 16 = 65520: the midpoint; ties-to-even selects 65536 -> overflow
    CHECK_THROWS_AS(
        round_add({65504.0, Precision::half}, {16.0, Precision::half}),
        fp_overflow_error);
}

TEST_CASE("half rounding handles the subnormal range") {
    const FloatFormat& h = float_format(Precision::half);
    // below the smallest subnormal midpoint rounds to zero
    CHECK(round_to_format(0x1p-26, h).value == 0.0);
    // smallest subnormal survives
    auto r = round_to_format(0x1p-24, h);
    CHECK(r.value == 0x1p-24);
    CHECK(r.subnormal);
    // 1.5 * 2^-24 ties between 2^-24 (odd) and 2^-23 (even)
    CHECK(round_to_format(1.5 * 0x1p-24, h).value == 0x1p-23);
    // subnormal addition is exact
    auto s = round_add({0x1p-24, Precision::half}, {0x1p-24, Precision::half});
    CHECK(s.value == 0x1p-23);
}

TEST_CASE("fast rounding agrees with exact midpoint analysis on random input") {
    Xoshiro256pp rng(2024);
    for (Precision p : {Precision::half, Precision::single}) {
        const FloatFormat& f = float_format(p);
        for (int i = 0; i < 50000; ++i) {
            std::uint64_t bits = rng.next();
            int e = static_cast<int>(bits % 80) - 48;  // spans sub/normal/overflow
            double m = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
            double v = std::ldexp(1.0 + m, e) * ((bits & 2) ? -1.0 : 1.0);
            RoundResult fast = round_to_format(v, f);
            auto slow = oracle::round_exact(rational_from_double(v), f);
            CHECK(fast.overflowed == slow.overflowed);
            if (!fast.overflowed) {
                CHECK(fast.value == slow.value);
                CHECK(fast.subnormal == slow.subnormal);
            }
        }
    }
}

TEST_CASE("round_add is commutative and within one unit roundoff") {
    for (Precision p : {Precision::half, Precision::single}) {
        const FloatFormat& f = float_format(p);
        Dyadic u = f.unit_roundoff_exact();
        ValueStream vs(99, 0, Distribution::normal, f);
        for (int i = 0; i < 4000; ++i) {
            double a = vs.next(), b = vs.next();
            TargetValue ra = round_add({a, p}, {b, p});
            TargetValue rb = round_add({b, p}, {a, p});
            CHECK(ra.value == rb.value);
            // |fl(a+b) - (a+b)| <= u |a+b| in exact arithmetic (normal range)
            Dyadic exact = Dyadic::from_double(a) + Dyadic::from_double(b);
            if (exact.is_zero() ||
                exact.abs() < Dyadic::from_double(f.min_normal))
                continue;
            Dyadic err = (Dyadic::from_double(ra.value) - exact).abs();
            CHECK(err <= exact.abs() * u);
        }
    }
}

TEST_CASE("re-rounding a representable value is the identity") {
    for (Precision p : {Precision::half, Precision::single}) {
        const FloatFormat& f = float_format(p);
        ValueStream vs(7, 0, Distribution::uniform, f);
        for (int i = 0; i < 2000; ++i) {
            double v = vs.next();
            CHECK(round_to_format(v, f).value == v);
        }
    }
}
