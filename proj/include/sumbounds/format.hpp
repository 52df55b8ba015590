#ifndef SUMBOUNDS_FORMAT_HPP
#define SUMBOUNDS_FORMAT_HPP

#include <cmath>
#include <string>
#include <string_view>

#include "sumbounds/errors.hpp"
#include "sumbounds/exact.hpp"

namespace sumbounds {

enum class Precision { half, single, dbl };

// A target IEEE binary format. Values of every supported format embed
// exactly in double, so a TargetValue carries a double plus the format it
// is exact in. All arithmetic is round-to-nearest, ties to even.
struct FloatFormat {
    Precision name;
    int precision_bits;   // significand width t, implicit bit included
    int exponent_min;     // smallest normal exponent
    int exponent_max;     // largest normal exponent
    double unit_roundoff; // 2^-t, exact in double
    double min_normal;    // 2^exponent_min
    double min_subnormal; // 2^(exponent_min - t + 1)
    double max_finite;

    Dyadic unit_roundoff_exact() const { return Dyadic::pow2(-precision_bits); }
    std::string_view label() const {
        switch (name) {
            case Precision::half: return "half";
            case Precision::single: return "single";
            case Precision::dbl: return "double";
        }
        return "?";
    }
};

const FloatFormat& float_format(Precision p);
const FloatFormat& float_format_from_label(std::string_view label);

inline double unit_roundoff(const FloatFormat& f) { return f.unit_roundoff; }

// Round an exact real (held in a double, which is exact for every input we
// construct) into the target format, to nearest with ties to even. Overflow
// reports through the returned flag rather than saturating.
struct RoundResult {
    double value;
    bool overflowed;
    bool subnormal;  // nonzero result below the normal range
};
RoundResult round_to_format(double v, const FloatFormat& f);

struct TargetValue {
    double value;
    Precision format;
};

// fl(a + b) in the shared format of a and b. The intermediate sum is formed
// in double -- exact for half operands, and for single operands the double
// result re-rounds to the same binary32 value a one-step rounding of the
// exact sum would give -- then rounded once into the target format.
TargetValue round_add(TargetValue a, TargetValue b);

// Internal fast path used by the summation loops; v must be the
// double-precision sum of two in-format values.
inline RoundResult round_sum_double(double v, const FloatFormat& f) {
    if (f.name == Precision::dbl)
        return {v, !std::isfinite(v), v != 0.0 && std::fabs(v) < f.min_normal};
    if (f.name == Precision::single) {
        double r = static_cast<double>(static_cast<float>(v));
        return {r, !std::isfinite(r), r != 0.0 && std::fabs(r) < f.min_normal};
    }
    return round_to_format(v, f);
}

}  // namespace sumbounds

#endif
