#include "sumbounds/format.hpp"

namespace sumbounds {

namespace {

constexpr FloatFormat kHalf{
    Precision::half, 11, -14, 15,
    0x1p-11, 0x1p-14, 0x1p-24, 65504.0,
};
constexpr FloatFormat kSingle{
    Precision::single, 24, -126, 127,
    0x1p-24, 0x1p-126, 0x1p-149, 0x1.fffffep127,
};
constexpr FloatFormat kDouble{
    Precision::dbl, 53, -1022, 1023,
    0x1p-53, 0x1p-1022, 0x1p-1074, 0x1.fffffffffffffp1023,
};

}  // namespace

const FloatFormat& float_format(Precision p) {
    switch (p) {
        case Precision::half: return kHalf;
        case Precision::single: return kSingle;
        case Precision::dbl: return kDouble;
    }
    throw invalid_input_error("unknown precision");
}

const FloatFormat& float_format_from_label(std::string_view label) {
    if (label == "half") return kHalf;
    if (label == "single") return kSingle;
    if (label == "double") return kDouble;
    throw invalid_input_error("unknown precision label: " + std::string(label));
}

RoundResult round_to_format(double v, const FloatFormat& f) {
    if (v == 0.0) return {v, false, false};
    if (!std::isfinite(v)) return {v, true, false};
    if (f.name == Precision::dbl) return {v, false, std::fabs(v) < f.min_normal};
    if (f.name == Precision::single) {
        double r = static_cast<double>(static_cast<float>(v));
        return {r, !std::isfinite(r), r != 0.0 && std::fabs(r) < f.min_normal};
    }
    // Software rounding for half. Quantize onto the grid of representable
    // values at the magnitude of v; nearbyint under the default rounding
    // mode supplies ties-to-even on that integer grid.
    int e = std::ilogb(v);
    double grid;
    if (e < f.exponent_min) {
        grid = f.min_subnormal;
    } else {
        grid = std::ldexp(1.0, e - f.precision_bits + 1);
    }
    double r = std::nearbyint(v / grid) * grid;  // both steps exact
    if (std::fabs(r) > f.max_finite)
        return {v > 0 ? HUGE_VAL : -HUGE_VAL, true, false};
    return {r, false, r != 0.0 && std::fabs(r) < f.min_normal};
}

TargetValue round_add(TargetValue a, TargetValue b) {
    if (a.format != b.format)
        throw invalid_input_error("round_add: operands have different formats");
    if (!std::isfinite(a.value) || !std::isfinite(b.value))
        throw invalid_input_error("round_add: non-finite operand");
    const FloatFormat& f = float_format(a.format);
    RoundResult r = round_sum_double(a.value + b.value, f);
    if (r.overflowed) throw fp_overflow_error();
    return {r.value, a.format};
}

}  // namespace sumbounds
