#ifndef SUMBOUNDS_RNG_HPP
#define SUMBOUNDS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "sumbounds/format.hpp"

namespace sumbounds {

enum class Distribution { normal, uniform };

inline std::string_view distribution_label(Distribution d) {
    return d == Distribution::normal ? "normal" : "uniform";
}

// Pinned generator so experiment streams are reproducible on every build:
// xoshiro256++ seeded from a splitmix64 chain. Stream identity is
// (seed, trial): trial 0 uses the bare seed, later trials offset it by
// odd multiples of the splitmix increment.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm{seed};
        for (auto& w : s_) w = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

// Stream of target-format values: uniform on [0,1) via 53 random bits, or
// standard normal via Box-Muller on (0,1] x [0,1). Wide doubles are rounded
// once into the target format, so every emitted value is exact in it.
class ValueStream {
public:
    ValueStream(std::uint64_t seed, std::uint64_t trial, Distribution dist,
                const FloatFormat& fmt)
        : rng_(stream_seed(seed, trial)), dist_(dist), fmt_(&fmt) {}

    static std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t trial) {
        return seed + trial * 0x9E3779B97F4A7C15ull;
    }

    double next_wide() {
        if (dist_ == Distribution::uniform)
            return to_unit(rng_.next());
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = to_unit_open(rng_.next());  // (0,1]: log stays finite
        double u2 = to_unit(rng_.next());
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    double next() {
        return round_to_format(next_wide(), *fmt_).value;
    }

private:
    static double to_unit(std::uint64_t x) {
        return static_cast<double>(x >> 11) * 0x1.0p-53;
    }
    static double to_unit_open(std::uint64_t x) {
        return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
    }

    Xoshiro256pp rng_;
    Distribution dist_;
    const FloatFormat* fmt_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

inline std::vector<double> generate_values(std::uint64_t seed, std::uint64_t trial,
                                           Distribution dist, const FloatFormat& fmt,
                                           std::size_t n) {
    ValueStream vs(seed, trial, dist, fmt);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(vs.next());
    return out;
}

}  // namespace sumbounds

#endif
