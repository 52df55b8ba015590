#ifndef SUMBOUNDS_ORACLE_HPP
#define SUMBOUNDS_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sumbounds/exact.hpp"
#include "sumbounds/format.hpp"

namespace sumbounds::oracle {

// Reference computations the rest of the project is tested against. Nothing
// here shares code with the streaming implementation paths.

using ExactScalar = Rational;

// Exact sum of the inputs (each input is an exact dyadic rational).
ExactScalar exact_sum(const std::vector<double>& x);

// Independently coded Neumaier compensated summation; cross-check for
// exact_sum, not a substitute for it.
double compensated_sum(const std::vector<double>& x);

// Emulated wide-float accumulation: round to `sig_bits` after every add.
// Performance-parity reference next to the exact path; 256 bits by default.
Dyadic widefloat_sum(const std::vector<double>& x, unsigned sig_bits = 256);

// Closed form m_k = |x_1|(1+u)^(k-1) + sum_{j=2..k+1} |x_j|(1+u)^(k-j+1),
// evaluated exactly. Valid for 1 <= k <= n-1.
Dyadic m_closed_form(const std::vector<double>& x, std::size_t k, const Dyadic& u);

// All of m_1 .. m_{n-1} from the same closed form with shared power tables.
std::vector<Dyadic> m_closed_form_all(const std::vector<double>& x, const Dyadic& u);

// Envelope |x_1|(1+u)^(k-1) + sum_{j=2..k} |x_j|(1+u)^(k-j+1) bounding the
// k-th computed partial sum. Valid for 1 <= k <= n.
Dyadic zhat_envelope(const std::vector<double>& x, std::size_t k, const Dyadic& u);

// Round an exact rational to the target format by midpoint analysis in
// integer arithmetic: the independent reference for every fast rounding path.
struct ExactRound {
    double value;
    bool overflowed;
    bool subnormal;
};
ExactRound round_exact(const Rational& v, const FloatFormat& f);

// Enumerates every vector of length n over the given value set and checks,
// in exact arithmetic, that each step error satisfies |delta_k| <= u and the
// final error satisfies |zhat_n - z_n| <= sum c_k. A violation is reported
// with the first witnessing vector in enumeration order.
struct ExhaustiveReport {
    std::uint64_t cases = 0;
    std::uint64_t zero_sum_cases = 0;
    std::uint64_t subnormal_cases = 0;
    std::uint64_t delta_violations = 0;
    std::uint64_t theorem_violations = 0;
    double max_ratio = 0.0;  // max |zhat_n - z_n| / sum c_k over nonzero weights
    std::vector<double> witness;

    bool clean() const { return delta_violations == 0 && theorem_violations == 0; }
};
ExhaustiveReport exhaustive_delta_check(std::size_t n, Precision format,
                                        const std::vector<double>& value_set,
                                        bool parallel = true);

}  // namespace sumbounds::oracle

#endif
