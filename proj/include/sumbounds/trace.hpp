#ifndef SUMBOUNDS_TRACE_HPP
#define SUMBOUNDS_TRACE_HPP

#include <cstddef>
#include <vector>

#include "sumbounds/exact.hpp"
#include "sumbounds/format.hpp"

namespace sumbounds {

// Per-step record of one sequential summation: computed partial sums in the
// target format next to exact partial sums, with the realized rounding error
// of every addition extracted in exact arithmetic.
//
// Indexing follows the 1-based convention of the recurrences: step k covers
// the addition of x[k], so delta and the per-step relations exist for
// 2 <= k <= n. Vectors here are 0-based; entry i holds step i+1.
struct SummationTrace {
    Precision format;
    std::size_t n = 0;
    std::vector<double> x;
    std::vector<double> z_hat;          // computed partial sums
    std::vector<Dyadic> z_exact;        // exact partial sums
    std::vector<Rational> delta;        // delta[i] is the error of step i+2
    std::vector<std::size_t> subnormal_steps;  // 1-based steps
    bool per_step_retained = true;      // false when n exceeded the retention cap

    // finals, valid in both modes
    double z_hat_final = 0.0;
    Dyadic z_exact_final;

    bool step_is_subnormal(std::size_t k) const {
        for (auto s : subnormal_steps)
            if (s == k) return true;
        return false;
    }
};

struct TraceOptions {
    // Full per-step retention cap; longer inputs keep only finals and flags.
    std::size_t n_trace_max = 100000;
};

SummationTrace run_summation(const std::vector<double>& x, Precision format,
                             const TraceOptions& opts = {});

// delta[k] = zhat_k / (zhat_{k-1} + x_k) - 1 in exact arithmetic, zero by
// convention when the exact intermediate sum is zero.
std::vector<Rational> extract_deltas(const SummationTrace& trace);

// Exact and first-order decompositions of the final error zhat_n - z_n.
struct ErrorDecomposition {
    std::vector<Dyadic> m_terms;   // delta_k * (zhat_{k-1} + x_k), exact
    Dyadic m_total;                // equals zhat_n - z_n exactly
    std::vector<Rational> Z_terms; // delta_k * (exact partial sum k)
    Rational Z_total;
    Rational residual;             // (zhat_n - z_n) - Z_total, second order
};
ErrorDecomposition decompose_error(const SummationTrace& trace);

}  // namespace sumbounds

#endif
