#ifndef SUMBOUNDS_BOUNDS_HPP
#define SUMBOUNDS_BOUNDS_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sumbounds/accum.hpp"
#include "sumbounds/errors.hpp"

namespace sumbounds {

// The deterministic bound exists in two shapes that differ by a sqrt(n)
// factor; both are kept and every report records which one was used.
enum class DetVariant { theorem, graphs };

inline std::string_view det_variant_label(DetVariant v) {
    return v == DetVariant::theorem ? "theorem" : "graphs";
}

// sqrt(2 ln(2/delta)) * sqrt(weights_sq_sum); exactly zero for zero weights.
inline double concentration_radius(double weights_sq_sum, double failure_prob) {
    if (!(failure_prob > 0.0 && failure_prob < 1.0))
        throw std::domain_error("concentration_radius: failure probability outside (0,1)");
    if (weights_sq_sum < 0.0)
        throw std::domain_error("concentration_radius: negative weight sum");
    if (weights_sq_sum == 0.0) return 0.0;
    return std::sqrt(2.0 * std::log(2.0 / failure_prob)) * std::sqrt(weights_sq_sum);
}

// Scalar forms used by the streaming paths.
inline double det_bound_value(double c_sum, std::size_t n, double abs_z, DetVariant v) {
    if (abs_z == 0.0) throw zero_sum_error();
    double b = c_sum / abs_z;
    if (v == DetVariant::graphs) b *= std::sqrt(static_cast<double>(n));
    return b;
}
inline double azuma_bound_value(double c_sq_sum, double abs_z, double failure_prob) {
    if (abs_z == 0.0) throw zero_sum_error();
    return concentration_radius(c_sq_sum, failure_prob) / abs_z;
}
inline double martingale_bound_value(double u, double m_sq_sum, double abs_z,
                                     double failure_prob) {
    if (abs_z == 0.0) throw zero_sum_error();
    return u * concentration_radius(m_sq_sum, failure_prob) / abs_z;
}

// Accumulator-level forms.
template <class Real>
double det_bound(const BoundAccumulators<Real>& acc, double abs_z, DetVariant v) {
    return det_bound_value(to_working(acc.c_sum()), acc.k(), std::fabs(abs_z), v);
}
template <class Real>
double azuma_bound(const BoundAccumulators<Real>& acc, double abs_z, double failure_prob) {
    return azuma_bound_value(to_working(acc.c_sq_sum()), std::fabs(abs_z), failure_prob);
}
template <class Real>
double martingale_bound(const BoundAccumulators<Real>& acc, double abs_z,
                        double failure_prob) {
    return martingale_bound_value(to_working(acc.u()), to_working(acc.m_sq_sum()),
                                  std::fabs(abs_z), failure_prob);
}

// Everything one analysis of a single vector produces. When zero_sum is set
// the bound fields and true_err hold absolute rather than relative values.
struct BoundReport {
    std::size_t n = 0;
    double true_err = 0.0;
    double det = 0.0;
    double azuma = 0.0;
    double martingale = 0.0;
    double failure_prob = 0.0;
    DetVariant det_variant = DetVariant::theorem;
    Rational z_n_exact;
    Rational sum_abs_exact;
    std::string format_label;
    std::string distribution_label;
    bool zero_sum = false;
    bool subnormal = false;
    bool overflow = false;
};

}  // namespace sumbounds

#endif
