#ifndef SUMBOUNDS_ACCUM_HPP
#define SUMBOUNDS_ACCUM_HPP

#include <cstddef>
#include <type_traits>

#include "sumbounds/exact.hpp"
#include "sumbounds/format.hpp"

namespace sumbounds {

// Streaming weights for the deterministic and Azuma bounds, O(1) per element:
//   abs_sum  = sum of |x_l|, l <= k
//   c_sum    = sum of c_j with c_1 = 0 and c_j = u * (sum of |x_l|, l <= j)
//   c_sq_sum = sum of c_j^2
template <class Real>
struct CWeights {
    std::size_t k = 0;
    Real u{};
    Real abs_sum{};
    Real c_sum{};
    Real c_sq_sum{};

    void update(const Real& abs_x) {
        k += 1;
        abs_sum += abs_x;
        if (k < 2) return;  // c_1 = 0
        Real c = u * abs_sum;
        c_sum += c;
        c_sq_sum += c * c;
    }
};

// Streaming weights for the martingale bound:
//   m_1 = |x_1| + |x_2|,  m_j = m_{j-1}(1+u) + |x_{j+1}| for j >= 2,
//   m_sq_sum = sum of m_j^2 over j <= k-1.
// The recurrence reproduces the closed form
//   m_j = |x_1|(1+u)^(j-1) + sum_{i=2..j+1} |x_i|(1+u)^(j-i+1)
// exactly, which keeps the whole m path linear in n.
template <class Real>
struct MWeights {
    std::size_t k = 0;
    Real one_plus_u{};
    Real m_current{};  // m_{k-1} once k >= 2
    Real m_sq_sum{};

    void update(const Real& abs_x) {
        k += 1;
        if (k == 1) { m_current = abs_x; return; }
        if (k == 2)
            m_current += abs_x;
        else
            m_current = m_current * one_plus_u + abs_x;
        m_sq_sum += m_current * m_current;
    }
};

// Combined per-element update; with Real = Dyadic every field is exact.
template <class Real>
struct BoundAccumulators {
    CWeights<Real> c;
    MWeights<Real> m;

    void update(const Real& abs_x) {
        c.update(abs_x);
        m.update(abs_x);
    }

    std::size_t k() const { return c.k; }
    const Real& u() const { return c.u; }
    const Real& abs_sum() const { return c.abs_sum; }
    const Real& c_sum() const { return c.c_sum; }
    const Real& c_sq_sum() const { return c.c_sq_sum; }
    const Real& m_current() const { return m.m_current; }
    const Real& m_sq_sum() const { return m.m_sq_sum; }
};

template <class Real>
CWeights<Real> make_c_weights(const FloatFormat& f) {
    CWeights<Real> w;
    if constexpr (std::is_same_v<Real, double>)
        w.u = f.unit_roundoff;
    else
        w.u = f.unit_roundoff_exact();
    return w;
}

template <class Real>
MWeights<Real> make_m_weights(const FloatFormat& f) {
    MWeights<Real> w;
    if constexpr (std::is_same_v<Real, double>)
        w.one_plus_u = 1.0 + f.unit_roundoff;
    else
        w.one_plus_u = Dyadic(1) + f.unit_roundoff_exact();
    return w;
}

template <class Real>
BoundAccumulators<Real> make_accumulators(const FloatFormat& f) {
    return BoundAccumulators<Real>{make_c_weights<Real>(f), make_m_weights<Real>(f)};
}

inline double to_working(double v) { return v; }
inline double to_working(const Dyadic& v) { return v.to_double(); }

}  // namespace sumbounds

#endif
