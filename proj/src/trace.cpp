#include "sumbounds/trace.hpp"

#include <cmath>

#include "sumbounds/errors.hpp"

namespace sumbounds {

SummationTrace run_summation(const std::vector<double>& x, Precision format,
                             const TraceOptions& opts) {
    if (x.empty()) throw invalid_input_error("run_summation: empty input");
    const FloatFormat& f = float_format(format);
    for (double v : x)
        if (!std::isfinite(v))
            throw invalid_input_error("run_summation: non-finite input value");

    SummationTrace t;
    t.format = format;
    t.n = x.size();
    t.per_step_retained = x.size() <= opts.n_trace_max;

    double zhat = x[0];
    Dyadic zex = Dyadic::from_double(x[0]);
    if (t.per_step_retained) {
        t.x = x;
        t.z_hat.reserve(x.size());
        t.z_exact.reserve(x.size());
        t.z_hat.push_back(zhat);
        t.z_exact.push_back(zex);
    }

    for (std::size_t i = 1; i < x.size(); ++i) {
        double pre = zhat + x[i];
        RoundResult r = round_sum_double(pre, f);
        if (r.overflowed) throw fp_overflow_error(i + 1);
        if (r.subnormal || (pre != 0.0 && std::fabs(pre) < f.min_normal))
            t.subnormal_steps.push_back(i + 1);
        zhat = r.value;
        zex += Dyadic::from_double(x[i]);
        if (t.per_step_retained) {
            t.z_hat.push_back(zhat);
            t.z_exact.push_back(zex);
        }
    }
    t.z_hat_final = zhat;
    t.z_exact_final = zex;
    if (t.per_step_retained) t.delta = extract_deltas(t);
    return t;
}

std::vector<Rational> extract_deltas(const SummationTrace& trace) {
    if (!trace.per_step_retained)
        throw invalid_input_error("extract_deltas: per-step data not retained");
    std::vector<Rational> deltas;
    deltas.reserve(trace.n > 0 ? trace.n - 1 : 0);
    for (std::size_t i = 1; i < trace.n; ++i) {
        // exact intermediate sum zhat_{k-1} + x_k
        Dyadic pre = Dyadic::from_double(trace.z_hat[i - 1]) +
                     Dyadic::from_double(trace.x[i]);
        if (pre.is_zero()) {
            deltas.emplace_back(0);
            continue;
        }
        Rational d = rational_from_double(trace.z_hat[i]) / pre.to_rational();
        d -= 1;
        deltas.push_back(std::move(d));
    }
    return deltas;
}

ErrorDecomposition decompose_error(const SummationTrace& trace) {
    if (!trace.per_step_retained)
        throw invalid_input_error("decompose_error: per-step data not retained");
    ErrorDecomposition d;
    d.Z_total = 0;
    d.residual = 0;
    d.m_terms.reserve(trace.n > 0 ? trace.n - 1 : 0);
    d.Z_terms.reserve(trace.n > 0 ? trace.n - 1 : 0);
    for (std::size_t i = 1; i < trace.n; ++i) {
        // delta_k (zhat_{k-1} + x_k) = zhat_k - (zhat_{k-1} + x_k), exact
        Dyadic pre = Dyadic::from_double(trace.z_hat[i - 1]) +
                     Dyadic::from_double(trace.x[i]);
        Dyadic m_term = Dyadic::from_double(trace.z_hat[i]) - pre;
        d.m_total += m_term;
        d.m_terms.push_back(std::move(m_term));

        Rational z_term = trace.delta[i - 1] * trace.z_exact[i].to_rational();
        d.Z_total += z_term;
        d.Z_terms.push_back(std::move(z_term));
    }
    Rational err = (Dyadic::from_double(trace.z_hat_final) - trace.z_exact_final)
                       .to_rational();
    d.residual = err - d.Z_total;
    return d;
}

}  // namespace sumbounds
