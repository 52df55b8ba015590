#include "sumbounds/experiments.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sumbounds {

void ExperimentConfig::validate() const {
    if (n_start == 0 || n_end == 0 || n_step == 0)
        throw config_error("n grid values must be positive");
    if (n_start < n_step)
        throw config_error("n_start must be at least n_step");
    if (n_start > n_end)
        throw config_error("n_start must not exceed n_end");
    if ((n_end - n_start) % n_step != 0)
        throw config_error("n_step must divide n_end - n_start");
    if (!(failure_prob > 0.0 && failure_prob < 1.0))
        throw config_error("failure probability must lie in (0,1)");
    if (trials_per_point == 0)
        throw config_error("trials_per_point must be positive");
}

std::size_t ExperimentConfig::point_count() const {
    return (n_end - n_start) / n_step + 1;
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ns(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0)
        .count();
}

struct FloatPath {
    double zhat = 0.0;
    Dyadic z_exact;
    Dyadic abs_exact;
    bool subnormal = false;
    bool overflow = false;
};

// One sequential pass: target-format sum, exact sum, exact 1-norm. The
// caller's accumulator sees |x_k| once per element.
template <class Weights>
FloatPath stream_pass(const ExperimentConfig& cfg, std::size_t n, std::size_t trial,
                      const FloatFormat& fmt, Weights& weights) {
    ValueStream vs(cfg.seed, trial, cfg.distribution, fmt);
    FloatPath p;
    for (std::size_t k = 0; k < n; ++k) {
        double x = vs.next();
        double ax = std::fabs(x);
        if (k == 0) {
            p.zhat = x;
        } else {
            double pre = p.zhat + x;
            RoundResult r = round_sum_double(pre, fmt);
            if (r.overflowed) { p.overflow = true; break; }
            if (r.subnormal || (pre != 0.0 && std::fabs(pre) < fmt.min_normal))
                p.subnormal = true;
            p.zhat = r.value;
        }
        p.z_exact += Dyadic::from_double(x);
        p.abs_exact += Dyadic::from_double(ax);
        weights.update(ax);
    }
    return p;
}

template <class Weights>
void stream_pass_exact(const ExperimentConfig& cfg, std::size_t n, std::size_t trial,
                       const FloatFormat& fmt, Weights& weights, FloatPath& p) {
    ValueStream vs(cfg.seed, trial, cfg.distribution, fmt);
    for (std::size_t k = 0; k < n; ++k) {
        double x = vs.next();
        if (k == 0) {
            p.zhat = x;
        } else {
            double pre = p.zhat + x;
            RoundResult r = round_sum_double(pre, fmt);
            if (r.overflowed) { p.overflow = true; break; }
            if (r.subnormal || (pre != 0.0 && std::fabs(pre) < fmt.min_normal))
                p.subnormal = true;
            p.zhat = r.value;
        }
        Dyadic dx = Dyadic::from_double(x);
        p.z_exact += dx;
        p.abs_exact += dx.abs();
        weights.update(dx.abs());
    }
}

double true_error_relative(double zhat, const Dyadic& z_exact) {
    Dyadic diff = Dyadic::from_double(zhat) - z_exact;
    return std::fabs(diff.to_double()) / std::fabs(z_exact.to_double());
}

template <class Real>
SweepRow run_point_impl(const ExperimentConfig& cfg, std::size_t n, std::size_t trial) {
    const FloatFormat& fmt = float_format(cfg.format);
    SweepRow row;
    row.trial = trial;
    row.seed = cfg.seed;
    BoundReport& rep = row.report;
    rep.n = n;
    rep.failure_prob = cfg.failure_prob;
    rep.det_variant = cfg.det_variant;
    rep.format_label = fmt.label();
    rep.distribution_label = distribution_label(cfg.distribution);

    // c path: deterministic and Azuma weights plus the reference sums
    auto c_weights = make_c_weights<Real>(fmt);
    FloatPath cp;
    auto t0 = Clock::now();
    if constexpr (std::is_same_v<Real, double>) {
        cp = stream_pass(cfg, n, trial, fmt, c_weights);
    } else {
        stream_pass_exact(cfg, n, trial, fmt, c_weights, cp);
    }
    row.time_c_path_ns = elapsed_ns(t0);

    // m path: martingale weights, streamed independently over the same values
    auto m_weights = make_m_weights<Real>(fmt);
    FloatPath mp;
    t0 = Clock::now();
    if constexpr (std::is_same_v<Real, double>) {
        mp = stream_pass(cfg, n, trial, fmt, m_weights);
    } else {
        stream_pass_exact(cfg, n, trial, fmt, m_weights, mp);
    }
    row.time_m_path_ns = elapsed_ns(t0);

    rep.overflow = cp.overflow || mp.overflow;
    rep.subnormal = cp.subnormal;
    rep.z_n_exact = cp.z_exact.to_rational();
    rep.sum_abs_exact = cp.abs_exact.to_rational();
    if (rep.overflow) {
        rep.true_err = rep.det = rep.azuma = rep.martingale =
            std::numeric_limits<double>::quiet_NaN();
        return row;
    }

    if (cp.z_exact.is_zero()) {
        rep.zero_sum = true;
        // absolute-error report: same numerators, denominator dropped
        rep.true_err = std::fabs(cp.zhat);
        rep.det = to_working(c_weights.c_sum);
        if (cfg.det_variant == DetVariant::graphs)
            rep.det *= std::sqrt(static_cast<double>(n));
        rep.azuma = concentration_radius(to_working(c_weights.c_sq_sum),
                                         cfg.failure_prob);
        rep.martingale = fmt.unit_roundoff *
                         concentration_radius(to_working(m_weights.m_sq_sum),
                                              cfg.failure_prob);
        return row;
    }

    double abs_z = std::fabs(cp.z_exact.to_double());
    rep.true_err = true_error_relative(cp.zhat, cp.z_exact);
    rep.det = det_bound_value(to_working(c_weights.c_sum), n, abs_z, cfg.det_variant);
    rep.azuma = azuma_bound_value(to_working(c_weights.c_sq_sum), abs_z,
                                  cfg.failure_prob);
    rep.martingale = martingale_bound_value(fmt.unit_roundoff,
                                            to_working(m_weights.m_sq_sum), abs_z,
                                            cfg.failure_prob);
    return row;
}

}  // namespace

SweepRow run_point(const ExperimentConfig& cfg, std::size_t n, std::size_t trial) {
    if (n == 0) throw config_error("run_point: n must be positive");
    if (cfg.exact_accumulators) return run_point_impl<Dyadic>(cfg, n, trial);
    return run_point_impl<double>(cfg, n, trial);
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, bool parallel) {
    cfg.validate();
    const std::size_t points = cfg.point_count();
    const std::size_t trials = cfg.trials_per_point;
    std::vector<SweepRow> rows(points * trials);

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long i = 0; i < static_cast<long long>(rows.size()); ++i) {
        std::size_t pi = static_cast<std::size_t>(i) / trials;
        std::size_t trial = static_cast<std::size_t>(i) % trials;
        std::size_t n = cfg.n_start + pi * cfg.n_step;
        rows[static_cast<std::size_t>(i)] = run_point(cfg, n, trial);
    }
    return rows;
}

namespace {

// log of the binomial CDF P(X <= v) at success probability p
double log_binom_cdf(std::uint64_t v, std::uint64_t n, double p) {
    double lp = std::log(p), lq = std::log1p(-p);
    double lmax = -HUGE_VAL;
    std::vector<double> terms;
    terms.reserve(v + 1);
    for (std::uint64_t i = 0; i <= v; ++i) {
        double lt = std::lgamma(static_cast<double>(n) + 1) -
                    std::lgamma(static_cast<double>(i) + 1) -
                    std::lgamma(static_cast<double>(n - i) + 1) +
                    static_cast<double>(i) * lp + static_cast<double>(n - i) * lq;
        terms.push_back(lt);
        if (lt > lmax) lmax = lt;
    }
    double s = 0.0;
    for (double lt : terms) s += std::exp(lt - lmax);
    return lmax + std::log(s);
}

}  // namespace

double clopper_pearson_upper(std::uint64_t successes, std::uint64_t trials,
                             double confidence) {
    if (trials == 0) throw std::domain_error("clopper_pearson_upper: no trials");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw std::domain_error("clopper_pearson_upper: confidence outside (0,1)");
    if (successes >= trials) return 1.0;
    const double alpha = 1.0 - confidence;
    // p_u solves P(X <= successes | trials, p_u) = alpha
    double lo = static_cast<double>(successes) / static_cast<double>(trials);
    double hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= 0.0 || mid >= 1.0) break;
        double c = log_binom_cdf(successes, trials, mid);
        if (c > std::log(alpha))
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

FailureRateReport estimate_failure_rate(const ExperimentConfig& cfg,
                                        std::string_view bound_id, std::size_t n,
                                        std::uint64_t trials, bool parallel) {
    if (trials == 0) throw config_error("estimate_failure_rate: trials must be positive");
    bool want_azuma = bound_id == "azuma";
    bool want_mart = bound_id == "martingale";
    if (!want_azuma && !want_mart)
        throw config_error("estimate_failure_rate: bound_id must be azuma or martingale");
    const FloatFormat& fmt = float_format(cfg.format);

    std::uint64_t violations = 0, zero_sums = 0;

#pragma omp parallel for schedule(static) reduction(+ : violations, zero_sums) \
    if (parallel)
    for (long long t = 0; t < static_cast<long long>(trials); ++t) {
        ValueStream vs(cfg.seed, static_cast<std::uint64_t>(t), cfg.distribution, fmt);
        double zhat = 0.0;
        Dyadic zex;
        auto cw = make_c_weights<double>(fmt);
        auto mw = make_m_weights<double>(fmt);
        bool overflow = false;
        for (std::size_t k = 0; k < n; ++k) {
            double x = vs.next();
            if (k == 0) {
                zhat = x;
            } else {
                RoundResult r = round_sum_double(zhat + x, fmt);
                if (r.overflowed) { overflow = true; break; }
                zhat = r.value;
            }
            zex += Dyadic::from_double(x);
            double ax = std::fabs(x);
            if (want_azuma) cw.update(ax);
            if (want_mart) mw.update(ax);
        }
        if (overflow) continue;
        if (zex.is_zero()) { zero_sums += 1; continue; }
        double abs_z = std::fabs(zex.to_double());
        double tru = std::fabs((Dyadic::from_double(zhat) - zex).to_double()) / abs_z;
        double bound = want_azuma
                           ? azuma_bound_value(cw.c_sq_sum, abs_z, cfg.failure_prob)
                           : martingale_bound_value(fmt.unit_roundoff, mw.m_sq_sum,
                                                    abs_z, cfg.failure_prob);
        if (tru > bound) violations += 1;
    }

    FailureRateReport r;
    r.bound_id = std::string(bound_id);
    r.failure_prob = cfg.failure_prob;
    r.trials = trials;
    r.violations = violations;
    r.zero_sum_trials = zero_sums;
    r.empirical_rate = Rational(static_cast<unsigned long>(violations),
                                static_cast<unsigned long>(trials));
    r.empirical_rate.canonicalize();
    r.cp99_upper = clopper_pearson_upper(violations, trials, 0.99);
    r.n = n;
    r.config = cfg;
    return r;
}

}  // namespace sumbounds
