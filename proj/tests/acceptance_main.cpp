// Acceptance suite: every criterion prints exactly one PASS/FAIL line with
// the measured quantities. Run all criteria (no arguments) or a single one
// with --criterion N.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sumbounds/csv.hpp"
#include "sumbounds/experiments.hpp"
#include "sumbounds/oracle.hpp"
#include "sumbounds/trace.hpp"

using namespace sumbounds;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

// ---- 1: deterministic domination in exact arithmetic -------------------

Outcome criterion1() {
    const std::size_t grid[] = {10, 100, 1000, 10000};
    const std::size_t traces_per_n = 250;  // 1000 per format
    std::uint64_t violations = 0, total = 0, flagged = 0;

    for (Precision p : {Precision::half, Precision::single}) {
        const FloatFormat& f = float_format(p);
        for (std::size_t n : grid) {
#pragma omp parallel for schedule(dynamic) reduction(+ : violations, total, flagged)
            for (long long t = 0; t < static_cast<long long>(traces_per_n); ++t) {
                Distribution dist =
                    (t % 2 == 0) ? Distribution::normal : Distribution::uniform;
                ValueStream vs(123, static_cast<std::uint64_t>(t), dist, f);
                double zhat = 0.0;
                Dyadic zex, abs_sum, c_sum;
                bool subnormal = false;
                for (std::size_t k = 0; k < n; ++k) {
                    double x = vs.next();
                    if (k == 0) {
                        zhat = x;
                    } else {
                        double pre = zhat + x;
                        RoundResult r = round_sum_double(pre, f);
                        if (r.overflowed) { subnormal = true; break; }
                        if (r.subnormal ||
                            (pre != 0.0 && std::fabs(pre) < f.min_normal))
                            subnormal = true;
                        zhat = r.value;
                    }
                    Dyadic dx = Dyadic::from_double(x);
                    zex += dx;
                    abs_sum += dx.abs();
                    if (k >= 1) c_sum += abs_sum.mul_pow2(-f.precision_bits);
                }
                total += 1;
                if (subnormal) { flagged += 1; continue; }
                Dyadic err = (Dyadic::from_double(zhat) - zex).abs();
                if (err > c_sum) violations += 1;
            }
        }
    }
    std::string d = std::to_string(violations) + " violations in " +
                    std::to_string(total) + " traces (" + std::to_string(flagged) +
                    " subnormal-flagged, skipped)";
    return {violations == 0, d};
}

// ---- 2: exhaustive small-n model check ----------------------------------

Outcome criterion2() {
    std::vector<std::vector<double>> sets;
    sets.push_back({1.0, -0.5, 0x1p-11, -0x1p-12});
    {
        const FloatFormat& f = float_format(Precision::half);
        ValueStream vs(123, 0, Distribution::normal, f);
        std::vector<double> vals;
        while (vals.size() < 4) {
            double v = vs.next();
            if (v != 0.0) vals.push_back(v);
        }
        sets.push_back(vals);
    }
    std::uint64_t cases = 0, bad = 0;
    double max_ratio = 0.0;
    for (const auto& s : sets) {
        auto r = oracle::exhaustive_delta_check(8, Precision::half, s);
        cases += r.cases;
        bad += r.delta_violations + r.theorem_violations;
        max_ratio = std::max(max_ratio, r.max_ratio);
    }
    std::string d = std::to_string(cases) + " vectors at n=8 over two 4-value half sets, " +
                    std::to_string(bad) + " violations, max error/weight ratio " +
                    fmt2(max_ratio);
    return {bad == 0, d};
}

// ---- 3: O(1) recurrence equals the closed form --------------------------

Outcome criterion3() {
    const std::size_t vectors_per_format = 500;
    std::uint64_t mismatches = 0, compared = 0;
    for (Precision p : {Precision::half, Precision::single}) {
        const FloatFormat& f = float_format(p);
        Dyadic u = f.unit_roundoff_exact();
#pragma omp parallel for schedule(dynamic) reduction(+ : mismatches, compared)
        for (long long t = 0; t < static_cast<long long>(vectors_per_format); ++t) {
            Distribution dist =
                (t % 2 == 0) ? Distribution::normal : Distribution::uniform;
            auto x = generate_values(123, static_cast<std::uint64_t>(t), dist, f, 201);
            auto closed = oracle::m_closed_form_all(x, u);
            auto mw = make_m_weights<Dyadic>(f);
            for (std::size_t k = 1; k <= x.size(); ++k) {
                mw.update(Dyadic::from_double(std::fabs(x[k - 1])));
                if (k >= 2) {
                    compared += 1;
                    if (mw.m_current != closed[k - 2]) mismatches += 1;
                }
            }
        }
    }
    std::string d = std::to_string(compared) + " exact comparisons across 1000 vectors, k <= 200, " +
                    std::to_string(mismatches) + " mismatches";
    return {mismatches == 0, d};
}

// ---- 4: single/normal grid reproduction ---------------------------------

Outcome criterion4() {
    ExperimentConfig cfg;
    cfg.format = Precision::single;
    cfg.distribution = Distribution::normal;
    cfg.n_start = 10000;
    cfg.n_end = 1000000;
    cfg.n_step = 10000;
    cfg.failure_prob = 1e-16;
    cfg.seed = 123;
    cfg.det_variant = DetVariant::graphs;
    auto rows = run_sweep(cfg);

    bool a_pass = true;
    double b_lo = HUGE_VAL, b_hi = -HUGE_VAL;
    double c_lo = HUGE_VAL, c_hi = -HUGE_VAL;
    for (const auto& row : rows) {
        const BoundReport& r = row.report;
        if (r.martingale < r.true_err) a_pass = false;
        double gap_b = std::log10(r.martingale) - std::log10(r.true_err);
        b_lo = std::min(b_lo, gap_b);
        b_hi = std::max(b_hi, gap_b);
        double gap_c = std::log10(r.det) - std::log10(r.azuma);
        c_lo = std::min(c_lo, gap_c);
        c_hi = std::max(c_hi, gap_c);
    }
    bool b_pass = b_lo > 0.0 && b_hi <= 2.5;
    bool c_pass = c_lo >= 1.5 && c_hi <= 3.0;
    std::string d = "(a) martingale covers true error at all 100 points: " +
                    std::string(a_pass ? "yes" : "NO") +
                    "; (b) log10 martingale/true range [" + fmt2(b_lo) + ", " +
                    fmt2(b_hi) + "] vs required (0, 2.5]" +
                    "; (c) log10 det(graphs)/azuma range [" + fmt2(c_lo) + ", " +
                    fmt2(c_hi) + "] vs required [1.5, 3]";
    return {a_pass && b_pass && c_pass, d};
}

// ---- 5: half/normal grid: only the martingale bound stays informative ---

Outcome criterion5() {
    ExperimentConfig cfg;
    cfg.format = Precision::half;
    cfg.distribution = Distribution::normal;
    cfg.n_start = 100;
    cfg.n_end = 10000;
    cfg.n_step = 100;
    cfg.failure_prob = 1e-16;
    cfg.seed = 123;
    auto rows = run_sweep(cfg);

    double mart_max = 0.0;
    bool det_exceeds = false, azuma_exceeds = false;
    for (const auto& row : rows) {
        mart_max = std::max(mart_max, row.report.martingale);
        if (row.report.det > 1.0) det_exceeds = true;
        if (row.report.azuma > 1.0) azuma_exceeds = true;
    }
    bool mart_below_one = mart_max < 1.0;
    std::string d = "max martingale bound " + fmt2(mart_max) +
                    " (required < 1 at all 100 points); det/azuma exceed 1 at large n: " +
                    (det_exceeds ? "yes" : "NO") + "/" +
                    (azuma_exceeds ? "yes" : "NO");
    return {mart_below_one && det_exceeds && azuma_exceeds, d};
}

// ---- 6: half/uniform grid: azuma bound dips below the realized error ----

Outcome criterion6() {
    ExperimentConfig cfg;
    cfg.format = Precision::half;
    cfg.distribution = Distribution::uniform;
    cfg.n_start = 100;
    cfg.n_end = 10000;
    cfg.n_step = 100;
    cfg.failure_prob = 1e-16;
    cfg.seed = 123;
    auto rows = run_sweep(cfg);
    std::size_t hits = 0, first_n = 0;
    for (const auto& row : rows) {
        if (!row.report.zero_sum && row.report.azuma < row.report.true_err) {
            if (hits == 0) first_n = row.report.n;
            ++hits;
        }
    }
    std::string d = "azuma < true error at " + std::to_string(hits) +
                    " of 100 grid points" +
                    (hits ? " (first at n=" + std::to_string(first_n) + ")" : "") +
                    "; expected-phenomenon observation";
    return {hits > 0, d};
}

// ---- 7: Monte-Carlo failure rates stay within the budget ----------------

Outcome criterion7() {
    ExperimentConfig cfg;
    cfg.format = Precision::single;
    cfg.distribution = Distribution::normal;
    cfg.n_start = cfg.n_end = cfg.n_step = 100;
    cfg.seed = 123;
    const std::uint64_t trials = 10000;
    bool pass = true;
    std::string d;
    for (double delta : {0.5, 0.1}) {
        cfg.failure_prob = delta;
        for (const char* bound : {"azuma", "martingale"}) {
            auto r = estimate_failure_rate(cfg, bound, 100, trials);
            bool ok = r.cp99_upper <= delta;
            pass = pass && ok;
            if (!d.empty()) d += "; ";
            d += std::string(bound) + "@delta=" + fmt2(delta) + ": " +
                 std::to_string(r.violations) + "/" + std::to_string(trials) +
                 " viol., 99% upper " + fmt2(r.cp99_upper);
        }
    }
    return {pass, d};
}

// ---- 8: one n = 10^7 point computes all three bounds quickly ------------

Outcome criterion8() {
    ExperimentConfig cfg;
    cfg.format = Precision::single;
    cfg.distribution = Distribution::normal;
    cfg.n_start = cfg.n_end = cfg.n_step = 10000000;
    cfg.failure_prob = 1e-16;
    cfg.seed = 123;
    auto t0 = Clock::now();
    auto row = run_point(cfg, 10000000);
    double wall = seconds_since(t0);
    bool finite = std::isfinite(row.report.det) &&
                  std::isfinite(row.report.azuma) &&
                  std::isfinite(row.report.martingale) && row.report.martingale > 0;
    std::string d = "n=1e7 single/normal: all three bounds in " + fmt2(wall) +
                    " s wall (required < 10 s); c path " +
                    fmt2(static_cast<double>(row.time_c_path_ns) * 1e-9) +
                    " s, m path " +
                    fmt2(static_cast<double>(row.time_m_path_ns) * 1e-9) + " s";
    return {finite && wall < 10.0, d};
}

// ---- 9: single/uniform grid: probabilistic bounds track the true error --

Outcome criterion9() {
    ExperimentConfig cfg;
    cfg.format = Precision::single;
    cfg.distribution = Distribution::uniform;
    cfg.n_start = 10000;
    cfg.n_end = 1000000;
    cfg.n_step = 10000;
    cfg.failure_prob = 1e-16;
    cfg.seed = 123;
    auto rows = run_sweep(cfg);
    double worst = 0.0;
    std::size_t worst_n = 0;
    for (const auto& row : rows) {
        for (double b : {row.report.azuma, row.report.martingale}) {
            double gap = std::fabs(std::log10(b) - std::log10(row.report.true_err));
            if (gap > worst) { worst = gap; worst_n = row.report.n; }
        }
    }
    std::string d = "max |log10 bound/true| over both bounds and 100 points: " +
                    fmt2(worst) + " at n=" + std::to_string(worst_n) +
                    " (required <= 1.5)";
    return {worst <= 1.5, d};
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            only = std::atoi(argv[++i]);
    }

    struct Entry {
        int id;
        const char* name;
        Outcome (*fn)();
        double wall_limit;  // seconds; 0 = unconstrained
    };
    const Entry entries[] = {
        {1, "deterministic domination (exact arithmetic)", criterion1, 120},
        {2, "exhaustive small-n model check", criterion2, 60},
        {3, "m recurrence equals closed form", criterion3, 0},
        {4, "single/normal grid reproduction", criterion4, 600},
        {5, "half/normal grid: martingale bound below one", criterion5, 0},
        {6, "half/uniform grid: azuma dips below true error", criterion6, 0},
        {7, "Monte-Carlo failure rates within budget", criterion7, 300},
        {8, "n = 1e7 point in linear time", criterion8, 0},  // asserts 10 s itself
        {9, "single/uniform grid: bounds track true error", criterion9, 0},
    };

    int failures = 0;
    for (const Entry& e : entries) {
        if (only != 0 && e.id != only) continue;
        auto t0 = Clock::now();
        Outcome o = e.fn();
        double wall = seconds_since(t0);
        bool pass = o.pass && (e.wall_limit == 0 || wall < e.wall_limit);
        std::string limit_note;
        if (e.wall_limit > 0)
            limit_note = ", limit " + std::to_string(static_cast<int>(e.wall_limit)) + " s";
        std::printf("criterion %d: %s  %s — %s [%.1f s%s]\n", e.id,
                    pass ? "PASS" : "FAIL", e.name, o.detail.c_str(), wall,
                    limit_note.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    return 0;
}
