// Compares the parallel experiment kernels against their serial references
// and the per-element cost of the c path versus the m path.
#include <chrono>
#include <cstdio>
#include <string>

#include "sumbounds/experiments.hpp"

using namespace sumbounds;
using Clock = std::chrono::steady_clock;

static double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int main(int argc, char** argv) {
    bool big = argc > 1 && std::string(argv[1]) == "--big";

    std::printf("%-44s %10s %10s %8s\n", "kernel", "serial[s]", "parallel[s]",
                "speedup");

    {
        ExperimentConfig cfg;
        cfg.format = Precision::single;
        cfg.distribution = Distribution::normal;
        cfg.n_start = 10000;
        cfg.n_end = 100000;
        cfg.n_step = 10000;
        cfg.trials_per_point = 2;
        auto t0 = Clock::now();
        auto serial = run_sweep(cfg, false);
        double ts = seconds_since(t0);
        t0 = Clock::now();
        auto parallel = run_sweep(cfg, true);
        double tp = seconds_since(t0);
        bool same = serial.size() == parallel.size();
        for (std::size_t i = 0; same && i < serial.size(); ++i)
            same = serial[i].report.true_err == parallel[i].report.true_err &&
                   serial[i].report.martingale == parallel[i].report.martingale;
        std::printf("%-44s %10.3f %10.3f %7.2fx %s\n",
                    "sweep single/normal 1e4..1e5 x2 trials", ts, tp, ts / tp,
                    same ? "" : "MISMATCH");
    }

    {
        ExperimentConfig cfg;
        cfg.format = Precision::single;
        cfg.distribution = Distribution::normal;
        cfg.n_start = cfg.n_end = cfg.n_step = 100;
        cfg.failure_prob = 0.5;
        auto t0 = Clock::now();
        auto rs = estimate_failure_rate(cfg, "azuma", 100, 20000, false);
        double ts = seconds_since(t0);
        t0 = Clock::now();
        auto rp = estimate_failure_rate(cfg, "azuma", 100, 20000, true);
        double tp = seconds_since(t0);
        std::printf("%-44s %10.3f %10.3f %7.2fx %s\n",
                    "failure-rate azuma n=100 x20000 trials", ts, tp, ts / tp,
                    rs.violations == rp.violations ? "" : "MISMATCH");
    }

    {
        std::size_t n = big ? 10000000 : 1000000;
        ExperimentConfig cfg;
        cfg.format = Precision::single;
        cfg.distribution = Distribution::normal;
        cfg.n_start = cfg.n_end = cfg.n_step = n;
        auto row = run_point(cfg, n);
        std::printf("\nper-element path cost at n=%zu:\n", n);
        std::printf("  c path (det+azuma+reference sums): %7.1f ns/elem\n",
                    static_cast<double>(row.time_c_path_ns) / static_cast<double>(n));
        std::printf("  m path (martingale + same sums):   %7.1f ns/elem\n",
                    static_cast<double>(row.time_m_path_ns) / static_cast<double>(n));
        std::printf("  m/c wall ratio: %.2f\n",
                    static_cast<double>(row.time_m_path_ns) /
                        static_cast<double>(row.time_c_path_ns));
    }
    return 0;
}
