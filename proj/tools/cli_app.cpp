#include "cli_app.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sumbounds/csv.hpp"
#include "sumbounds/errors.hpp"
#include "sumbounds/experiments.hpp"
#include "sumbounds/oracle.hpp"
#include "sumbounds/svg.hpp"
#include "sumbounds/trace.hpp"
#include "sumbounds/version.hpp"

namespace sumbounds::cli {

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInput = 2;
constexpr int kValidation = 3;

Precision parse_precision(const std::string& s) {
    if (s == "half") return Precision::half;
    if (s == "single") return Precision::single;
    throw config_error("--precision must be half or single");
}

Distribution parse_dist(const std::string& s) {
    if (s == "normal") return Distribution::normal;
    if (s == "uniform") return Distribution::uniform;
    throw config_error("--dist must be normal or uniform");
}

DetVariant parse_variant(const std::string& s) {
    if (s == "theorem") return DetVariant::theorem;
    if (s == "graphs") return DetVariant::graphs;
    throw config_error("--det-variant must be theorem or graphs");
}

// "start:end:step" or a single "n"
void parse_grid(const std::string& s, ExperimentConfig& cfg) {
    auto fail = [&] { throw config_error("--n must be <start:end:step> or a single count"); };
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        auto next = s.find(':', pos);
        if (next == std::string::npos) { parts.push_back(s.substr(pos)); break; }
        parts.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    if (parts.size() != 1 && parts.size() != 3) fail();
    auto to_count = [&](const std::string& p) -> std::size_t {
        char* end = nullptr;
        unsigned long long v = std::strtoull(p.c_str(), &end, 10);
        if (end != p.c_str() + p.size() || p.empty()) fail();
        return static_cast<std::size_t>(v);
    };
    if (parts.size() == 1) {
        cfg.n_start = cfg.n_end = cfg.n_step = to_count(parts[0]);
    } else {
        cfg.n_start = to_count(parts[0]);
        cfg.n_end = to_count(parts[1]);
        cfg.n_step = to_count(parts[2]);
    }
}

std::vector<double> read_vector_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw invalid_input_error("cannot open input file: " + path);
    std::vector<double> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t\r");
        std::string tok = line.substr(b, e - b + 1);
        char* end = nullptr;
        double v = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size())
            throw invalid_input_error(path + ":" + std::to_string(lineno) +
                                      ": not a number: " + tok);
        if (!std::isfinite(v))
            throw invalid_input_error(path + ":" + std::to_string(lineno) +
                                      ": non-finite value");
        out.push_back(v);
    }
    if (out.empty()) throw invalid_input_error(path + ": no values");
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path);
    if (!os) throw invalid_input_error("cannot open for writing: " + path);
    os << content;
    if (!os) throw invalid_input_error("write failed: " + path);
}

// ---- analyze ----------------------------------------------------------

struct AnalyzeArgs {
    std::string input;
    std::string precision = "single";
    double delta = 1e-16;
    std::string det_variant = "theorem";
    bool exact = false;
    std::string out;
};

template <class Real>
BoundReport analyze_values(const std::vector<double>& x, const FloatFormat& fmt,
                           double delta, DetVariant variant, double& computed_sum) {
    auto acc = make_accumulators<Real>(fmt);
    double zhat = 0.0;
    Dyadic zex, abs_exact;
    bool subnormal = false;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (k == 0) {
            zhat = x[0];
        } else {
            double pre = zhat + x[k];
            RoundResult r = round_sum_double(pre, fmt);
            if (r.overflowed) throw fp_overflow_error(k + 1);
            if (r.subnormal || (pre != 0.0 && std::fabs(pre) < fmt.min_normal))
                subnormal = true;
            zhat = r.value;
        }
        Dyadic dx = Dyadic::from_double(x[k]);
        zex += dx;
        abs_exact += dx.abs();
        if constexpr (std::is_same_v<Real, double>)
            acc.update(std::fabs(x[k]));
        else
            acc.update(dx.abs());
    }

    computed_sum = zhat;
    BoundReport rep;
    rep.n = x.size();
    rep.failure_prob = delta;
    rep.det_variant = variant;
    rep.format_label = fmt.label();
    rep.distribution_label = "file";
    rep.subnormal = subnormal;
    rep.z_n_exact = zex.to_rational();
    rep.sum_abs_exact = abs_exact.to_rational();
    if (zex.is_zero()) {
        rep.zero_sum = true;
        rep.true_err = std::fabs(zhat);
        rep.det = to_working(acc.c_sum());
        if (variant == DetVariant::graphs)
            rep.det *= std::sqrt(static_cast<double>(x.size()));
        rep.azuma = concentration_radius(to_working(acc.c_sq_sum()), delta);
        rep.martingale =
            fmt.unit_roundoff * concentration_radius(to_working(acc.m_sq_sum()), delta);
        return rep;
    }
    double abs_z = std::fabs(zex.to_double());
    rep.true_err =
        std::fabs((Dyadic::from_double(zhat) - zex).to_double()) / abs_z;
    rep.det = det_bound(acc, abs_z, variant);
    rep.azuma = azuma_bound(acc, abs_z, delta);
    rep.martingale = martingale_bound(acc, abs_z, delta);
    return rep;
}

int do_analyze(const AnalyzeArgs& a) {
    const FloatFormat& fmt = float_format(parse_precision(a.precision));
    if (!(a.delta > 0.0 && a.delta < 1.0))
        throw config_error("--delta must lie in (0,1)");
    DetVariant variant = parse_variant(a.det_variant);

    std::vector<double> raw = read_vector_file(a.input);
    std::vector<double> x;
    x.reserve(raw.size());
    std::size_t adjusted = 0;
    for (double v : raw) {
        RoundResult r = round_to_format(v, fmt);
        if (r.overflowed)
            throw invalid_input_error("input value overflows " +
                                      std::string(fmt.label()) + " precision");
        if (r.value != v) ++adjusted;
        x.push_back(r.value);
    }

    double computed_sum = 0.0;
    BoundReport rep =
        a.exact ? analyze_values<Dyadic>(x, fmt, a.delta, variant, computed_sum)
                : analyze_values<double>(x, fmt, a.delta, variant, computed_sum);

    std::cout << "sumbounds " << kVersion << " analyze\n";
    std::cout << "  input             : " << a.input << " (" << x.size()
              << " values, " << fmt.label() << " precision)\n";
    std::cout << "  rounded on ingest : " << adjusted << " of " << x.size()
              << " values\n";
    if (rep.zero_sum)
        std::cout << "  WARNING: exact sum is zero; reporting absolute error "
                     "bounds, not relative\n";
    std::cout << "  exact sum         : "
              << format_shortest(rational_to_double(rep.z_n_exact)) << "\n";
    std::cout << "  computed sum      : " << format_shortest(computed_sum) << "\n";
    std::cout << (rep.zero_sum ? "  true abs error    : "
                               : "  true rel error    : ")
              << format_shortest(rep.true_err) << "\n";
    std::cout << "  det bound (" << det_variant_label(rep.det_variant)
              << ") : " << format_shortest(rep.det) << "\n";
    std::cout << "  azuma bound       : " << format_shortest(rep.azuma) << "\n";
    std::cout << "  martingale bound  : " << format_shortest(rep.martingale)
              << "\n";
    std::cout << "  failure prob      : " << format_shortest(rep.failure_prob)
              << "\n";
    std::cout << "  flags             : "
              << (rep.zero_sum || rep.subnormal
                      ? std::string(rep.zero_sum ? "zero_sum " : "") +
                            (rep.subnormal ? "subnormal" : "")
                      : "none")
              << "\n";

    if (!a.out.empty()) {
        SweepRow row;
        row.report = rep;
        row.seed = 0;
        std::vector<SweepRow> rows{row};
        write_csv_file(a.out, rows);
        std::cout << "  wrote CSV         : " << a.out << "\n";
    }
    return kOk;
}

// ---- sweep ------------------------------------------------------------

struct SweepArgs {
    std::string precision = "single";
    std::string dist = "normal";
    std::string grid;
    double delta = 1e-16;
    std::uint64_t seed = 123;
    std::size_t trials = 1;
    std::string det_variant = "theorem";
    std::string out;
    bool exact = false;
    bool serial = false;
};

int do_sweep(const SweepArgs& a) {
    ExperimentConfig cfg;
    cfg.format = parse_precision(a.precision);
    cfg.distribution = parse_dist(a.dist);
    parse_grid(a.grid, cfg);
    cfg.failure_prob = a.delta;
    cfg.seed = a.seed;
    cfg.trials_per_point = a.trials;
    cfg.det_variant = parse_variant(a.det_variant);
    cfg.exact_accumulators = a.exact;
    cfg.validate();

    std::vector<SweepRow> rows = run_sweep(cfg, !a.serial);
    if (a.out.empty() || a.out == "-") {
        write_csv(std::cout, rows);
    } else {
        write_csv_file(a.out, rows);
        std::cerr << "wrote " << rows.size() << " rows to " << a.out << "\n";
    }
    return kOk;
}

// ---- validate ---------------------------------------------------------

struct ValidateArgs {
    std::size_t exhaustive_n = 6;
    std::uint64_t seed = 123;
};

int do_validate(const ValidateArgs& a) {
    int failures = 0;
    auto report = [&failures](const std::string& name, bool ok,
                              const std::string& detail) {
        std::cout << (ok ? "ok   " : "FAIL ") << name;
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
        if (!ok) ++failures;
    };

    // exhaustive model check over two half-precision value sets
    {
        std::vector<double> fixed = {1.0, 0x1p-11, -0x1p-12};
        auto r = oracle::exhaustive_delta_check(a.exhaustive_n, Precision::half, fixed);
        std::ostringstream d;
        d << r.cases << " cases, max ratio " << r.max_ratio;
        report("exhaustive step/final error check, fixed set", r.clean(), d.str());
    }
    {
        const FloatFormat& half = float_format(Precision::half);
        ValueStream vs(a.seed, 0, Distribution::normal, half);
        std::vector<double> vals;
        while (vals.size() < 4) {
            double v = vs.next();
            if (v != 0.0) vals.push_back(v);
        }
        std::size_t n = std::min<std::size_t>(a.exhaustive_n, 8);
        auto r = oracle::exhaustive_delta_check(n, Precision::half, vals);
        std::ostringstream d;
        d << r.cases << " cases, max ratio " << r.max_ratio;
        report("exhaustive step/final error check, sampled set", r.clean(), d.str());
    }

    // O(1) recurrence against the closed form, exact arithmetic
    {
        bool ok = true;
        for (Precision p : {Precision::half, Precision::single}) {
            const FloatFormat& fmt = float_format(p);
            Dyadic u = fmt.unit_roundoff_exact();
            for (std::uint64_t t = 0; t < 20 && ok; ++t) {
                auto x = generate_values(a.seed, t, Distribution::normal, fmt, 201);
                auto mw = make_m_weights<Dyadic>(fmt);
                for (std::size_t k = 0; k < x.size() && ok; ++k) {
                    mw.update(Dyadic::from_double(std::fabs(x[k])));
                    if (k >= 1 &&
                        mw.m_current != oracle::m_closed_form(x, k, u))
                        ok = false;
                }
            }
        }
        report("m recurrence equals closed form (k <= 200)", ok, "");
    }

    // computed partial sums stay inside the growth envelope
    {
        bool ok = true;
        const FloatFormat& half = float_format(Precision::half);
        Dyadic u = half.unit_roundoff_exact();
        for (std::uint64_t t = 0; t < 100 && ok; ++t) {
            auto x = generate_values(a.seed, t, Distribution::normal, half, 200);
            auto tr = run_summation(x, Precision::half);
            for (std::size_t k = 1; k <= tr.n && ok; ++k) {
                Dyadic env = oracle::zhat_envelope(x, k, u);
                if (Dyadic::from_double(tr.z_hat[k - 1]).abs() > env) ok = false;
            }
        }
        report("computed partial sums within growth envelope", ok, "");
    }

    // fast rounding paths against the exact midpoint oracle
    {
        bool ok = true;
        Xoshiro256pp rng(a.seed);
        for (Precision p : {Precision::half, Precision::single}) {
            const FloatFormat& fmt = float_format(p);
            for (int i = 0; i < 20000 && ok; ++i) {
                // random double spanning the format's range and beyond
                std::uint64_t bits = rng.next();
                int e = static_cast<int>(bits % 64) - 40;
                double m = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
                double v = std::ldexp(1.0 + m, e) * ((bits & 1) ? -1.0 : 1.0);
                RoundResult fast = round_to_format(v, fmt);
                auto slow = oracle::round_exact(rational_from_double(v), fmt);
                if (fast.overflowed != slow.overflowed) ok = false;
                else if (!fast.overflowed && fast.value != slow.value) ok = false;
            }
        }
        report("fast rounding matches exact midpoint analysis", ok, "");
    }

    // deterministic bound dominates the realized error, exact arithmetic
    {
        bool ok = true;
        for (Precision p : {Precision::half, Precision::single}) {
            const FloatFormat& fmt = float_format(p);
            for (std::uint64_t t = 0; t < 200 && ok; ++t) {
                auto x = generate_values(a.seed, t, Distribution::normal, fmt, 300);
                auto tr = run_summation(x, p);
                auto cw = make_c_weights<Dyadic>(fmt);
                for (double v : x) cw.update(Dyadic::from_double(std::fabs(v)));
                Dyadic err = (Dyadic::from_double(tr.z_hat_final) - tr.z_exact_final).abs();
                bool sub = !tr.subnormal_steps.empty();
                if (!sub && err > cw.c_sum) ok = false;
            }
        }
        report("deterministic bound dominates realized error", ok, "");
    }

    // known low-precision phenomenon: for half-precision same-sign data the
    // azuma bound can dip below the realized error; recorded, never a failure
    {
        ExperimentConfig cfg;
        cfg.format = Precision::half;
        cfg.distribution = Distribution::uniform;
        cfg.n_start = 100;
        cfg.n_end = 10000;
        cfg.n_step = 100;
        cfg.seed = a.seed;
        auto rows = run_sweep(cfg);
        std::size_t hits = 0, first_n = 0;
        for (const auto& row : rows)
            if (!row.report.zero_sum && row.report.azuma < row.report.true_err) {
                if (hits == 0) first_n = row.report.n;
                ++hits;
            }
        std::ostringstream d;
        if (hits > 0)
            d << "observed at " << hits << " of " << rows.size()
              << " grid points, first at n=" << first_n;
        else
            d << "not observed on this grid";
        std::cout << "note azuma bound below realized error, half/uniform ("
                  << d.str() << ")\n";
    }

    if (failures > 0) {
        std::cout << failures << " validation failure(s)\n";
        return kValidation;
    }
    std::cout << "all validation suites passed\n";
    return kOk;
}

// ---- failure-rate -----------------------------------------------------

struct FailureRateArgs {
    std::string bound = "both";
    std::string precision = "single";
    std::string dist = "normal";
    std::size_t n = 100;
    double delta = 0.5;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 123;
    bool serial = false;
};

int do_failure_rate(const FailureRateArgs& a) {
    ExperimentConfig cfg;
    cfg.format = parse_precision(a.precision);
    cfg.distribution = parse_dist(a.dist);
    cfg.n_start = cfg.n_end = cfg.n_step = a.n;
    cfg.failure_prob = a.delta;
    cfg.seed = a.seed;
    if (a.n == 0) throw config_error("--n must be positive");

    std::vector<std::string> bounds;
    if (a.bound == "both")
        bounds = {"azuma", "martingale"};
    else if (a.bound == "azuma" || a.bound == "martingale")
        bounds = {a.bound};
    else
        throw config_error("--bound must be azuma, martingale or both");

    for (const auto& b : bounds) {
        auto r = estimate_failure_rate(cfg, b, a.n, a.trials, !a.serial);
        std::cout << b << " bound: " << r.violations << " violations in "
                  << r.trials << " trials (rate "
                  << format_shortest(rational_to_double(r.empirical_rate))
                  << ", 99% upper bound " << format_shortest(r.cp99_upper)
                  << ", budget " << format_shortest(r.failure_prob) << ")";
        if (r.zero_sum_trials > 0)
            std::cout << " [" << r.zero_sum_trials << " zero-sum trials flagged]";
        std::cout << "\n";
    }
    return kOk;
}

// ---- plot -------------------------------------------------------------

struct PlotArgs {
    std::string input;
    std::string out;
    std::string title;
};

int do_plot(const PlotArgs& a) {
    auto rows = read_csv_file(a.input);
    PlotOptions opts;
    opts.title = a.title;
    std::string svg = render_loglog_svg(rows, opts);
    std::string out = a.out;
    if (out.empty()) {
        out = a.input;
        auto dot = out.rfind('.');
        if (dot != std::string::npos) out.erase(dot);
        out += ".svg";
    }
    write_text_file(out, svg);
    std::cerr << "wrote " << out << "\n";
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"forward error bounds for sequential floating-point summation"};
    app.set_version_flag("--version", std::string("sumbounds ") + kVersion);
    app.require_subcommand(1);

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "bound the error of a vector file");
    analyze->add_option("input", an.input, "vector file, one number per line")
        ->required();
    analyze->add_option("--precision", an.precision, "target precision: half|single")
        ->default_val("single");
    analyze->add_option("--delta", an.delta, "failure probability")
        ->default_val(1e-16);
    analyze->add_option("--det-variant", an.det_variant, "theorem|graphs")
        ->default_val("theorem");
    analyze->add_flag("--exact", an.exact, "exact-rational accumulators");
    analyze->add_option("--out", an.out, "also write a CSV row here");

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "run a seeded n-sweep, emit CSV");
    sweep->add_option("--precision", sw.precision, "half|single")->default_val("single");
    sweep->add_option("--dist", sw.dist, "normal|uniform")->default_val("normal");
    sweep->add_option("--n", sw.grid, "grid start:end:step (or single n)")->required();
    sweep->add_option("--delta", sw.delta, "failure probability")->default_val(1e-16);
    sweep->add_option("--seed", sw.seed, "stream seed")->default_val(123);
    sweep->add_option("--trials", sw.trials, "trials per grid point")->default_val(1);
    sweep->add_option("--det-variant", sw.det_variant, "theorem|graphs")
        ->default_val("theorem");
    sweep->add_option("--out", sw.out, "output CSV path ('-' for stdout)")
        ->default_val("-");
    sweep->add_flag("--exact", sw.exact, "exact-rational accumulators (slow)");
    sweep->add_flag("--serial", sw.serial, "disable the parallel sweep kernel");

    ValidateArgs va;
    auto* validate = app.add_subcommand("validate", "run the exact-arithmetic suites");
    validate->add_option("--exhaustive-n", va.exhaustive_n, "exhaustive vector length")
        ->default_val(6);
    validate->add_option("--seed", va.seed, "stream seed")->default_val(123);

    FailureRateArgs fr;
    auto* frate = app.add_subcommand("failure-rate",
                                     "Monte-Carlo failure rate of a probabilistic bound");
    frate->add_option("--bound", fr.bound, "azuma|martingale|both")->default_val("both");
    frate->add_option("--precision", fr.precision, "half|single")->default_val("single");
    frate->add_option("--dist", fr.dist, "normal|uniform")->default_val("normal");
    frate->add_option("--n", fr.n, "vector length")->default_val(100);
    frate->add_option("--delta", fr.delta, "failure probability to exercise")
        ->default_val(0.5);
    frate->add_option("--trials", fr.trials, "Monte-Carlo trials")->default_val(10000);
    frate->add_option("--seed", fr.seed, "stream seed")->default_val(123);
    frate->add_flag("--serial", fr.serial, "disable the parallel trial kernel");

    PlotArgs pl;
    auto* plot = app.add_subcommand("plot", "render a sweep CSV as a log-log SVG");
    plot->add_option("input", pl.input, "sweep CSV file")->required();
    plot->add_option("--out", pl.out, "output SVG path (default: input with .svg)");
    plot->add_option("--title", pl.title, "plot title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*analyze) return do_analyze(an);
        if (*sweep) return do_sweep(sw);
        if (*validate) return do_validate(va);
        if (*frate) return do_failure_rate(fr);
        if (*plot) return do_plot(pl);
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const invalid_input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const fp_overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
    return kUsage;
}

}  // namespace sumbounds::cli
