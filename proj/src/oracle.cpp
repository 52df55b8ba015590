#include "sumbounds/oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sumbounds/errors.hpp"

namespace sumbounds::oracle {

ExactScalar exact_sum(const std::vector<double>& x) {
    if (x.empty()) throw invalid_input_error("exact_sum: empty input");
    Dyadic s;
    for (double v : x) s += Dyadic::from_double(v);
    return s.to_rational();
}

double compensated_sum(const std::vector<double>& x) {
    double s = 0.0, comp = 0.0;
    for (double v : x) {
        double t = s + v;
        if (std::fabs(s) >= std::fabs(v))
            comp += (s - t) + v;
        else
            comp += (v - t) + s;
        s = t;
    }
    return s + comp;
}

Dyadic widefloat_sum(const std::vector<double>& x, unsigned sig_bits) {
    if (x.empty()) throw invalid_input_error("widefloat_sum: empty input");
    Dyadic s;
    for (double v : x) {
        s += Dyadic::from_double(v);
        s = s.round_to_bits(sig_bits);
    }
    return s;
}

Dyadic m_closed_form(const std::vector<double>& x, std::size_t k, const Dyadic& u) {
    if (k < 1 || k + 1 > x.size())
        throw std::out_of_range("m_closed_form: k outside 1..n-1");
    Dyadic growth = Dyadic(1) + u;
    // powers (1+u)^0 .. (1+u)^(k-1)
    std::vector<Dyadic> pw(k);
    pw[0] = Dyadic(1);
    for (std::size_t i = 1; i < k; ++i) pw[i] = pw[i - 1] * growth;
    Dyadic m = Dyadic::from_double(std::fabs(x[0])) * pw[k - 1];
    for (std::size_t j = 2; j <= k + 1; ++j)
        m += Dyadic::from_double(std::fabs(x[j - 1])) * pw[k - j + 1];
    return m;
}

std::vector<Dyadic> m_closed_form_all(const std::vector<double>& x, const Dyadic& u) {
    if (x.size() < 2) return {};
    const std::size_t count = x.size() - 1;  // m_1 .. m_{n-1}
    Dyadic growth = Dyadic(1) + u;
    std::vector<Dyadic> pw(count);
    pw[0] = Dyadic(1);
    for (std::size_t i = 1; i < count; ++i) pw[i] = pw[i - 1] * growth;
    std::vector<Dyadic> out(count);
    for (std::size_t k = 1; k <= count; ++k) {
        Dyadic m = Dyadic::from_double(std::fabs(x[0])) * pw[k - 1];
        for (std::size_t j = 2; j <= k + 1; ++j)
            m += Dyadic::from_double(std::fabs(x[j - 1])) * pw[k - j + 1];
        out[k - 1] = std::move(m);
    }
    return out;
}

Dyadic zhat_envelope(const std::vector<double>& x, std::size_t k, const Dyadic& u) {
    if (k < 1 || k > x.size())
        throw std::out_of_range("zhat_envelope: k outside 1..n");
    Dyadic growth = Dyadic(1) + u;
    std::vector<Dyadic> pw(k);
    pw[0] = Dyadic(1);
    for (std::size_t i = 1; i < k; ++i) pw[i] = pw[i - 1] * growth;
    Dyadic e = Dyadic::from_double(std::fabs(x[0])) * pw[k - 1];
    for (std::size_t j = 2; j <= k; ++j)
        e += Dyadic::from_double(std::fabs(x[j - 1])) * pw[k - j + 1];
    return e;
}

ExactRound round_exact(const Rational& v, const FloatFormat& f) {
    if (sgn(v) == 0) return {0.0, false, false};
    bool neg = sgn(v) < 0;
    mpz_class num = ::abs(v.get_num());
    mpz_class den = v.get_den();

    // leading-bit exponent e with 2^e <= |v| < 2^(e+1)
    long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
    {
        mpz_class lhs = num, rhs = den;
        if (e >= 0)
            rhs <<= static_cast<unsigned long>(e);
        else
            lhs <<= static_cast<unsigned long>(-e);
        if (lhs < rhs) e -= 1;
    }

    long grid = e - f.precision_bits + 1;
    long grid_min = f.exponent_min - f.precision_bits + 1;
    if (grid < grid_min) grid = grid_min;

    // nearest integer to |v| / 2^grid, ties to even
    mpz_class n1 = num, d1 = den;
    if (grid >= 0)
        d1 <<= static_cast<unsigned long>(grid);
    else
        n1 <<= static_cast<unsigned long>(-grid);
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n1.get_mpz_t(), d1.get_mpz_t());
    r <<= 1;
    int c = cmp(r, d1);
    if (c > 0 || (c == 0 && mpz_tstbit(q.get_mpz_t(), 0)))
        q += 1;

    Dyadic mag(q, grid);
    if (mag > Dyadic::from_double(f.max_finite))
        return {neg ? -HUGE_VAL : HUGE_VAL, true, false};
    double d = mag.to_double();
    bool sub = d != 0.0 && d < f.min_normal;
    return {neg ? -d : d, false, sub};
}

namespace {

// Float path plus exact checks for one assignment. Returns true when the
// vector violates either the per-step error bound or the final-sum bound
// outside the subnormal range.
bool check_vector(const std::vector<double>& x, const FloatFormat& fmt,
                  const Dyadic& u_exact, const Dyadic& min_normal,
                  ExhaustiveReport& rep) {
    double zhat = x[0];
    Dyadic zex = Dyadic::from_double(x[0]);
    Dyadic abs_sum = Dyadic::from_double(std::fabs(x[0]));
    Dyadic c_sum;
    bool any_subnormal = false;
    bool delta_bad = false;
    for (std::size_t i = 1; i < x.size(); ++i) {
        RoundResult rr = round_sum_double(zhat + x[i], fmt);
        if (rr.overflowed) throw fp_overflow_error(i + 1);
        Dyadic pre = Dyadic::from_double(zhat) + Dyadic::from_double(x[i]);
        Dyadic err = Dyadic::from_double(rr.value) - pre;
        // |delta| <= u  <=>  |fl(pre) - pre| <= u |pre|
        if (err.abs() > pre.abs() * u_exact) delta_bad = true;
        if (rr.subnormal || (!pre.is_zero() && pre.abs() < min_normal))
            any_subnormal = true;
        zhat = rr.value;
        zex += Dyadic::from_double(x[i]);
        abs_sum += Dyadic::from_double(std::fabs(x[i]));
        c_sum += abs_sum.mul_pow2(-fmt.precision_bits);  // c_k = u * abs_sum
    }
    rep.cases += 1;
    if (any_subnormal) rep.subnormal_cases += 1;
    if (zex.is_zero()) rep.zero_sum_cases += 1;
    Dyadic final_err = (Dyadic::from_double(zhat) - zex).abs();
    bool theorem_bad = !any_subnormal && final_err > c_sum;
    if (delta_bad && !any_subnormal) rep.delta_violations += 1;
    if (theorem_bad) rep.theorem_violations += 1;
    if (!c_sum.is_zero()) {
        double ratio = final_err.to_double() / c_sum.to_double();
        if (ratio > rep.max_ratio) rep.max_ratio = ratio;
    }
    return (delta_bad && !any_subnormal) || theorem_bad;
}

}  // namespace

ExhaustiveReport exhaustive_delta_check(std::size_t n, Precision format,
                                        const std::vector<double>& value_set,
                                        bool parallel) {
    if (n == 0) throw invalid_input_error("exhaustive_delta_check: n must be positive");
    if (value_set.empty())
        throw invalid_input_error("exhaustive_delta_check: empty value set");
    const FloatFormat& fmt = float_format(format);
    for (double v : value_set) {
        RoundResult rr = round_to_format(v, fmt);
        if (rr.overflowed || rr.value != v)
            throw invalid_input_error(
                "exhaustive_delta_check: value set entry not representable in format");
    }

    const std::uint64_t base = value_set.size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > (1ull << 26) / base)
            throw invalid_input_error("exhaustive_delta_check: enumeration too large");
        total *= base;
    }

    int nthreads = 1;
#ifdef _OPENMP
    if (parallel) nthreads = omp_get_max_threads();
#else
    (void)parallel;
#endif

    std::vector<ExhaustiveReport> partial(static_cast<std::size_t>(nthreads));
    std::vector<std::uint64_t> first_bad(static_cast<std::size_t>(nthreads), ~0ull);

#pragma omp parallel num_threads(nthreads) if (parallel)
    {
        int tid = 0;
#ifdef _OPENMP
        tid = omp_get_thread_num();
#endif
        auto& rep = partial[static_cast<std::size_t>(tid)];
        auto& bad = first_bad[static_cast<std::size_t>(tid)];
        Dyadic u_exact = fmt.unit_roundoff_exact();
        Dyadic min_normal = Dyadic::from_double(fmt.min_normal);
        std::vector<double> x(n);

#pragma omp for schedule(static)
        for (long long idx = 0; idx < static_cast<long long>(total); ++idx) {
            std::uint64_t rem = static_cast<std::uint64_t>(idx);
            for (std::size_t d = 0; d < n; ++d) {
                x[d] = value_set[rem % base];
                rem /= base;
            }
            if (check_vector(x, fmt, u_exact, min_normal, rep) &&
                static_cast<std::uint64_t>(idx) < bad)
                bad = static_cast<std::uint64_t>(idx);
        }
    }

    ExhaustiveReport out;
    std::uint64_t best = ~0ull;
    for (std::size_t t = 0; t < partial.size(); ++t) {
        const auto& p = partial[t];
        out.cases += p.cases;
        out.zero_sum_cases += p.zero_sum_cases;
        out.subnormal_cases += p.subnormal_cases;
        out.delta_violations += p.delta_violations;
        out.theorem_violations += p.theorem_violations;
        if (p.max_ratio > out.max_ratio) out.max_ratio = p.max_ratio;
        if (first_bad[t] < best) best = first_bad[t];
    }
    if (best != ~0ull) {
        out.witness.resize(n);
        std::uint64_t rem = best;
        for (std::size_t d = 0; d < n; ++d) {
            out.witness[d] = value_set[rem % base];
            rem /= base;
        }
    }
    return out;
}

}  // namespace sumbounds::oracle
