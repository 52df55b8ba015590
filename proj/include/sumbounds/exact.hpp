#ifndef SUMBOUNDS_EXACT_HPP
#define SUMBOUNDS_EXACT_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace sumbounds {

// Exact binary rational m * 2^e with unbounded mantissa and exponent.
// Closed under +, -, * and scaling by powers of two; every finite double
// converts in and out without loss. This is the workhorse for exact
// reference computations: sums of floating-point values, error weights,
// and growth factors (1+u)^k all live in this set.
class Dyadic {
public:
    Dyadic() : m_(0), e_(0) {}
    explicit Dyadic(long v) : m_(v), e_(0) { normalize(); }
    Dyadic(mpz_class mant, long exp2) : m_(std::move(mant)), e_(exp2) { normalize(); }

    static Dyadic from_double(double v) {
        if (v == 0.0) return Dyadic();
        if (!std::isfinite(v))
            throw std::invalid_argument("Dyadic::from_double: non-finite value");
        int exp = 0;
        double frac = std::frexp(v, &exp);
        auto mant = static_cast<long>(std::ldexp(frac, 53));  // exact, |frac| in [0.5,1)
        return Dyadic(mpz_class(mant), exp - 53);
    }

    // 2^k
    static Dyadic pow2(long k) { return Dyadic(mpz_class(1), k); }

    bool is_zero() const { return sgn(m_) == 0; }
    int sign() const { return sgn(m_); }
    const mpz_class& mantissa() const { return m_; }
    long exponent() const { return e_; }

    Dyadic& operator+=(const Dyadic& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) { *this = o; return *this; }
        if (e_ == o.e_) {
            m_ += o.m_;
        } else if (e_ > o.e_) {
            m_ <<= static_cast<unsigned long>(e_ - o.e_);
            m_ += o.m_;
            e_ = o.e_;
        } else {
            mpz_class t = o.m_;
            t <<= static_cast<unsigned long>(o.e_ - e_);
            m_ += t;
        }
        normalize();
        return *this;
    }
    Dyadic& operator-=(const Dyadic& o) { return *this += o.negated(); }
    Dyadic& operator*=(const Dyadic& o) {
        if (is_zero() || o.is_zero()) { m_ = 0; e_ = 0; return *this; }
        m_ *= o.m_;
        e_ += o.e_;
        normalize();
        return *this;
    }

    friend Dyadic operator+(Dyadic a, const Dyadic& b) { a += b; return a; }
    friend Dyadic operator-(Dyadic a, const Dyadic& b) { a -= b; return a; }
    friend Dyadic operator*(Dyadic a, const Dyadic& b) { a *= b; return a; }

    Dyadic negated() const { Dyadic r(*this); r.m_ = -r.m_; return r; }
    Dyadic operator-() const { return negated(); }
    Dyadic abs() const { Dyadic r(*this); r.m_ = ::abs(r.m_); return r; }

    // exact scale by 2^k
    Dyadic mul_pow2(long k) const {
        if (is_zero()) return *this;
        return Dyadic(m_, e_ + k);
    }

    static int cmp(const Dyadic& a, const Dyadic& b) {
        int sa = a.sign(), sb = b.sign();
        if (sa != sb) return sa < sb ? -1 : 1;
        if (sa == 0) return 0;
        // same nonzero sign: compare most significant bit positions first
        long ta = a.top_bit_exponent(), tb = b.top_bit_exponent();
        if (ta != tb) return ((ta < tb) == (sa > 0)) ? -1 : 1;
        Dyadic d = a - b;
        return d.sign();
    }

    friend bool operator==(const Dyadic& a, const Dyadic& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) != 0; }
    friend bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0; }

    // exponent of the leading bit: value lies in [2^t, 2^(t+1))
    long top_bit_exponent() const {
        return static_cast<long>(mpz_sizeinbase(m_.get_mpz_t(), 2)) - 1 + e_;
    }

    size_t significand_bits() const {
        return is_zero() ? 0 : mpz_sizeinbase(m_.get_mpz_t(), 2);
    }

    // Round the significand to at most `bits` bits, ties to even.
    Dyadic round_to_bits(unsigned bits) const;

    // Correctly rounded (to nearest, ties to even) conversion to double,
    // including subnormal results and overflow to infinity.
    double to_double() const;

    mpq_class to_rational() const {
        mpq_class q(m_);
        if (e_ >= 0) {
            mpz_class scale(1);
            scale <<= static_cast<unsigned long>(e_);
            q *= mpq_class(scale);
        } else {
            mpz_class scale(1);
            scale <<= static_cast<unsigned long>(-e_);
            q /= mpq_class(scale);
        }
        return q;
    }

    std::string to_string() const {
        return m_.get_str() + "*2^" + std::to_string(e_);
    }

private:
    void normalize() {
        if (sgn(m_) == 0) { e_ = 0; return; }
        auto tz = mpz_scan1(m_.get_mpz_t(), 0);
        if (tz > 0) {
            mpz_tdiv_q_2exp(m_.get_mpz_t(), m_.get_mpz_t(), tz);
            e_ += static_cast<long>(tz);
        }
    }

    mpz_class m_;
    long e_;
};

inline Dyadic Dyadic::round_to_bits(unsigned bits) const {
    if (is_zero() || bits == 0) return Dyadic();
    size_t n = significand_bits();
    if (n <= bits) return *this;
    unsigned long shift = static_cast<unsigned long>(n - bits);
    mpz_class a = ::abs(m_);
    mpz_class q;
    mpz_tdiv_q_2exp(q.get_mpz_t(), a.get_mpz_t(), shift);
    bool half = mpz_tstbit(a.get_mpz_t(), shift - 1) != 0;
    bool below = false;
    if (shift >= 2) {
        auto first = mpz_scan1(a.get_mpz_t(), 0);
        below = first < shift - 1;
    }
    if (half && (below || mpz_tstbit(q.get_mpz_t(), 0)))
        q += 1;
    if (sgn(m_) < 0) q = -q;
    return Dyadic(std::move(q), e_ + static_cast<long>(shift));
}

inline double Dyadic::to_double() const {
    if (is_zero()) return 0.0;
    long top = top_bit_exponent();
    if (top > 1024) return sign() > 0 ? HUGE_VAL : -HUGE_VAL;
    // effective precision shrinks below the normal range of double
    long keep = 53;
    if (top < -1022) keep = 53 + (top + 1022);
    if (keep <= 0) {
        // magnitude below half the smallest subnormal rounds to zero
        Dyadic tiny = Dyadic::pow2(-1075);
        int c = cmp(abs(), tiny);
        double mag = (c > 0) ? 0x1p-1074 : 0.0;  // exact tie is even -> 0
        return sign() > 0 ? mag : -mag;
    }
    Dyadic r = round_to_bits(static_cast<unsigned>(keep));
    if (r.top_bit_exponent() > 1023) return r.sign() > 0 ? HUGE_VAL : -HUGE_VAL;
    // mantissa now fits in <= 53 bits: exact via get_d + ldexp
    double m = mpz_get_d(r.m_.get_mpz_t());
    return std::ldexp(m, static_cast<int>(r.e_));
}

// Exact rational numbers. mpq_class already provides canonical exact
// arithmetic; these helpers cover the conversions the rest of the code needs.
using Rational = mpq_class;

inline Rational rational_from_double(double v) {
    return Dyadic::from_double(v).to_rational();
}

inline Rational rational_from_dyadic(const Dyadic& d) { return d.to_rational(); }

// Round-to-nearest-even conversion; exact through the Dyadic path when the
// denominator is a power of two, otherwise correct to the last bit via
// 56-bit quotient rounding.
double rational_to_double(const Rational& q);

// floor(sqrt(x)) refined to at least `sig_bits` significant bits; test oracle
// for radicals that must be checked to many digits.
Dyadic sqrt_dyadic(const Dyadic& x, unsigned sig_bits);

}  // namespace sumbounds

#endif
