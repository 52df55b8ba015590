#include "sumbounds/exact.hpp"

#include <stdexcept>

namespace sumbounds {

double rational_to_double(const Rational& q) {
    if (sgn(q) == 0) return 0.0;
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (mpz_scan1(den.get_mpz_t(), 0) ==
        mpz_sizeinbase(den.get_mpz_t(), 2) - 1) {
        // power-of-two denominator: exact dyadic value
        long e = -static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2) - 1);
        return Dyadic(num, e).to_double();
    }
    // scale the quotient so it carries 56 bits, round the integer part,
    // then let Dyadic::to_double do the final nearest rounding
    long nbits = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
    long dbits = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
    long shift = 56 - (nbits - dbits);
    mpz_class n = ::abs(num), d = den, quot, rem;
    if (shift > 0)
        n <<= static_cast<unsigned long>(shift);
    else
        d <<= static_cast<unsigned long>(-shift);
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    if (sgn(rem) != 0) {
        // mark the quotient inexact so a later halfway pattern cannot occur
        quot <<= 1;
        quot += 1;
        shift += 1;
    }
    if (sgn(num) < 0) quot = -quot;
    return Dyadic(quot, -shift).to_double();
}

Dyadic sqrt_dyadic(const Dyadic& x, unsigned sig_bits) {
    if (x.sign() < 0)
        throw std::domain_error("sqrt_dyadic: negative argument");
    if (x.is_zero()) return Dyadic();
    mpz_class m = x.mantissa();
    long e = x.exponent();
    // widen the mantissa until sqrt keeps sig_bits + guard bits, keeping the
    // exponent even so it halves exactly
    long want = 2 * static_cast<long>(sig_bits) + 4;
    long have = static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2));
    long extra = want > have ? want - have : 0;
    if ((e - extra) % 2 != 0) extra += 1;
    m <<= static_cast<unsigned long>(extra);
    e -= extra;
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
    return Dyadic(std::move(r), e / 2);
}

}  // namespace sumbounds
