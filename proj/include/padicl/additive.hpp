#pragma once

#include "cyclotomic.hpp"
#include "rational.hpp"

namespace padicl {

// {x}_p: the element of Z[1/p] in [0, 1) with x - {x}_p in Z_p.
inline Rational frac_p(const Rational& x, std::uint64_t p) {
    if (x == 0) return 0;
    Integer den = x.get_den(), pe = 1;
    Integer P(static_cast<unsigned long>(p));
    while (mpz_divisible_p(den.get_mpz_t(), P.get_mpz_t())) {
        den /= P;
        pe *= P;
    }
    if (pe == 1) return 0;
    Integer inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pe.get_mpz_t());
    Integer k = x.get_num() * inv % pe;
    if (k < 0) k += pe;
    Rational r(k, pe);
    r.canonicalize();
    return r;
}

// psi_p(x) = e^{-2 pi i {x}_p}
inline CyclotomicValue psi_p(const Rational& x, std::uint64_t p) {
    Rational f = frac_p(x, p);
    if (f == 0) return CyclotomicValue(1);
    if (!f.get_den().fits_sint_p() || f.get_den() > 1000000) throw InvalidParameter("additive character level too large");
    return CyclotomicValue::root_of_unity(static_cast<int>(f.get_den().get_si()), -f.get_num().get_si());
}

}  // namespace padicl
