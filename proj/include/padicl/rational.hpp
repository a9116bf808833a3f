#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace padicl {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_q(long num, long den = 1) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw InvalidParameter("not a rational: " + s);
    if (r.get_den() == 0) throw DivisionByZero("rational with zero denominator");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Valuation of a nonzero integer at p.
inline int val_p(const Integer& n, unsigned long p) {
    if (n == 0) throw PrecisionExhausted("valuation of 0");
    Integer m = abs(n);
    int v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++v;
    }
    return v;
}

inline int val_p(const Rational& x, unsigned long p) {
    if (x == 0) throw PrecisionExhausted("valuation of 0");
    return val_p(Integer(x.get_num()), p) - val_p(Integer(x.get_den()), p);
}

inline bool is_p_integral(const Rational& x, unsigned long p) {
    return !mpz_divisible_ui_p(x.get_den_mpz_t(), p);
}

inline Integer ipow(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// b^e for any integer e (b != 0 when e < 0).
inline Rational qpow(const Rational& b, long e) {
    if (e >= 0) {
        Integer n, d;
        mpz_pow_ui(n.get_mpz_t(), b.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), b.get_den_mpz_t(), static_cast<unsigned long>(e));
        Rational r(n, d);
        r.canonicalize();
        return r;
    }
    if (b == 0) throw DivisionByZero("0 to a negative power");
    return qpow(Rational(1) / b, -e);
}

// |x|_p for nonzero rational x.
inline Rational abs_p(const Rational& x, unsigned long p) {
    return qpow(Rational(static_cast<long>(p)), -val_p(x, p));
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::uint64_t upow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// Squarefree decomposition n = s * f^2 with s squarefree (n > 0, trial division).
inline void squarefree_split(std::uint64_t n, std::uint64_t& s, std::uint64_t& f) {
    s = 1;
    f = 1;
    for (std::uint64_t q = 2; q * q <= n; ++q) {
        int e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) f *= q;
        if (e % 2) s *= q;
    }
    s *= n;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = n;
    for (auto q : prime_factors(n)) r = r / q * (q - 1);
    return r;
}

}  // namespace padicl
