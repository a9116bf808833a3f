#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "errors.hpp"
#include "rational.hpp"

namespace padicl {

// Default absolute precision; overridable through PADICL_PRECISION.
inline int default_precision() {
    if (const char* e = std::getenv("PADICL_PRECISION")) {
        int m = std::atoi(e);
        if (m > 0) return m;
    }
    return 12;
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    if (m == 1) return 0;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

// Inverse of a unit modulo m by extended Euclid.
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
    __int128 t = 0, nt = 1, r = m, nr = a % m;
    while (nr != 0) {
        __int128 q = r / nr;
        __int128 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw DivisionByZero("not a unit modulo " + std::to_string(m));
    if (t < 0) t += m;
    return static_cast<std::uint64_t>(t);
}

inline std::uint64_t ppow_checked(std::uint64_t p, int e) {
    if (e < 0) throw InvalidParameter("negative exponent");
    unsigned __int128 r = 1;
    for (int i = 0; i < e; ++i) {
        r *= p;
        if (r >= (static_cast<unsigned __int128>(1) << 62))
            throw InvalidParameter("p^M must stay below 2^62");
    }
    return static_cast<std::uint64_t>(r);
}

}  // namespace detail

// Element of Q_p known modulo p^abs_prec.  Nonzero values store p^v * unit
// with unit reduced mod p^(abs_prec - v); a value indistinguishable from 0
// carries the zero flag instead.
class PadicScalar {
public:
    PadicScalar() = default;

    static PadicScalar zero(std::uint64_t p, int abs_prec) {
        PadicScalar r;
        r.p_ = p;
        r.prec_ = abs_prec;
        r.zero_ = true;
        return r;
    }

    // x known exactly; absolute precision M for p-integral x, relative
    // precision M otherwise.
    static PadicScalar from_rational(std::uint64_t p, const Rational& x, int M) {
        if (x == 0) return zero(p, M);
        int v = val_p(x, p);
        int prec = v >= 0 ? M : v + M;
        if (v >= prec) return zero(p, prec);
        PadicScalar r;
        r.p_ = p;
        r.prec_ = prec;
        r.zero_ = false;
        r.v_ = v;
        std::uint64_t mod = detail::ppow_checked(p, prec - v);
        Rational u = x;
        if (v > 0) u /= Rational(ipow(Integer(static_cast<unsigned long>(p)), v));
        if (v < 0) u *= Rational(ipow(Integer(static_cast<unsigned long>(p)), -v));
        Integer n = u.get_num() % Integer(static_cast<unsigned long>(mod));
        if (n < 0) n += Integer(static_cast<unsigned long>(mod));
        Integer d = u.get_den() % Integer(static_cast<unsigned long>(mod));
        r.unit_ = detail::mulmod(n.get_ui(), detail::invmod(d.get_ui(), mod), mod);
        return r;
    }

    static PadicScalar from_int(std::uint64_t p, long x, int M) { return from_rational(p, Rational(x), M); }

    // p^v * u where u is a unit residue modulo p^(abs_prec - v).
    static PadicScalar from_parts(std::uint64_t p, int v, std::uint64_t unit, int abs_prec) {
        if (v >= abs_prec) return zero(p, abs_prec);
        std::uint64_t mod = detail::ppow_checked(p, abs_prec - v);
        if (unit % p == 0) throw InvalidParameter("unit part divisible by p");
        PadicScalar r;
        r.p_ = p;
        r.zero_ = false;
        r.v_ = v;
        r.unit_ = unit % mod;
        r.prec_ = abs_prec;
        return r;
    }

    std::uint64_t prime() const { return p_; }
    int precision() const { return prec_; }
    bool is_zero() const { return zero_; }

    int val() const {
        if (zero_) throw PrecisionExhausted("no significant digits");
        return v_;
    }
    std::uint64_t unit() const {
        if (zero_) throw PrecisionExhausted("no significant digits");
        return unit_;
    }
    int relative_precision() const { return zero_ ? 0 : prec_ - v_; }

    PadicScalar operator-() const {
        if (zero_) return *this;
        PadicScalar r = *this;
        std::uint64_t mod = detail::ppow_checked(p_, prec_ - v_);
        r.unit_ = (mod - unit_) % mod;
        return r;
    }

    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
        check_same(a, b);
        int prec = std::min(a.prec_, b.prec_);
        if (a.zero_ && b.zero_) return zero(a.p_, prec);
        if (a.zero_) return b.truncated(prec);
        if (b.zero_) return a.truncated(prec);
        int vmin = std::min(a.v_, b.v_);
        if (vmin >= prec) return zero(a.p_, prec);
        std::uint64_t mod = detail::ppow_checked(a.p_, prec - vmin);
        std::uint64_t x = a.shifted(vmin, mod), y = b.shifted(vmin, mod);
        std::uint64_t s = (x + y) % mod;
        if (s == 0) return zero(a.p_, prec);
        int extra = 0;
        while (s % a.p_ == 0) {
            s /= a.p_;
            ++extra;
        }
        return from_parts(a.p_, vmin + extra, s, prec);
    }

    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + (-b); }

    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
        check_same(a, b);
        if (a.zero_ && b.zero_) return zero(a.p_, a.prec_ + b.prec_);
        if (a.zero_) return zero(a.p_, a.prec_ + b.v_);
        if (b.zero_) return zero(a.p_, b.prec_ + a.v_);
        int rel = std::min(a.prec_ - a.v_, b.prec_ - b.v_);
        int v = a.v_ + b.v_;
        std::uint64_t mod = detail::ppow_checked(a.p_, rel);
        return from_parts(a.p_, v, detail::mulmod(a.unit_ % mod, b.unit_ % mod, mod), v + rel);
    }

    PadicScalar inv() const {
        if (zero_) throw DivisionByZero("inverse of a p-adic zero");
        int rel = prec_ - v_;
        std::uint64_t mod = detail::ppow_checked(p_, rel);
        return from_parts(p_, -v_, detail::invmod(unit_, mod), -v_ + rel);
    }

    friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) { return a * b.inv(); }

    PadicScalar pow(long e) const {
        if (e < 0) return inv().pow(-e);
        PadicScalar r = from_parts(p_, 0, 1, prec_ - (zero_ ? 0 : v_));
        PadicScalar b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // Reduce to a coarser absolute precision.
    PadicScalar truncated(int abs_prec) const {
        if (abs_prec > prec_) throw PrecisionExhausted("cannot raise precision");
        if (zero_ || v_ >= abs_prec) return zero(p_, abs_prec);
        return from_parts(p_, v_, unit_ % detail::ppow_checked(p_, abs_prec - v_), abs_prec);
    }

    // Is the value congruent to 0 modulo p^n (n <= precision)?
    bool divisible_by_p_power(int n) const {
        if (n > prec_) throw PrecisionExhausted("congruence beyond precision");
        return zero_ || v_ >= n;
    }

    // Residue in Z/p^n for p-integral values.
    std::uint64_t residue(int n) const {
        if (n > prec_) throw PrecisionExhausted("residue beyond precision");
        if (zero_ || v_ >= n) return 0;
        if (v_ < 0) throw InvalidParameter("value is not p-integral");
        std::uint64_t mod = detail::ppow_checked(p_, n);
        return detail::mulmod(detail::ppow_checked(p_, v_), unit_ % detail::ppow_checked(p_, n - v_), mod);
    }

    // Equality as p-adic numbers up to the common precision.
    friend bool congruent(const PadicScalar& a, const PadicScalar& b) { return (a - b).is_zero(); }

    std::string str() const {
        if (zero_) return "O(" + std::to_string(p_) + "^" + std::to_string(prec_) + ")";
        return std::to_string(p_) + "^" + std::to_string(v_) + "*" + std::to_string(unit_) + " + O(" +
               std::to_string(p_) + "^" + std::to_string(prec_) + ")";
    }

private:
    static void check_same(const PadicScalar& a, const PadicScalar& b) {
        if (a.p_ != b.p_) throw InvalidParameter("mismatched primes");
    }

    // unit * p^(v - vmin) modulo mod.
    std::uint64_t shifted(int vmin, std::uint64_t mod) const {
        std::uint64_t sh = detail::powmod(p_, static_cast<std::uint64_t>(v_ - vmin), mod);
        return detail::mulmod(unit_ % mod, sh, mod);
    }

    std::uint64_t p_ = 2;
    int prec_ = 0;
    bool zero_ = true;
    int v_ = 0;
    std::uint64_t unit_ = 0;
};

// Hensel lift of a root of x^2 = r in Z/p^M for a p-unit quadratic residue r
// (p odd).  Returns false when no root exists.
inline bool sqrt_mod_prime_power(std::uint64_t p, Integer r, int M, std::uint64_t& root) {
    std::uint64_t mod = detail::ppow_checked(p, M);
    Integer rm = r % Integer(static_cast<unsigned long>(mod));
    if (rm < 0) rm += Integer(static_cast<unsigned long>(mod));
    std::uint64_t a = rm.get_ui();
    if (p == 2 || a % p == 0) return false;
    std::uint64_t x = 0;
    bool found = false;
    for (std::uint64_t t = 1; t < p; ++t)
        if (t * t % p == a % p) {
            x = t;
            found = true;
            break;
        }
    if (!found) return false;
    // Newton iteration x <- x - (x^2 - a)/(2x), doubling precision.
    for (int k = 1; k < M; k *= 2) {
        std::uint64_t fx = (detail::mulmod(x, x, mod) + mod - a) % mod;
        std::uint64_t inv2x = detail::invmod(2 * x % mod, mod);
        x = (x + mod - detail::mulmod(fx, inv2x, mod)) % mod;
    }
    root = x;
    return true;
}

// Teichmueller lift of a residue a mod p into Z/p^M.
inline std::uint64_t teichmuller(std::uint64_t p, std::uint64_t a, int M) {
    std::uint64_t mod = detail::ppow_checked(p, M);
    std::uint64_t x = a % p;
    for (int i = 0; i < M; ++i) x = detail::powmod(x, p, mod);
    return x;
}

inline std::uint64_t primitive_root(std::uint64_t p) {
    auto fs = prime_factors(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (auto q : fs)
            if (detail::powmod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    return 1;
}

}  // namespace padicl
