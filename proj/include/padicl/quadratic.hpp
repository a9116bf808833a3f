#pragma once

#include <cstdint>
#include <string>

#include "errors.hpp"
#include "padic.hpp"
#include "rational.hpp"

namespace padicl {

// Element a + b*omega of K = Q(sqrt d), d a squarefree integer; omega is
// (1 + sqrt d)/2 when d = 1 mod 4 and sqrt d otherwise.
class QuadElem {
public:
    QuadElem() = default;
    QuadElem(long d, Rational a, Rational b = 0) : d_(d), a_(std::move(a)), b_(std::move(b)) {}

    long d() const { return d_; }
    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    bool omega_is_half() const { return mod_floor(d_, 4) == 1; }

    // z = x + y*sqrt(d)
    static QuadElem from_sqrt_coords(long d, const Rational& x, const Rational& y) {
        if (mod_floor(d, 4) == 1) return QuadElem(d, x - y, 2 * y);
        return QuadElem(d, x, y);
    }
    Rational sqrt_x() const { return omega_is_half() ? a_ + b_ / 2 : a_; }
    Rational sqrt_y() const { return omega_is_half() ? b_ / 2 : b_; }

    QuadElem conj() const { return from_sqrt_coords(d_, sqrt_x(), -sqrt_y()); }
    Rational norm() const { return sqrt_x() * sqrt_x() - d_ * sqrt_y() * sqrt_y(); }
    Rational trace() const { return 2 * sqrt_x(); }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    friend QuadElem operator+(const QuadElem& x, const QuadElem& y) {
        check(x, y);
        return QuadElem(x.d_, x.a_ + y.a_, x.b_ + y.b_);
    }
    friend QuadElem operator-(const QuadElem& x, const QuadElem& y) {
        check(x, y);
        return QuadElem(x.d_, x.a_ - y.a_, x.b_ - y.b_);
    }
    QuadElem operator-() const { return QuadElem(d_, -a_, -b_); }
    friend QuadElem operator*(const QuadElem& x, const QuadElem& y) {
        check(x, y);
        Rational X = x.sqrt_x() * y.sqrt_x() + x.d_ * x.sqrt_y() * y.sqrt_y();
        Rational Y = x.sqrt_x() * y.sqrt_y() + x.sqrt_y() * y.sqrt_x();
        return from_sqrt_coords(x.d_, X, Y);
    }
    friend QuadElem operator*(const Rational& r, const QuadElem& x) { return QuadElem(x.d_, r * x.a_, r * x.b_); }
    QuadElem inv() const {
        Rational n = norm();
        if (n == 0) throw DivisionByZero("inverse of 0 in K");
        return (Rational(1) / n) * conj();
    }
    friend QuadElem operator/(const QuadElem& x, const QuadElem& y) { return x * y.inv(); }
    friend bool operator==(const QuadElem& x, const QuadElem& y) {
        return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const QuadElem& x, const QuadElem& y) { return !(x == y); }

    // Integral in O_K iff both basis coordinates are integers.
    bool is_integral() const { return a_.get_den() == 1 && b_.get_den() == 1; }

    std::string str() const {
        std::string w = omega_is_half() ? "w" : "sqrt(" + std::to_string(d_) + ")";
        return "(" + a_.get_str() + " + " + b_.get_str() + "*" + w + ")";
    }

private:
    static void check(const QuadElem& x, const QuadElem& y) {
        if (x.d_ != y.d_) throw InvalidParameter("elements of different quadratic fields");
    }

    long d_ = -1;
    Rational a_ = 0, b_ = 0;
};

enum class LocalKind { Split, Inert, Ramified };

inline std::string to_string(LocalKind k) {
    switch (k) {
        case LocalKind::Split: return "split";
        case LocalKind::Inert: return "inert";
        default: return "ramified";
    }
}

// K tensor Q_p for K = Q(sqrt d).
class QuadraticLocalAlgebra {
public:
    QuadraticLocalAlgebra(std::uint64_t p, long d) : p_(p), d_(d) {
        if (!is_prime(p)) throw InvalidParameter("p must be prime");
        std::uint64_t s, f;
        squarefree_split(static_cast<std::uint64_t>(d < 0 ? -d : d), s, f);
        if (f != 1 || d == 0 || d == 1) throw InvalidParameter("d must be squarefree and not 0, 1");
        if (p == 2) {
            long r = mod_floor(d, 8);
            kind_ = r == 1 ? LocalKind::Split : (r == 5 ? LocalKind::Inert : LocalKind::Ramified);
        } else if (mod_floor(d, static_cast<long>(p)) == 0) {
            kind_ = LocalKind::Ramified;
        } else {
            std::uint64_t dm = static_cast<std::uint64_t>(mod_floor(d, static_cast<long>(p)));
            kind_ = detail::powmod(dm, (p - 1) / 2, p) == 1 ? LocalKind::Split : LocalKind::Inert;
        }
    }

    std::uint64_t prime() const { return p_; }
    long d() const { return d_; }
    LocalKind kind() const { return kind_; }
    // Discriminant of K/Q.
    long disc() const { return mod_floor(d_, 4) == 1 ? d_ : 4 * d_; }

    // Root of the minimal polynomial of omega in Z/p^M (split case only):
    // omega -> rho.  The conjugate embedding sends omega -> trace(omega) - rho.
    std::uint64_t split_root(int M) const {
        if (kind_ != LocalKind::Split) throw InvalidParameter("not split at p");
        if (p_ == 2) throw InvalidParameter("p = 2 split embedding not supported");
        std::uint64_t mod = detail::ppow_checked(p_, M);
        std::uint64_t sq;
        if (!sqrt_mod_prime_power(p_, Integer(d_), M, sq)) throw InvalidParameter("no square root");
        if (mod_floor(d_, 4) != 1) return sq;
        std::uint64_t inv2 = detail::invmod(2, mod);
        return detail::mulmod((1 + sq) % mod, inv2, mod);
    }

    // rho(z) for z in K (split case) as a p-adic number.
    PadicScalar rho(const QuadElem& z, int M, bool conjugate = false) const {
        std::uint64_t r = split_root(M + 4);
        std::uint64_t mod = detail::ppow_checked(p_, M + 4);
        if (conjugate) {
            std::uint64_t tr = mod_floor(d_, 4) == 1 ? 1 : 0;
            r = (tr + mod - r) % mod;
        }
        PadicScalar w = PadicScalar::from_rational(p_, Rational(Integer(static_cast<unsigned long>(r))), M + 4);
        PadicScalar a = PadicScalar::from_rational(p_, z.a(), M + 4);
        PadicScalar b = PadicScalar::from_rational(p_, z.b(), M + 4);
        PadicScalar v = a + b * w;
        return v.truncated(std::min(M, v.precision()));
    }

    // Normalized valuation v(z) with v(p) = 1 (inert, ramified) or the pair of
    // valuations at the two places (split, via rho and its conjugate).
    Rational valuation(const QuadElem& z) const {
        if (z.is_zero()) throw PrecisionExhausted("valuation of 0");
        if (kind_ == LocalKind::Split) throw InvalidParameter("split: use split_valuations");
        Rational v(val_p(z.norm(), p_), 2);
        v.canonicalize();
        return v;
    }
    std::pair<int, int> split_valuations(const QuadElem& z, int M = 20) const {
        Rational n = z.norm();
        if (n == 0) throw PrecisionExhausted("valuation of 0");
        int total = val_p(n, p_);
        PadicScalar r = rho(z, std::max(M, total + 2));
        int v1 = r.val();
        return {v1, total - v1};
    }

    bool is_unit(const QuadElem& z) const {
        if (z.is_zero()) return false;
        if (!integral_at_p(z)) return false;
        return val_p(z.norm(), p_) == 0;
    }
    bool integral_at_p(const QuadElem& z) const { return is_p_integral(z.a(), p_) && is_p_integral(z.b(), p_); }

private:
    std::uint64_t p_;
    long d_;
    LocalKind kind_;
};

}  // namespace padicl
