#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "laurent.hpp"
#include "rational.hpp"

namespace padicl {

// Exact archimedean monomial  r * sqrt(R) * pi^(h/2) * i^ph  with R a
// squarefree positive integer.
class ArchValue {
public:
    ArchValue() = default;
    ArchValue(const Rational& r) : r_(r) {}

    static ArchValue pi_half_power(int h) {
        ArchValue a(1);
        a.h_ = h;
        return a;
    }
    static ArchValue i_power(int k) {
        ArchValue a(1);
        a.ph_ = static_cast<int>(mod_floor(k, 4));
        return a;
    }
    // b^(e/2) for a positive rational b.
    static ArchValue rational_half_power(const Rational& b, int e) {
        if (b <= 0) throw InvalidParameter("base must be positive");
        long fl = e >= 0 ? e / 2 : -((-e + 1) / 2);
        ArchValue a(qpow(b, fl));
        if (e - 2 * fl == 1) {
            Integer nd = b.get_num() * b.get_den();
            std::uint64_t s, f;
            squarefree_split(nd.get_ui(), s, f);
            a.r_ *= Rational(Integer(static_cast<unsigned long>(f))) / Rational(b.get_den());
            a.R_ = s;
        }
        return a;
    }

    const Rational& rational() const { return r_; }
    std::uint64_t radicand() const { return R_; }
    int pi_twice_exponent() const { return h_; }
    int i_exponent() const { return ph_; }
    bool is_zero() const { return r_ == 0; }

    friend ArchValue operator*(const ArchValue& a, const ArchValue& b) {
        ArchValue c;
        std::uint64_t g = std::gcd(a.R_, b.R_);
        c.r_ = a.r_ * b.r_ * Rational(Integer(static_cast<unsigned long>(g)));
        c.R_ = (a.R_ / g) * (b.R_ / g);
        c.h_ = a.h_ + b.h_;
        c.ph_ = (a.ph_ + b.ph_) % 4;
        return c;
    }
    ArchValue inv() const {
        if (r_ == 0) throw DivisionByZero("inverse of 0");
        ArchValue c;
        c.r_ = Rational(1) / (r_ * Rational(Integer(static_cast<unsigned long>(R_))));
        c.R_ = R_;
        c.h_ = -h_;
        c.ph_ = (4 - ph_) % 4;
        return c;
    }
    friend ArchValue operator/(const ArchValue& a, const ArchValue& b) { return a * b.inv(); }
    friend bool operator==(const ArchValue& a, const ArchValue& b) {
        if (a.r_ == 0 || b.r_ == 0) return a.r_ == b.r_;
        return a.r_ == b.r_ && a.R_ == b.R_ && a.h_ == b.h_ && a.ph_ == b.ph_;
    }

    std::complex<long double> to_complex() const {
        long double m = static_cast<long double>(r_.get_d()) * std::sqrt(static_cast<long double>(R_)) *
                        std::pow(std::numbers::pi_v<long double>, h_ / 2.0L);
        static const std::complex<long double> I[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        return m * I[ph_];
    }

    std::string str() const {
        std::string s = r_.get_str();
        if (R_ != 1) s += "*sqrt(" + std::to_string(R_) + ")";
        if (h_) s += "*pi^(" + std::to_string(h_) + "/2)";
        if (ph_) s += "*i^" + std::to_string(ph_);
        return s;
    }

private:
    Rational r_ = 0;
    std::uint64_t R_ = 1;
    int h_ = 0;
    int ph_ = 0;
};

// Gamma(x) for a half-integer x off the non-positive integers.
inline ArchValue gamma_half_integer(HalfInt x) {
    if (x.is_integer() && x.twice <= 0) throw GammaPole("Gamma at " + x.str());
    if (x.is_integer()) {
        Integer f = 1;
        for (int k = 2; k < x.twice / 2; ++k) f *= k;
        return ArchValue(Rational(f));
    }
    // Gamma(1/2) = sqrt(pi); shift by the recursion Gamma(x+1) = x Gamma(x)
    Rational r = 1;
    int t = 1;  // current 2x
    while (t < x.twice) {
        r *= Rational(t, 2);
        t += 2;
    }
    while (t > x.twice) {
        t -= 2;
        r /= Rational(t, 2);
    }
    return ArchValue(r) * ArchValue::pi_half_power(1);
}

// Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s)
inline ArchValue gamma_C(HalfInt s) {
    return ArchValue(2) * ArchValue::rational_half_power(Rational(2), -s.twice) * ArchValue::pi_half_power(-s.twice) *
           gamma_half_integer(s);
}

}  // namespace padicl
