#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "cyclotomic.hpp"
#include "errors.hpp"

namespace padicl {

// s restricted to half-integers, stored as 2s.
struct HalfInt {
    int twice = 0;
    static HalfInt integer(int k) { return {2 * k}; }
    static HalfInt half(int twice) { return {twice}; }
    static HalfInt parse(const std::string& s) {
        Rational r = parse_rational(s);
        Rational t = 2 * r;
        if (t.get_den() != 1) throw InvalidParameter("s must be a half-integer: " + s);
        return {static_cast<int>(t.get_num().get_si())};
    }
    bool is_integer() const { return twice % 2 == 0; }
    HalfInt operator+(HalfInt o) const { return {twice + o.twice}; }
    HalfInt operator-(HalfInt o) const { return {twice - o.twice}; }
    HalfInt operator-() const { return {-twice}; }
    friend bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
    Rational value() const { return Rational(twice, 2); }
    std::string str() const { return is_integer() ? std::to_string(twice / 2) : std::to_string(twice) + "/2"; }
};

// Laurent polynomial in X with cyclotomic coefficients.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(const CyclotomicValue& c) {
        if (!c.is_zero()) c_[0] = c;
    }
    static LaurentPoly monomial(const CyclotomicValue& c, int e) {
        LaurentPoly p;
        if (!c.is_zero()) p.c_[e] = c;
        return p;
    }
    static LaurentPoly X() { return monomial(CyclotomicValue(1), 1); }

    const std::map<int, CyclotomicValue>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int min_exp() const { return c_.empty() ? 0 : c_.begin()->first; }
    int max_exp() const { return c_.empty() ? 0 : c_.rbegin()->first; }
    CyclotomicValue coeff(int e) const {
        auto it = c_.find(e);
        return it == c_.end() ? CyclotomicValue(0) : it->second;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (auto& [e, c] : b.c_) r.add(e, c);
        return r;
    }
    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& [e, c] : r.c_) c = -c;
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (auto& [e1, c1] : a.c_)
            for (auto& [e2, c2] : b.c_) r.add(e1 + e2, c1 * c2);
        return r;
    }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return (a - b).is_zero(); }

    // X -> c * X^k
    LaurentPoly substitute(const CyclotomicValue& c, int k) const {
        LaurentPoly r;
        for (auto& [e, a] : c_) r.add(e * k, a * c.pow(e));
        return r;
    }

    CyclotomicValue eval(const CyclotomicValue& x) const {
        CyclotomicValue s;
        for (auto& [e, a] : c_) s = s + a * x.pow(e);
        return s;
    }

    bool coefficients_rational() const {
        for (auto& [e, a] : c_)
            if (!a.is_rational()) return false;
        return true;
    }

    // Exact division by d; nullopt when the remainder is nonzero.
    std::optional<LaurentPoly> divide_exact(const LaurentPoly& d) const {
        if (d.is_zero()) throw DivisionByZero("division by the zero polynomial");
        if (is_zero()) return LaurentPoly();
        int shift_n = min_exp(), shift_d = d.min_exp();
        std::map<int, CyclotomicValue> rem;
        for (auto& [e, a] : c_) rem[e - shift_n] = a;
        int dd = d.max_exp() - shift_d;
        CyclotomicValue lead_inv = d.coeff(d.max_exp()).inv();
        LaurentPoly q;
        while (!rem.empty() && rem.rbegin()->first >= dd) {
            int top = rem.rbegin()->first;
            CyclotomicValue f = rem.rbegin()->second * lead_inv;
            q.add(top - dd, f);
            for (auto& [e, a] : d.c_) {
                int k = top - dd + (e - shift_d);
                CyclotomicValue v = (rem.count(k) ? rem[k] : CyclotomicValue(0)) - f * a;
                if (v.is_zero()) rem.erase(k);
                else rem[k] = v;
            }
        }
        if (!rem.empty()) return std::nullopt;
        return q * monomial(CyclotomicValue(1), shift_n - shift_d);
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [e, a] : c_) {
            if (!first) os << " + ";
            first = false;
            os << "[" << a.str() << "]";
            if (e) os << "*X^" << e;
        }
        return os.str();
    }

private:
    void add(int e, const CyclotomicValue& v) {
        auto it = c_.find(e);
        if (it == c_.end()) {
            if (!v.is_zero()) c_[e] = v;
            return;
        }
        it->second = it->second + v;
        if (it->second.is_zero()) c_.erase(it);
    }

    std::map<int, CyclotomicValue> c_;
};

// Rational function in X = q^{-s}: num / den.
class RationalInQ {
public:
    RationalInQ() : num_(CyclotomicValue(0)), den_(CyclotomicValue(1)) {}
    RationalInQ(const CyclotomicValue& c) : num_(c), den_(CyclotomicValue(1)) {}
    RationalInQ(LaurentPoly n, LaurentPoly d, std::uint64_t q = 0) : num_(std::move(n)), den_(std::move(d)), q_(q) {
        if (den_.is_zero()) throw DivisionByZero("zero denominator");
    }
    static RationalInQ one(std::uint64_t q) { return RationalInQ(LaurentPoly(CyclotomicValue(1)), LaurentPoly(CyclotomicValue(1)), q); }

    std::uint64_t q() const { return q_; }
    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    friend RationalInQ operator*(const RationalInQ& a, const RationalInQ& b) {
        return RationalInQ(a.num_ * b.num_, a.den_ * b.den_, merge_q(a, b));
    }
    friend RationalInQ operator/(const RationalInQ& a, const RationalInQ& b) {
        if (b.num_.is_zero()) throw DivisionByZero("division by the zero function");
        return RationalInQ(a.num_ * b.den_, a.den_ * b.num_, merge_q(a, b));
    }
    friend RationalInQ operator+(const RationalInQ& a, const RationalInQ& b) {
        return RationalInQ(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, merge_q(a, b));
    }
    RationalInQ inv() const { return one(q_) / *this; }
    RationalInQ pow(int e) const {
        RationalInQ r = one(q_);
        RationalInQ b = e >= 0 ? *this : inv();
        for (int i = 0; i < std::abs(e); ++i) r = r * b;
        return r;
    }
    friend bool operator==(const RationalInQ& a, const RationalInQ& b) { return a.num_ * b.den_ == b.num_ * a.den_; }
    friend bool operator!=(const RationalInQ& a, const RationalInQ& b) { return !(a == b); }

    // s -> a*s + b/2 written on X: X -> q^{-b/2} X^a.
    RationalInQ shift(int a, int twice_b) const {
        if (q_ == 0) return *this;
        CyclotomicValue c = CyclotomicValue::q_half_power(q_, -twice_b);
        return RationalInQ(num_.substitute(c, a), den_.substitute(c, a), q_);
    }
    // s -> 1 - s
    RationalInQ reflect() const { return shift(-1, 2); }

    CyclotomicValue eval_X(const CyclotomicValue& x) const {
        CyclotomicValue d = den_.eval(x);
        if (d.is_zero()) throw PoleAtSpecialization("denominator vanishes");
        return num_.eval(x) / d;
    }
    // Value at X = q^{-s}.
    CyclotomicValue at(HalfInt s) const {
        if (q_ == 0) return eval_X(CyclotomicValue(1));
        CyclotomicValue x = CyclotomicValue::q_half_power(q_, -s.twice);
        CyclotomicValue d = den_.eval(x);
        if (d.is_zero()) throw PoleAtSpecialization("pole at s = " + s.str());
        return num_.eval(x) / d;
    }

    bool coefficients_rational() const { return num_.coefficients_rational() && den_.coefficients_rational(); }

    // The quotient as a Laurent polynomial when den divides num exactly.
    std::optional<LaurentPoly> as_laurent() const { return num_.divide_exact(den_); }

    std::string str() const { return "(" + num_.str() + ") / (" + den_.str() + ")"; }

private:
    static std::uint64_t merge_q(const RationalInQ& a, const RationalInQ& b) {
        if (a.q_ && b.q_ && a.q_ != b.q_) throw LevelMismatch("factors at different primes");
        return a.q_ ? a.q_ : b.q_;
    }

    LaurentPoly num_, den_;
    std::uint64_t q_ = 0;
};

}  // namespace padicl
