#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "padic.hpp"
#include "rational.hpp"

namespace padicl {

namespace detail {

// Power-basis data for Q(zeta_L): the cyclotomic polynomial and x^j mod Phi_L.
struct FieldTable {
    int L = 1;
    int phi = 1;
    std::vector<long long> Phi;                   // monic, degree phi
    std::vector<std::vector<long long>> powers;  // powers[j] = x^j mod Phi_L, j < L
};

inline std::vector<long long> poly_divexact(std::vector<long long> num, const std::vector<long long>& den) {
    // both given low-degree first; den monic
    int dn = static_cast<int>(num.size()) - 1, dd = static_cast<int>(den.size()) - 1;
    std::vector<long long> q(dn - dd + 1, 0);
    for (int i = dn; i >= dd; --i) {
        long long c = num[i];
        q[i - dd] = c;
        if (c)
            for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    return q;
}

inline std::vector<long long> cyclotomic_poly(int L) {
    static std::map<int, std::vector<long long>> cache;
    static std::mutex m;
    {
        std::lock_guard<std::mutex> g(m);
        auto it = cache.find(L);
        if (it != cache.end()) return it->second;
    }
    std::vector<long long> p(L + 1, 0);
    p[0] = -1;
    p[L] = 1;
    for (int d = 1; d < L; ++d)
        if (L % d == 0) p = poly_divexact(p, cyclotomic_poly(d));
    std::lock_guard<std::mutex> g(m);
    cache[L] = p;
    return p;
}

inline const FieldTable& field_table(int L) {
    static std::map<int, std::unique_ptr<FieldTable>> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> g(m);
    auto it = cache.find(L);
    if (it != cache.end()) return *it->second;
    auto t = std::make_unique<FieldTable>();
    t->L = L;
    t->Phi = cyclotomic_poly(L);
    t->phi = static_cast<int>(t->Phi.size()) - 1;
    std::vector<long long> cur(t->phi, 0);
    cur[0] = 1;
    for (int j = 0; j < L; ++j) {
        t->powers.push_back(cur);
        // multiply by x and reduce
        long long top = cur[t->phi - 1];
        for (int i = t->phi - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top)
            for (int i = 0; i < t->phi; ++i) cur[i] -= top * t->Phi[i];
    }
    auto& ref = *t;
    cache[L] = std::move(t);
    return ref;
}

inline int canonical_level(int L) { return (L % 4 == 2) ? L / 2 : L; }

inline long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

}  // namespace detail

// Element of Q(zeta_L) in the power basis 1, z, ..., z^(phi(L)-1); L is kept
// canonical (never 2 mod 4).
class Cyc {
public:
    Cyc() : L_(1), a_(1, Rational(0)) {}
    explicit Cyc(const Rational& r) : L_(1), a_(1, r) {}

    static Cyc zero_at(int L) {
        Cyc c;
        c.L_ = detail::canonical_level(L);
        c.a_.assign(detail::field_table(c.L_).phi, Rational(0));
        return c;
    }

    // zeta_L^j
    static Cyc root_of_unity(int L, long long j) {
        if (L <= 0) throw InvalidParameter("root of unity order must be positive");
        j = mod_floor(j, L);
        if (L % 4 == 2) {
            int m = L / 2;
            Cyc r = root_of_unity(m, j * ((m + 1) / 2));
            return (j % 2) ? -r : r;
        }
        Cyc c = zero_at(L);
        const auto& t = detail::field_table(L);
        for (int i = 0; i < t.phi; ++i) c.a_[i] = Rational(static_cast<long>(t.powers[j][i]));
        return c;
    }

    // Exact sum of counts[j] * zeta_L^j.
    static Cyc from_exponent_counts(int L, const std::vector<Rational>& counts) {
        if (L % 4 == 2) {
            int m = L / 2;
            std::vector<Rational> c2(m, Rational(0));
            for (int j = 0; j < L; ++j) {
                if (counts[j] == 0) continue;
                long long e = mod_floor(static_cast<long long>(j) * ((m + 1) / 2), m);
                if (j % 2) c2[e] -= counts[j];
                else c2[e] += counts[j];
            }
            return from_exponent_counts(m, c2);
        }
        Cyc c = zero_at(L);
        const auto& t = detail::field_table(L);
        for (int j = 0; j < L; ++j) {
            if (counts[j] == 0) continue;
            for (int i = 0; i < t.phi; ++i)
                if (t.powers[j][i]) c.a_[i] += counts[j] * static_cast<long>(t.powers[j][i]);
        }
        return c;
    }

    int level() const { return L_; }
    const std::vector<Rational>& coeffs() const { return a_; }

    bool is_zero() const {
        for (auto& x : a_)
            if (x != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < a_.size(); ++i)
            if (a_[i] != 0) return false;
        return true;
    }
    Rational rational_part() const { return a_[0]; }

    Cyc lifted(int L2) const {
        L2 = detail::canonical_level(L2);
        if (L2 == L_) return *this;
        if (L2 % L_ != 0) throw InvalidParameter("lift to a non-multiple level");
        Cyc c = zero_at(L2);
        const auto& t = detail::field_table(L2);
        int step = L2 / L_;
        for (size_t k = 0; k < a_.size(); ++k) {
            if (a_[k] == 0) continue;
            const auto& pw = t.powers[(k * step) % L2];
            for (int i = 0; i < t.phi; ++i)
                if (pw[i]) c.a_[i] += a_[k] * static_cast<long>(pw[i]);
        }
        return c;
    }

    static int common_level(const Cyc& a, const Cyc& b) {
        return detail::canonical_level(static_cast<int>(detail::lcm_ll(a.L_, b.L_)));
    }

    Cyc operator-() const {
        Cyc c = *this;
        for (auto& x : c.a_) x = -x;
        return c;
    }

    friend Cyc operator+(const Cyc& x, const Cyc& y) {
        int L = common_level(x, y);
        Cyc a = x.lifted(L), b = y.lifted(L);
        for (size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
        return a;
    }
    friend Cyc operator-(const Cyc& x, const Cyc& y) { return x + (-y); }

    friend Cyc operator*(const Cyc& x, const Cyc& y) {
        if (x.L_ == 1) return y.scaled(x.a_[0]);
        if (y.L_ == 1) return x.scaled(y.a_[0]);
        int L = common_level(x, y);
        Cyc a = x.lifted(L), b = y.lifted(L);
        const auto& t = detail::field_table(L);
        std::vector<Rational> prod(2 * t.phi - 1, Rational(0));
        for (int i = 0; i < t.phi; ++i) {
            if (a.a_[i] == 0) continue;
            for (int j = 0; j < t.phi; ++j)
                if (b.a_[j] != 0) prod[i + j] += a.a_[i] * b.a_[j];
        }
        Cyc c = zero_at(L);
        for (int d = 0; d < static_cast<int>(prod.size()); ++d) {
            if (prod[d] == 0) continue;
            if (d < t.phi) {
                c.a_[d] += prod[d];
                continue;
            }
            const auto& pw = t.powers[d % L];
            for (int i = 0; i < t.phi; ++i)
                if (pw[i]) c.a_[i] += prod[d] * static_cast<long>(pw[i]);
        }
        return c;
    }

    Cyc scaled(const Rational& r) const {
        Cyc c = *this;
        for (auto& x : c.a_) x *= r;
        return c;
    }

    // Complex conjugation zeta -> zeta^-1.
    Cyc conj() const {
        const auto& t = detail::field_table(L_);
        Cyc c = zero_at(L_);
        for (int k = 0; k < t.phi; ++k) {
            if (a_[k] == 0) continue;
            const auto& pw = t.powers[(L_ - k) % L_];
            for (int i = 0; i < t.phi; ++i)
                if (pw[i]) c.a_[i] += a_[k] * static_cast<long>(pw[i]);
        }
        return c;
    }

    // Matrix of multiplication by this element in the power basis (column j = this * z^j).
    std::vector<std::vector<Rational>> mult_matrix() const {
        const auto& t = detail::field_table(L_);
        std::vector<std::vector<Rational>> M(t.phi, std::vector<Rational>(t.phi, Rational(0)));
        for (int j = 0; j < t.phi; ++j) {
            Cyc col = *this * root_of_unity(L_, j);
            for (int i = 0; i < t.phi; ++i) M[i][j] = col.a_[i];
        }
        return M;
    }

    Cyc inv() const {
        if (is_zero()) throw DivisionByZero("inverse of 0 in a cyclotomic field");
        if (L_ == 1) return Cyc(Rational(1) / a_[0]);
        auto M = mult_matrix();
        int n = static_cast<int>(M.size());
        std::vector<Rational> rhs(n, Rational(0));
        rhs[0] = 1;
        for (int col = 0; col < n; ++col) {
            int piv = col;
            while (piv < n && M[piv][col] == 0) ++piv;
            if (piv == n) throw DivisionByZero("singular multiplication matrix");
            std::swap(M[piv], M[col]);
            std::swap(rhs[piv], rhs[col]);
            Rational inv = Rational(1) / M[col][col];
            for (int j = col; j < n; ++j) M[col][j] *= inv;
            rhs[col] *= inv;
            for (int r = 0; r < n; ++r) {
                if (r == col || M[r][col] == 0) continue;
                Rational f = M[r][col];
                for (int j = col; j < n; ++j) M[r][j] -= f * M[col][j];
                rhs[r] -= f * rhs[col];
            }
        }
        Cyc c = zero_at(L_);
        c.a_ = rhs;
        return c;
    }

    // Field norm to Q.
    Rational norm() const {
        if (L_ == 1) return a_[0];
        auto M = mult_matrix();
        int n = static_cast<int>(M.size());
        Rational det = 1;
        for (int col = 0; col < n; ++col) {
            int piv = col;
            while (piv < n && M[piv][col] == 0) ++piv;
            if (piv == n) return Rational(0);
            if (piv != col) {
                std::swap(M[piv], M[col]);
                det = -det;
            }
            det *= M[col][col];
            for (int r = col + 1; r < n; ++r) {
                if (M[r][col] == 0) continue;
                Rational f = M[r][col] / M[col][col];
                for (int j = col; j < n; ++j) M[r][j] -= f * M[col][j];
            }
        }
        return det;
    }

    friend bool operator==(const Cyc& x, const Cyc& y) { return (x - y).is_zero(); }
    friend bool operator!=(const Cyc& x, const Cyc& y) { return !(x == y); }

    std::complex<double> to_complex() const {
        std::complex<long double> s = 0;
        const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
        for (size_t k = 0; k < a_.size(); ++k) {
            if (a_[k] == 0) continue;
            long double ang = two_pi * static_cast<long double>(k) / L_;
            s += static_cast<long double>(a_[k].get_d()) * std::complex<long double>(std::cos(ang), std::sin(ang));
        }
        return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
    }

    // Minimum p-adic valuation of power-basis coordinates (an integral basis
    // of Z[zeta_L]); +infinity is reported as INT_MAX.
    int content_valuation(std::uint64_t p) const {
        int best = std::numeric_limits<int>::max();
        for (auto& x : a_)
            if (x != 0) best = std::min(best, val_p(x, p));
        return best;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (size_t k = 0; k < a_.size(); ++k) {
            if (a_[k] == 0) continue;
            if (!first) os << " + ";
            first = false;
            os << a_[k].get_str();
            if (k > 0) os << "*z" << L_ << "^" << k;
        }
        if (first) os << "0";
        return os.str();
    }

private:
    int L_;
    std::vector<Rational> a_;
};

// Exact element  sum_r sqrt(r) * c_r  with r squarefree positive integers and
// c_r in a common cyclotomic field.  Formal square roots stay symbolic so that
// p-adic embeddings are available whenever sqrt(r) exists in Q_p; equality is
// decided after rewriting every sqrt(r) as a cyclotomic element.
class CyclotomicValue {
public:
    CyclotomicValue() = default;
    CyclotomicValue(long n) { if (n) terms_[1] = Cyc(Rational(n)); }
    CyclotomicValue(const Rational& r) { if (r != 0) terms_[1] = Cyc(r); }
    CyclotomicValue(const Cyc& c) { if (!c.is_zero()) terms_[1] = c; }

    static CyclotomicValue root_of_unity(int L, long long j) { return CyclotomicValue(Cyc::root_of_unity(L, j)); }

    // sqrt(x) for a positive rational x.
    static CyclotomicValue sqrt_rational(const Rational& x) {
        if (x <= 0) throw InvalidParameter("sqrt of a non-positive rational");
        Integer nd = x.get_num() * x.get_den();
        if (!nd.fits_ulong_p()) throw InvalidParameter("radicand too large");
        std::uint64_t s, f;
        squarefree_split(nd.get_ui(), s, f);
        Rational coef = Rational(Integer(static_cast<unsigned long>(f))) / Rational(x.get_den());
        CyclotomicValue v;
        v.terms_[s] = Cyc(coef);
        return v;
    }

    // q^(e/2) for a prime power q (any integer e).
    static CyclotomicValue q_half_power(std::uint64_t q, long e) {
        Rational base(Integer(static_cast<unsigned long>(q)));
        long ee = e >= 0 ? e / 2 : -((-e + 1) / 2);
        CyclotomicValue r(qpow(base, ee));
        if (e - 2 * ee == 1) r = r * sqrt_rational(base);
        return r;
    }

    const std::map<std::uint64_t, Cyc>& terms() const { return terms_; }

    bool is_zero() const { return to_pure().is_zero(); }
    bool is_rational() const {
        Cyc c = to_pure();
        return c.is_rational();
    }
    Rational to_rational() const {
        Cyc c = to_pure();
        if (!c.is_rational()) throw InvalidParameter("value is not rational");
        return c.rational_part();
    }

    friend CyclotomicValue operator+(const CyclotomicValue& x, const CyclotomicValue& y) {
        CyclotomicValue r = x;
        for (auto& [rad, c] : y.terms_) {
            auto it = r.terms_.find(rad);
            if (it == r.terms_.end()) r.terms_[rad] = c;
            else {
                it->second = it->second + c;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
        return r;
    }
    CyclotomicValue operator-() const {
        CyclotomicValue r = *this;
        for (auto& [rad, c] : r.terms_) c = -c;
        return r;
    }
    friend CyclotomicValue operator-(const CyclotomicValue& x, const CyclotomicValue& y) { return x + (-y); }

    friend CyclotomicValue operator*(const CyclotomicValue& x, const CyclotomicValue& y) {
        CyclotomicValue r;
        for (auto& [r1, c1] : x.terms_)
            for (auto& [r2, c2] : y.terms_) {
                std::uint64_t g = std::gcd(r1, r2);
                std::uint64_t rad = (r1 / g) * (r2 / g);
                Cyc c = (c1 * c2).scaled(Rational(Integer(static_cast<unsigned long>(g))));
                auto it = r.terms_.find(rad);
                if (it == r.terms_.end()) r.terms_[rad] = c;
                else it->second = it->second + c;
            }
        r.prune();
        return r;
    }

    CyclotomicValue inv() const {
        if (terms_.empty()) throw DivisionByZero("inverse of 0");
        if (terms_.size() == 1) {
            auto& [rad, c] = *terms_.begin();
            CyclotomicValue r;
            r.terms_[rad] = c.inv().scaled(Rational(1) / Rational(Integer(static_cast<unsigned long>(rad))));
            return r;
        }
        Cyc p = to_pure();
        if (p.is_zero()) throw DivisionByZero("inverse of 0");
        return CyclotomicValue(p.inv());
    }

    friend CyclotomicValue operator/(const CyclotomicValue& x, const CyclotomicValue& y) { return x * y.inv(); }

    CyclotomicValue pow(long e) const {
        if (e < 0) return inv().pow(-e);
        CyclotomicValue r(1), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    CyclotomicValue conj() const {
        CyclotomicValue r;
        for (auto& [rad, c] : terms_) r.terms_[rad] = c.conj();
        return r;
    }

    friend bool operator==(const CyclotomicValue& x, const CyclotomicValue& y) { return (x - y).is_zero(); }
    friend bool operator!=(const CyclotomicValue& x, const CyclotomicValue& y) { return !(x == y); }

    // sqrt(q) for a prime q as a cyclotomic element (Gauss-sum evaluation).
    static Cyc sqrt_prime_cyc(std::uint64_t q) {
        if (q == 2) return Cyc::root_of_unity(8, 1) + Cyc::root_of_unity(8, 7);
        int Q = static_cast<int>(q);
        std::vector<Rational> counts(Q, Rational(0));
        for (int a = 1; a < Q; ++a) counts[a] = detail::powmod(a, (q - 1) / 2, q) == 1 ? 1 : -1;
        Cyc g = Cyc::from_exponent_counts(Q, counts);
        if (q % 4 == 1) return g;
        return -(Cyc::root_of_unity(4, 1) * g);
    }

    static Cyc sqrt_cyc(std::uint64_t rad) {
        Cyc r(Rational(1));
        for (auto q : prime_factors(rad)) r = r * sqrt_prime_cyc(q);
        return r;
    }

    // Rewrite as a single cyclotomic element.
    Cyc to_pure() const {
        Cyc acc;
        for (auto& [rad, c] : terms_) acc = acc + (rad == 1 ? c : c * sqrt_cyc(rad));
        return acc;
    }

    std::complex<double> to_complex() const {
        std::complex<double> s = 0;
        for (auto& [rad, c] : terms_) s += std::sqrt(static_cast<double>(rad)) * c.to_complex();
        return s;
    }

    // Image under the fixed embedding into Q_p: zeta_L -> Teichmueller(g)^((p-1)/L)
    // for the least primitive root g mod p, sqrt(r) -> the Hensel root whose
    // residue is the least representative.
    PadicScalar to_padic(std::uint64_t p, int M) const {
        PadicScalar acc = PadicScalar::zero(p, M);
        for (auto& [rad, c] : terms_) {
            PadicScalar term = cyc_to_padic(c, p, M);
            if (rad != 1) {
                std::uint64_t root;
                if (!sqrt_mod_prime_power(p, Integer(static_cast<unsigned long>(rad)), M, root))
                    throw EmbeddingUnavailable("sqrt(" + std::to_string(rad) + ") not in Q_" + std::to_string(p));
                term = term * PadicScalar::from_parts(p, 0, root, M);
            }
            acc = acc + term;
        }
        return acc;
    }

    // Power-basis content after rewriting radicals: p-integral iff >= 0.
    int content_valuation(std::uint64_t p) const { return to_pure().content_valuation(p); }
    bool is_p_integral(std::uint64_t p) const { return content_valuation(p) >= 0; }
    // x == y mod p^n Z[zeta]
    friend bool congruent_mod(const CyclotomicValue& x, const CyclotomicValue& y, std::uint64_t p, int n) {
        Cyc d = (x - y).to_pure();
        return d.is_zero() || d.content_valuation(p) >= n;
    }

    // Valuation at p normalized by v(p) = 1, averaged over the primes above p
    // (exact for elements all of whose conjugates share one valuation, such
    // as root-of-unity multiples of rationals and radicals).
    Rational valuation(std::uint64_t p) const {
        if (terms_.empty()) throw PrecisionExhausted("valuation of 0");
        if (terms_.size() == 1) {
            auto& [rad, c] = *terms_.begin();
            Rational nv = Rational(val_p(c.norm(), p), static_cast<long>(detail::field_table(c.level()).phi));
            nv.canonicalize();
            if (rad % p == 0) nv += Rational(1, 2);
            return nv;
        }
        Cyc c = to_pure();
        Rational nv(val_p(c.norm(), p), static_cast<long>(detail::field_table(c.level()).phi));
        nv.canonicalize();
        return nv;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [rad, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            if (rad == 1) os << "(" << c.str() << ")";
            else os << "sqrt(" << rad << ")*(" << c.str() << ")";
        }
        return os.str();
    }

private:
    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second.is_zero()) it = terms_.erase(it);
            else ++it;
        }
    }

    static PadicScalar cyc_to_padic(const Cyc& c, std::uint64_t p, int M) {
        int L = c.level();
        if (c.is_rational()) return PadicScalar::from_rational(p, c.rational_part(), M);
        if ((p - 1) % L != 0)
            throw EmbeddingUnavailable("zeta_" + std::to_string(L) + " not in Q_" + std::to_string(p));
        std::uint64_t mod = detail::ppow_checked(p, M);
        std::uint64_t g = teichmuller(p, primitive_root(p), M);
        std::uint64_t z = detail::powmod(g, (p - 1) / L, mod);
        PadicScalar acc = PadicScalar::zero(p, M);
        PadicScalar zp = PadicScalar::from_parts(p, 0, 1, M);
        PadicScalar zs = PadicScalar::from_parts(p, 0, z, M);
        for (auto& x : c.coeffs()) {
            if (x != 0) acc = acc + PadicScalar::from_rational(p, x, M) * zp;
            zp = zp * zs;
        }
        return acc;
    }

    std::map<std::uint64_t, Cyc> terms_;
};

using CV = CyclotomicValue;

}  // namespace padicl
