#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "characters.hpp"
#include "eisenstein.hpp"

namespace padicl {

// (beta1, beta2; chi, k) -> value, over indices with tr(beta1) + beta2 <= trace_bound.
struct CoefficientFamily {
    using Eval = std::function<CyclotomicValue(const Sym2Index&, const Rational&, const DirichletCharacter&, int)>;

    std::uint64_t p = 3;
    long N = 1;
    int kmin = 0, kmax = 0;
    Rational trace_bound = 0;
    std::string tag = "(1,1)";
    Eval eval;

    CyclotomicValue operator()(const Sym2Index& b1, const Rational& b2, const DirichletCharacter& chi, int k) const {
        if (k < kmin || k > kmax) throw InvalidParameter("k = " + std::to_string(k) + " outside the declared range");
        std::uint64_t q = chi.modulus();
        while (q % p == 0) q /= p;
        if (static_cast<std::uint64_t>(N) % q != 0) throw LevelMismatch("chi level does not divide N p^infty");
        if (b1.trace() + b2 > trace_bound)
            throw IndexOverflow("index " + b1.str() + ", " + b2.get_str() + " beyond the trace bound " + trace_bound.get_str());
        return eval(b1, b2, chi, k);
    }
};

// The a' (or a) family of one component.
inline CoefficientFamily eisenstein_family(const SetupData& S, CoeffFamily fam, const BetaLattice& L, const Rational& trace_bound,
                                           const CoeffOptions& o = {}) {
    auto r = critical_range(S.params);
    CoefficientFamily F;
    F.p = S.p;
    F.N = S.N;
    F.kmin = r.kmin;
    F.kmax = r.kmax;
    F.trace_bound = trace_bound;
    F.tag = fam == CoeffFamily::A ? "a(1,1)" : "a'(1,1)";
    F.eval = [S, fam, L, o](const Sym2Index& b1, const Rational& b2, const DirichletCharacter& chi, int k) {
        return a_sum(b1, b2, chi, k, S, fam, L, o);
    };
    return F;
}

// (beta1, beta2) -> sum_{x mod p^n} F(p^n [[p^n, 0], [x, 1]] beta1 [[p^n, x], [0, 1]], p^n beta2).
inline CoefficientFamily up_conjugate_sum(const CoefficientFamily& F, int n) {
    if (n < 0) throw InvalidParameter("n must be non-negative");
    if (n == 0) return F;
    CoefficientFamily G = F;
    std::uint64_t pn = detail::ppow_checked(F.p, n);
    G.tag = "U^" + std::to_string(n) + " " + F.tag;
    G.eval = [F, pn](const Sym2Index& b1, const Rational& b2, const DirichletCharacter& chi, int k) {
        Rational t(static_cast<unsigned long>(pn));
        CyclotomicValue acc(0);
        for (std::uint64_t x = 0; x < pn; ++x) acc = acc + F(b1.conjugated(t, Rational(static_cast<unsigned long>(x)), t), t * b2, chi, k);
        return acc;
    };
    // The conjugated indices carry their own trace check inside F.
    G.trace_bound = Rational(std::numeric_limits<long>::max());
    return G;
}

struct StabilizedCoefficient {
    CyclotomicValue value;
    int depth = 0;
    std::vector<CyclotomicValue> history;  // U^n values, n = 0 .. depth + 2
};

// First n with U^n F == U^{n+1} F == U^{n+2} F mod p^M (the extra step asserts the Cauchy property).
inline StabilizedCoefficient ordinary_stabilize(const std::function<CyclotomicValue(int)>& step, std::uint64_t p, int M, int max_depth) {
    StabilizedCoefficient r;
    r.history.push_back(step(0));
    r.history.push_back(step(1));
    for (int n = 0; n <= max_depth; ++n) {
        r.history.push_back(step(n + 2));
        const auto& h = r.history;
        if (congruent_mod(h[n], h[n + 1], p, M) && congruent_mod(h[n + 1], h[n + 2], p, M)) {
            r.value = h[n];
            r.depth = n;
            return r;
        }
    }
    throw NoStabilization("no agreement mod p^" + std::to_string(M) + " up to depth " + std::to_string(max_depth));
}

inline StabilizedCoefficient ordinary_stabilize(const CoefficientFamily& F, const Sym2Index& b1, const Rational& b2, const DirichletCharacter& chi,
                                                int k, int M, int max_depth) {
    return ordinary_stabilize([&](int n) { return up_conjugate_sum(F, n)(b1, b2, chi, k); }, F.p, M, max_depth);
}

// ---------------------------------------------------------------- finite-level measures

namespace detail {

inline std::vector<std::uint64_t> units_mod(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t a = 0; a < n; ++a)
        if (std::gcd(a, n) == 1) out.push_back(a % std::max<std::uint64_t>(n, 1));
    if (n == 1) out = {0};
    return out;
}

// Projection of a in Z_p^x to 1 + p Z_p (p odd) or 1 + 4 Z_2, modulo p^m.
inline std::uint64_t one_unit_part(std::uint64_t a, std::uint64_t p, int m) {
    std::uint64_t mod = ppow_checked(p, m);
    a %= mod;
    if (m == 0) return 0;
    if (p == 2) return a % 4 == 1 ? a : (mod - a) % mod;
    std::uint64_t w = teichmuller(p, a % p, m);
    return mulmod(a, invmod(w, mod), mod);
}

}  // namespace detail

struct FiniteLevelMeasure {
    std::uint64_t p = 3;
    long N = 1;
    int m = 1;
    int M = 6;
    std::map<std::uint64_t, CyclotomicValue> table;  // a in (Z/N p^m)^x

    std::uint64_t modulus() const { return static_cast<std::uint64_t>(N) * detail::ppow_checked(p, m); }

    static FiniteLevelMeasure point_mass(std::uint64_t p, long N, int m, int M, std::uint64_t a, const CyclotomicValue& mass = CyclotomicValue(1)) {
        FiniteLevelMeasure mu{p, N, m, M, {}};
        std::uint64_t n = mu.modulus();
        if (std::gcd(a % n, n) != 1) throw InvalidParameter("point mass at a non-unit");
        for (auto u : detail::units_mod(n)) mu.table[u] = CyclotomicValue(0);
        mu.table[a % n] = mass;
        return mu;
    }

    CyclotomicValue at(std::uint64_t a) const {
        auto it = table.find(a % modulus());
        return it == table.end() ? CyclotomicValue(0) : it->second;
    }

    // Sum over the fibers of G_m -> G_{m-1}.
    FiniteLevelMeasure pushforward() const {
        if (m == 0) throw LevelMismatch("no lower level");
        FiniteLevelMeasure r{p, N, m - 1, M, {}};
        std::uint64_t n = r.modulus();
        for (auto u : detail::units_mod(n)) r.table[u] = CyclotomicValue(0);
        for (auto& [a, v] : table) r.table[a % n] = r.table[a % n] + v;
        return r;
    }
    FiniteLevelMeasure pushforward_to(int level) const {
        if (level > m) throw LevelMismatch("cannot raise a measure's level");
        FiniteLevelMeasure r = *this;
        while (r.m > level) r = r.pushforward();
        return r;
    }

    friend bool operator==(const FiniteLevelMeasure& x, const FiniteLevelMeasure& y) {
        if (x.p != y.p || x.N != y.N || x.m != y.m) return false;
        for (auto& [a, v] : x.table)
            if (v != y.at(a)) return false;
        for (auto& [a, v] : y.table)
            if (v != x.at(a)) return false;
        return true;
    }
    // Equality of the tables mod p^M (the smaller of the two precisions).
    friend bool congruent(const FiniteLevelMeasure& x, const FiniteLevelMeasure& y) {
        if (x.p != y.p || x.N != y.N || x.m != y.m) return false;
        int M = std::min(x.M, y.M);
        for (auto& [a, v] : x.table)
            if (!congruent_mod(v, y.at(a), x.p, M)) return false;
        return true;
    }
};

using CharacterValues = std::vector<std::pair<DirichletCharacter, CyclotomicValue>>;

// mu(a) = |G_m|^{-1} sum_chi chi^{-1}(a) value(chi); every mu(a) must be p-integral.
inline FiniteLevelMeasure measure_from_values(std::uint64_t p, long N, int m, const CharacterValues& values, int M) {
    FiniteLevelMeasure mu{p, N, m, M, {}};
    std::uint64_t n = mu.modulus();
    auto chars = DirichletCharacter::all(n);
    std::vector<const CyclotomicValue*> val(chars.size(), nullptr);
    for (auto& [chi, v] : values) {
        DirichletCharacter c = chi.modulus() == n ? chi : chi.lifted(n);
        auto it = std::find(chars.begin(), chars.end(), c);
        if (it == chars.end()) throw LevelMismatch("character " + chi.str() + " is not a character of (Z/" + std::to_string(n) + ")^x");
        std::size_t i = static_cast<std::size_t>(it - chars.begin());
        if (val[i]) throw InvalidParameter("two values for " + chi.str());
        val[i] = &v;
    }
    for (std::size_t i = 0; i < chars.size(); ++i)
        if (!val[i]) throw InvalidParameter("no value for " + chars[i].str());
    Rational inv_order(1L, static_cast<long>(chars.size()));
    std::vector<std::string> bad;
    for (auto a : detail::units_mod(n)) {
        CyclotomicValue s(0);
        for (std::size_t i = 0; i < chars.size(); ++i) s = s + chars[i].inverse()(static_cast<long long>(a)) * *val[i];
        s = s * CyclotomicValue(inv_order);
        if (!s.is_zero() && s.content_valuation(p) < 0) bad.push_back(std::to_string(a) + " (valuation " + std::to_string(s.content_valuation(p)) + ")");
        mu.table[a] = s;
    }
    if (!bad.empty()) {
        std::string msg = "non-integral masses at";
        for (auto& b : bad) msg += " " + b;
        throw KummerViolation(msg);
    }
    return mu;
}

// sum_a chi(a) <a>^k mu(a), with <a> the 1-unit part of a mod p^m read as an integer.
inline CyclotomicValue evaluate_measure(const FiniteLevelMeasure& mu, const DirichletCharacter& chi, int k) {
    std::uint64_t n = mu.modulus();
    if (n % chi.modulus() != 0) throw LevelMismatch("character level exceeds the measure level");
    std::uint64_t pm = detail::ppow_checked(mu.p, mu.m);
    CyclotomicValue acc(0);
    for (auto& [a, v] : mu.table) {
        if (v.is_zero()) continue;
        CyclotomicValue c = chi(static_cast<long long>(a % chi.modulus()));
        if (k != 0) {
            std::uint64_t u = detail::one_unit_part(a, mu.p, mu.m);
            std::uint64_t e = k > 0 ? detail::powmod(u, static_cast<std::uint64_t>(k), pm)
                                    : detail::powmod(detail::invmod(u, pm), static_cast<std::uint64_t>(-k), pm);
            c = c * CyclotomicValue(Rational(static_cast<unsigned long>(e)));
        }
        acc = acc + c * v;
    }
    return acc;
}

// Group-ring product; a finer measure is pushed forward to the coarser level first.
inline FiniteLevelMeasure convolve(const FiniteLevelMeasure& x, const FiniteLevelMeasure& y) {
    if (x.p != y.p || x.N != y.N) throw LevelMismatch("measures on different groups");
    int m = std::min(x.m, y.m);
    FiniteLevelMeasure a = x.pushforward_to(m), b = y.pushforward_to(m);
    FiniteLevelMeasure r{x.p, x.N, m, std::min(x.M, y.M), {}};
    std::uint64_t n = r.modulus();
    for (auto u : detail::units_mod(n)) r.table[u] = CyclotomicValue(0);
    for (auto& [s, vs] : a.table) {
        if (vs.is_zero()) continue;
        for (auto& [t, vt] : b.table) {
            if (vt.is_zero()) continue;
            std::uint64_t c = detail::mulmod(s, t, n);
            r.table[c] = r.table[c] + vs * vt;
        }
    }
    return r;
}

// The group-ring element of mu written as sum_delta [delta] F_delta(T), T = [gamma] - 1,
// gamma = 1 + p, delta running over the torsion classes (p odd).
struct MellinTransform {
    std::uint64_t p = 3;
    long N = 1;
    int m = 1;
    std::map<std::uint64_t, std::vector<CyclotomicValue>> components;  // delta -> coefficients of T^0, T^1, ...
    bool invertible = false;  // the finite-level unit check
};

inline MellinTransform mellin(const FiniteLevelMeasure& mu) {
    if (mu.p == 2) throw InvalidParameter("mellin needs p odd");
    MellinTransform r{mu.p, mu.N, mu.m, {}, false};
    std::uint64_t n = mu.modulus(), pm = detail::ppow_checked(mu.p, mu.m);
    std::uint64_t gamma = (1 + mu.p) % pm;
    std::uint64_t order = mu.m >= 1 ? pm / mu.p : 1;  // order of gamma mod p^m
    std::map<std::uint64_t, std::uint64_t> dlog;
    std::uint64_t g = 1 % pm;
    for (std::uint64_t j = 0; j < order; ++j) {
        dlog[g] = j;
        g = detail::mulmod(g, gamma, pm);
    }
    // gamma^j as an element of (Z/n)^x that is 1 mod N
    auto lift = [&](std::uint64_t j) {
        std::uint64_t x = detail::powmod(gamma, j, pm);
        return detail::crt_lift(x, pm, n) % n;
    };
    std::vector<std::vector<Rational>> binom(order, std::vector<Rational>(order, Rational(0)));
    for (std::uint64_t j = 0; j < order; ++j) {
        binom[j][0] = 1;
        for (std::uint64_t i = 1; i <= j; ++i) binom[j][i] = binom[j - 1][i - 1] + (i < j ? binom[j - 1][i] : Rational(0));
    }
    for (auto& [a, v] : mu.table) {
        std::uint64_t j = mu.m >= 1 ? dlog.at(detail::one_unit_part(a, mu.p, mu.m)) : 0;
        std::uint64_t delta = detail::mulmod(a, detail::invmod(lift(j), n), n);
        auto& c = r.components[delta];
        if (c.empty()) c.assign(order, CyclotomicValue(0));
        if (v.is_zero()) continue;
        for (std::uint64_t i = 0; i <= j; ++i) c[i] = c[i] + v * CyclotomicValue(binom[j][i]);
    }
    // Unit iff every character of order prime to p is a p-adic unit on it.
    r.invertible = true;
    for (auto& chi : DirichletCharacter::all(n)) {
        std::uint64_t ord = 1;
        while (!chi.pow(static_cast<long>(ord)).is_trivial()) ++ord;
        if (ord % mu.p == 0) continue;
        CyclotomicValue s = evaluate_measure(mu, chi, 0);
        if (s.is_zero() || s.valuation(mu.p) != 0) {
            r.invertible = false;
            break;
        }
    }
    return r;
}

}  // namespace padicl
