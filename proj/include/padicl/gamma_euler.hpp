#pragma once

#include <array>
#include <vector>

#include "arch.hpp"
#include "characters.hpp"
#include "laurent.hpp"

namespace padicl {

namespace detail {

inline LaurentPoly one_minus(const CyclotomicValue& c, int e) {
    return LaurentPoly(CyclotomicValue(1)) - LaurentPoly::monomial(c, e);
}

}  // namespace detail

// L(s, theta) = (1 - t X)^{-1} for unramified theta, else 1.
inline RationalInQ local_L(const LocalCharacter& th) {
    std::uint64_t q = th.prime();
    if (!th.is_unramified()) return RationalInQ::one(q);
    return RationalInQ(LaurentPoly(CyclotomicValue(1)), detail::one_minus(th.t(), 1), q);
}

// d_n(s) = prod_{j=1}^n L(2s+j, Xi_Q chi^2 eta^{n-j}).
inline RationalInQ d_factor(int n, const LocalCharacter& xiQ, const LocalCharacter& chi, const LocalCharacter& eta) {
    if (n < 1 || n > 3) throw InvalidParameter("d_factor needs n in {1,2,3}");
    RationalInQ r = RationalInQ::one(chi.prime());
    for (int j = 1; j <= n; ++j) {
        LocalCharacter th = xiQ * chi * chi;
        for (int e = 0; e < n - j; ++e) th = th * eta;
        r = r * local_L(th).shift(2, 2 * j);
    }
    return r;
}

// g(chi) = sum_{a mod p^m} chi(a) psi_p(a/p^m) with psi_p(x) = e^{-2 pi i {x}}.
inline CyclotomicValue gauss_sum(const DirichletCharacter& chi) {
    std::uint64_t n = chi.modulus();
    auto ps = prime_factors(n);
    if (n == 1 || ps.size() != 1) throw NotPrimitive("modulus must be a positive prime power");
    if (!chi.is_primitive()) throw NotPrimitive("character of conductor " + std::to_string(chi.conductor()) + " mod " + std::to_string(n));
    // collect exponent counts of zeta_{lcm(L, n)} before building the sum
    int L = static_cast<int>(detail::lcm_ll(chi.level(), static_cast<long long>(n)));
    std::vector<Rational> counts(static_cast<size_t>(L), Rational(0));
    long long sL = L / chi.level(), sn = L / static_cast<long long>(n);
    for (std::uint64_t a = 1; a < n; ++a) {
        auto e = chi.exponent(static_cast<long long>(a));
        if (!e) continue;
        long long k = mod_floor(*e * sL - static_cast<long long>(a) * sn, L);
        counts[static_cast<size_t>(k)] += 1;
    }
    return CyclotomicValue(Cyc::from_exponent_counts(L, counts));
}

// Tate gamma factor gamma(s, theta, psi_p) = eps(s) L(1-s, theta^{-1}) / L(s, theta)
// as a function of X = p^{-s}.  For conductor p^a, a >= 1,
// eps(s) = theta(p)^a g(theta_0^{-1}) p^{-as}.
inline RationalInQ gamma_gl1_rational(const LocalCharacter& th) {
    std::uint64_t q = th.prime();
    int a = th.conductor_exponent();
    if (a == 0) {
        const CyclotomicValue& t = th.t();
        CyclotomicValue c = t.inv() * CyclotomicValue(make_q(1, static_cast<long>(q)));
        return RationalInQ(detail::one_minus(t, 1), detail::one_minus(c, -1), q);
    }
    DirichletCharacter prim = th.ramified_part().primitive();
    CyclotomicValue eps = th.t().pow(a) * gauss_sum(prim.inverse());
    return RationalInQ(LaurentPoly::monomial(eps, a), LaurentPoly(CyclotomicValue(1)), q);
}

inline CyclotomicValue gamma_gl1(const LocalCharacter& th, HalfInt s) { return gamma_gl1_rational(th).at(s); }

// gamma(s, pi^vee x twist) for pi the principal series with characters (eta1, eta2).
inline CyclotomicValue gamma_gl2_principal(const LocalCharacter& eta1, const LocalCharacter& eta2, const LocalCharacter& twist, HalfInt s) {
    return gamma_gl1(twist * eta1.inverse(), s) * gamma_gl1(twist * eta2.inverse(), s);
}
inline RationalInQ gamma_gl2_principal_rational(const LocalCharacter& eta1, const LocalCharacter& eta2, const LocalCharacter& twist) {
    return gamma_gl1_rational(twist * eta1.inverse()) * gamma_gl1_rational(twist * eta2.inverse());
}

// The five characters entering E_p, without the ordinarity constraints.
struct EulerEtas {
    LocalCharacter etaPi[3];
    LocalCharacter etapi[2];

    static EulerEtas trivial(std::uint64_t p) {
        EulerEtas e;
        for (auto& x : e.etaPi) x = LocalCharacter::trivial(p);
        for (auto& x : e.etapi) x = LocalCharacter::trivial(p);
        return e;
    }
    static EulerEtas from(const OrdinaryParams& o) {
        EulerEtas e;
        for (int i = 0; i < 3; ++i) e.etaPi[i] = o.etaPi[i];
        for (int i = 0; i < 2; ++i) e.etapi[i] = o.etapi[i];
        return e;
    }

    // The four GL(1) characters whose gamma factors are inverted in E_p.
    std::array<LocalCharacter, 4> gamma_characters(const LocalCharacter& chi) const {
        return {chi * etapi[0].inverse() * etaPi[0].inverse(), chi * etapi[0].inverse() * etaPi[1].inverse(),
                chi * etaPi[2].inverse() * etapi[0].inverse(), chi * etaPi[2].inverse() * etapi[1].inverse()};
    }
};

inline RationalInQ euler_Ep_rational(const EulerEtas& e, const LocalCharacter& chi) {
    RationalInQ g = gamma_gl1_rational(chi * e.etapi[0].inverse() * e.etaPi[0].inverse()) *
                    gamma_gl1_rational(chi * e.etapi[0].inverse() * e.etaPi[1].inverse()) *
                    gamma_gl2_principal_rational(e.etapi[0], e.etapi[1], chi * e.etaPi[2].inverse());
    return g.inv();
}
inline RationalInQ euler_Ep_rational(const OrdinaryParams& o, const LocalCharacter& chi) { return euler_Ep_rational(EulerEtas::from(o), chi); }

// Each gamma factor is specialized separately so that a vanishing factor is
// reported instead of cancelling against another one.
inline CyclotomicValue euler_Ep(const EulerEtas& e, const LocalCharacter& chi, HalfInt s) {
    auto inv_gamma = [&](const CyclotomicValue& g) {
        if (g.is_zero()) throw PoleAtSpecialization("gamma factor vanishes at s = " + s.str());
        return g.inv();
    };
    CyclotomicValue r = inv_gamma(gamma_gl1(chi * e.etapi[0].inverse() * e.etaPi[0].inverse(), s)) *
                        inv_gamma(gamma_gl1(chi * e.etapi[0].inverse() * e.etaPi[1].inverse(), s));
    LocalCharacter tw = chi * e.etaPi[2].inverse();
    return r * inv_gamma(gamma_gl1(tw * e.etapi[0].inverse(), s)) * inv_gamma(gamma_gl1(tw * e.etapi[1].inverse(), s));
}
inline CyclotomicValue euler_Ep(const OrdinaryParams& o, const LocalCharacter& chi, HalfInt s) { return euler_Ep(EulerEtas::from(o), chi, s); }

// Arguments of the four Gamma_C factors of E_inf.
inline std::array<HalfInt, 4> euler_Einf_arguments(int l1, int l2, int l, HalfInt s) {
    return {HalfInt{s.twice + l1 + l2 + l - 4}, HalfInt{s.twice + l1 + l2 - l - 2}, HalfInt{s.twice - l1 + l2 + l - 2},
            HalfInt{s.twice + l1 - l2 + l}};
}

// E_inf(s) = e^{-(4s+l1+l2+l) pi i/2} Gamma_C(...)^4 products.
inline ArchValue euler_Einf(int l1, int l2, int l, HalfInt s) {
    ArchValue r = ArchValue::i_power(-(2 * s.twice + l1 + l2 + l));
    for (auto a : euler_Einf_arguments(l1, l2, l, s)) r = r * gamma_C(a);
    return r;
}

// Unramified Satake parameters: GSp(4) a_1..a_4 with a_1 a_3 = a_2 a_4, GL(2) b_1, b_2.
struct SatakeData {
    std::uint64_t q = 2;
    CyclotomicValue a[4] = {CyclotomicValue(1), CyclotomicValue(1), CyclotomicValue(1), CyclotomicValue(1)};
    CyclotomicValue b[2] = {CyclotomicValue(1), CyclotomicValue(1)};

    void validate() const {
        if (a[0] * a[2] != a[1] * a[3]) throw InvalidParameter("Satake parameters violate a1 a3 = a2 a4");
        for (auto& x : a)
            if (x.is_zero()) throw InvalidParameter("zero Satake parameter");
        for (auto& x : b)
            if (x.is_zero()) throw InvalidParameter("zero Satake parameter");
    }
};

// prod_{i,j} (1 - a_i b_j chi(q) X)^{-1}; chi(q) = 0 means chi ramified at q.
inline RationalInQ degree8_L_unramified(const SatakeData& d, const CyclotomicValue& chi_q) {
    d.validate();
    if (chi_q.is_zero()) return RationalInQ::one(d.q);
    LaurentPoly den(CyclotomicValue(1));
    for (auto& ai : d.a)
        for (auto& bj : d.b) den = den * detail::one_minus(ai * bj * chi_q, 1);
    return RationalInQ(LaurentPoly(CyclotomicValue(1)), den, d.q);
}

// C_t(s) = 2^{-2s-t-1} pi / (2s+1+t)
inline ArchValue arch_Ct(HalfInt s, int t) {
    int den = s.twice + 1 + t;
    if (den == 0) throw DegenerateDenominator("2s+1+t = 0");
    return ArchValue::rational_half_power(Rational(2), 2 * (-s.twice - t - 1)) * ArchValue::pi_half_power(2) * ArchValue(Rational(1, den));
}

// Closed form of the archimedean zeta integral in scalar weight t, without
// the formal Bessel and Whittaker symbols.  alpha_diff_sq = |alpha - conj alpha|^2.
inline ArchValue arch_zeta_closed(HalfInt s, int t, const Rational& c, const Rational& alpha_diff_sq) {
    if (c <= 0 || alpha_diff_sq <= 0) throw InvalidParameter("c and |alpha - conj alpha| must be positive");
    int e = -s.twice - 3 * t + 3;  // 2 (-s - 3t/2 + 3/2)
    ArchValue r = ArchValue::rational_half_power(Rational(2), -s.twice - 3 * t - 3) * ArchValue::i_power(-t) * ArchValue::pi_half_power(4) *
                  ArchValue::pi_half_power(e) * ArchValue::rational_half_power(c, e) *
                  ArchValue::rational_half_power(alpha_diff_sq, -s.twice - t);
    r = r * gamma_half_integer(HalfInt{s.twice + 3 * t - 3}) * gamma_half_integer(HalfInt{s.twice + t - 1});
    return r / gamma_half_integer(HalfInt{s.twice + t + 3});
}

// The right-hand side of the C_t factorization:
// C_t i^{-t} 2^{2s+t} pi (2 pi c)^{-s-3t/2+3/2} |alpha - conj alpha|^{-2s-t} Gamma(s+(3t-3)/2) / (2s+t-1).
inline ArchValue arch_zeta_via_Ct(HalfInt s, int t, const Rational& c, const Rational& alpha_diff_sq) {
    int den = s.twice + t - 1;
    if (den == 0) throw DegenerateDenominator("2s+t-1 = 0");
    int e = -s.twice - 3 * t + 3;
    return arch_Ct(s, t) * ArchValue::i_power(-t) * ArchValue::rational_half_power(Rational(2), 2 * (s.twice + t)) * ArchValue::pi_half_power(2) *
           ArchValue::rational_half_power(2 * c, e) * ArchValue::pi_half_power(e) * ArchValue::rational_half_power(alpha_diff_sq, -s.twice - t) *
           gamma_half_integer(HalfInt{s.twice + 3 * t - 3}) * ArchValue(Rational(1, den));
}

// Two readings of the E_inf argument in the scalar-weight archimedean factor.
enum class EinfShift {
    Proof,    // k + eps/2 + 1
    Theorem,  // k + eps/2
};

inline HalfInt einf_argument(int k, int eps, EinfShift sh) { return HalfInt{2 * k + eps + (sh == EinfShift::Proof ? 2 : 0)}; }

// |c^2 (alpha - conj alpha)| 2^{-6} i^eps E_inf(shifted k) for l1 = l2 = l.
inline ArchValue I_infty_scalar(int k, int eps, const Rational& c, const Rational& alpha_diff_sq, int l1, int l2, int l,
                                EinfShift sh = EinfShift::Proof) {
    if (l1 != l2 || l2 != l) throw UnsupportedWeight("scalar-weight formula needs l1 = l2 = l");
    if (alpha_diff_sq <= 0) throw InvalidParameter("|alpha - conj alpha| must be positive");
    auto r = critical_range(l1, l2, l, eps);
    if (k < r.kmin || k > r.kmax) throw InvalidParameter("k outside the critical range");
    return ArchValue(c * c) * ArchValue::rational_half_power(alpha_diff_sq, 1) * ArchValue(Rational(1, 64)) * ArchValue::i_power(eps) *
           euler_Einf(l1, l2, l, einf_argument(k, eps, sh));
}
inline ArchValue I_infty_scalar(int k, const Rational& c, const Rational& alpha_diff_sq, const OrdinaryParams& o, EinfShift sh = EinfShift::Proof) {
    return I_infty_scalar(k, o.eps, c, alpha_diff_sq, o.l1, o.l2, o.l, sh);
}

}  // namespace padicl
