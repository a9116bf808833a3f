#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "characters.hpp"
#include "gamma_euler.hpp"
#include "schwartz.hpp"

namespace padicl {

// Real symmetric [[a, b], [b, c]].
struct Sym2Index {
    Rational a = 0, b = 0, c = 0;

    Rational det() const { return a * c - b * b; }
    Rational trace() const { return a + c; }
    bool is_psd() const { return a >= 0 && c >= 0 && det() >= 0; }
    bool is_positive() const { return a > 0 && det() > 0; }

    // [[p^n, 0], [x, 1]] (p^n * self) [[p^n, x], [0, 1]] with the overall scale s
    Sym2Index conjugated(const Rational& t, const Rational& x, const Rational& s) const {
        return {s * t * t * a, s * t * (a * x + b), s * (a * x * x + 2 * b * x + c)};
    }

    friend bool operator==(const Sym2Index& x, const Sym2Index& y) { return x.a == y.a && x.b == y.b && x.c == y.c; }
    friend bool operator<(const Sym2Index& x, const Sym2Index& y) {
        return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
    }
    std::string str() const { return "[[" + x_str(a) + "," + x_str(b) + "],[" + x_str(b) + "," + x_str(c) + "]]"; }

private:
    static std::string x_str(const Rational& r) { return r.get_str(); }
};

namespace detail {

inline std::array<Rational, 2> quad_key(const QuadElem& z) { return {z.a(), z.b()}; }

inline Rational abs2(const QuadElem& z) { return z.norm(); }

// x + y sqrt(d) with d < 0 written as x + y i sqrt(|d|).
inline CyclotomicValue quad_to_cyc(const QuadElem& z) {
    if (z.d() >= 0) throw InvalidParameter("K must be imaginary quadratic");
    CyclotomicValue v(z.sqrt_x());
    if (z.sqrt_y() != 0)
        v = v + CyclotomicValue(Cyc::root_of_unity(4, 1)) * CyclotomicValue::sqrt_rational(Rational(-z.d())) * CyclotomicValue(z.sqrt_y());
    return v;
}

}  // namespace detail

// beta in Her_3(K); diagonal in m.d, upper entries u12, u13, u23.
struct HermitianIndex {
    HermitianMatrix m;

    static HermitianIndex make(long d, const Rational& b11, const Rational& b22, const Rational& b33, QuadElem b12, QuadElem b13,
                               QuadElem b23) {
        HermitianIndex h;
        h.m.d[0] = b11;
        h.m.d[1] = b22;
        h.m.d[2] = b33;
        h.m.u12 = std::move(b12);
        h.m.u13 = std::move(b13);
        h.m.u23 = std::move(b23);
        if (h.m.u12.d() != d || h.m.u13.d() != d || h.m.u23.d() != d) throw SpaceMismatch("entries in different fields");
        return h;
    }
    static HermitianIndex identity(long d) { return {HermitianMatrix::identity(d)}; }

    long d() const { return m.u12.d(); }
    const QuadElem& b12() const { return m.u12; }
    const QuadElem& b13() const { return m.u13; }
    const QuadElem& b23() const { return m.u23; }

    // Real part of the upper 2x2 block, and beta_33.
    Sym2Index beta1() const { return {m.d[0], m.u12.sqrt_x(), m.d[1]}; }
    const Rational& beta2() const { return m.d[2]; }

    QuadElem entry(int i, int j) const {
        if (i == j) return QuadElem(d(), m.d[i]);
        if (i > j) return entry(j, i).conj();
        if (i == 0) return j == 1 ? m.u12 : m.u13;
        return m.u23;
    }

    // Leading principal minors; positivity is decided by their signs.
    std::array<Rational, 3> leading_minors() const {
        Rational m1 = m.d[0];
        Rational m2 = m.d[0] * m.d[1] - detail::abs2(m.u12);
        return {m1, m2, det()};
    }
    Rational det() const {
        const Rational &a = m.d[0], &b = m.d[1], &c = m.d[2];
        QuadElem t = m.u12 * m.u23 * m.u13.conj();
        return a * b * c + t.trace() - a * detail::abs2(m.u23) - b * detail::abs2(m.u13) - c * detail::abs2(m.u12);
    }
    bool is_positive_definite() const {
        auto mn = leading_minors();
        return mn[0] > 0 && mn[1] > 0 && mn[2] > 0;
    }

    friend bool operator==(const HermitianIndex& x, const HermitianIndex& y) {
        return x.m.d[0] == y.m.d[0] && x.m.d[1] == y.m.d[1] && x.m.d[2] == y.m.d[2] && x.m.u12 == y.m.u12 && x.m.u13 == y.m.u13 &&
               x.m.u23 == y.m.u23;
    }
    friend bool operator<(const HermitianIndex& x, const HermitianIndex& y) {
        auto key = [](const HermitianIndex& h) {
            return std::make_tuple(h.m.d[0], h.m.d[1], h.m.d[2], detail::quad_key(h.m.u12), detail::quad_key(h.m.u13), detail::quad_key(h.m.u23));
        };
        return key(x) < key(y);
    }

    std::string str() const {
        return "[" + m.d[0].get_str() + ", " + m.u12.str() + ", " + m.u13.str() + "; " + m.d[1].get_str() + ", " + m.u23.str() + "; " +
               m.d[2].get_str() + "]";
    }
};

// The fractional ideal gen * O_K holding the free off-diagonal coordinates.
struct BetaLattice {
    QuadElem gen;

    static BetaLattice integral(long d) { return {QuadElem(d, 1)}; }
    // Inverse different: (sqrt D_K)^{-1} O_K.
    static BetaLattice inverse_different(long d) {
        QuadElem s = QuadElem::from_sqrt_coords(d, 0, mod_floor(d, 4) == 1 ? 1 : 2);
        return {s.inv()};
    }
    bool contains(const QuadElem& z) const { return (z / gen).is_integral(); }
};

namespace detail {

inline long isqrt_floor(const Rational& x) {
    if (x <= 0) return 0;
    long r = static_cast<long>(std::floor(std::sqrt(x.get_d())));
    while (Rational(r + 1) * (r + 1) <= x) ++r;
    while (r > 0 && Rational(r) * r > x) --r;
    return r;
}

// All z in gen O_K with N(z) < bound (strict), in a fixed order.
inline std::vector<QuadElem> lattice_points_below(const BetaLattice& L, const Rational& bound) {
    std::vector<QuadElem> out;
    if (bound <= 0) return out;
    long d = L.gen.d();
    Rational B = bound / L.gen.norm();
    long bmax = 2 * isqrt_floor(B / Rational(-d)) + 2;
    long amax = isqrt_floor(B) + bmax + 1;
    for (long b = -bmax; b <= bmax; ++b)
        for (long a = -amax; a <= amax; ++a) {
            QuadElem w(d, a, b);
            if (w.norm() >= B) continue;
            out.push_back(L.gen * w);
        }
    return out;
}

}  // namespace detail

// Positive-definite beta with upper block real part beta1, beta_33 = beta2 and
// free coordinates (Im beta12, beta13, beta23) in the lattice.
inline std::vector<HermitianIndex> enumerate_beta(const Sym2Index& beta1, const Rational& beta2, const BetaLattice& L,
                                                  std::size_t max_candidates = 50000000) {
    std::vector<HermitianIndex> out;
    if (!(beta1.is_positive() && beta2 > 0)) return out;
    long d = L.gen.d();
    std::vector<QuadElem> c12;
    for (auto& z : detail::lattice_points_below(L, beta1.a * beta1.c))
        if (z.sqrt_x() == beta1.b) c12.push_back(z);
    auto c13 = detail::lattice_points_below(L, beta1.a * beta2);
    auto c23 = detail::lattice_points_below(L, beta1.c * beta2);
    if (static_cast<double>(c12.size()) * c13.size() * c23.size() > static_cast<double>(max_candidates))
        throw IndexOverflow("enumeration box exceeds " + std::to_string(max_candidates) + " candidates");
    for (auto& z12 : c12)
        for (auto& z13 : c13)
            for (auto& z23 : c23) {
                auto h = HermitianIndex::make(d, beta1.a, beta1.c, beta2, z12, z13, z23);
                if (h.is_positive_definite()) out.push_back(std::move(h));
            }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- setup

struct Component {
    Rational nu = 1;
    // A = [[a11, a12], [a21, a22]] over K; empty means the identity.
    std::optional<std::array<QuadElem, 4>> A;

    bool is_identity() const {
        if (nu != 1) return false;
        if (!A) return true;
        auto& a = *A;
        return a[0] == QuadElem(a[0].d(), 1) && a[1].is_zero() && a[2].is_zero() && a[3] == QuadElem(a[3].d(), 1);
    }
};

struct SetupData {
    long a = 1, b = 0, c = 1;
    std::uint64_t p = 3;
    long N = 1;
    long d = -1;
    QuadElem alpha;
    HeckeCharacterData Lambda, Upsilon, Xi;
    OrdinaryParams params;

    static SetupData make(long a, long b, long c, std::uint64_t p, long N, HeckeCharacterData Lambda, HeckeCharacterData Upsilon,
                          HeckeCharacterData Xi, OrdinaryParams params) {
        long D = b * b - 4 * a * c;
        if (a <= 0 || D >= 0) throw InvalidParameter("S must be positive definite");
        if (!is_prime(p)) throw InvalidParameter("p must be prime");
        if (N < 1 || N % static_cast<long>(p) == 0) throw InvalidParameter("N must be positive and prime to p");
        std::uint64_t s, f;
        squarefree_split(static_cast<std::uint64_t>(-D), s, f);
        SetupData r;
        r.a = a;
        r.b = b;
        r.c = c;
        r.p = p;
        r.N = N;
        r.d = -static_cast<long>(s);
        r.alpha = QuadElem::from_sqrt_coords(r.d, make_q(b, 2 * c), make_q(static_cast<long>(f), 2 * c));
        r.Lambda = std::move(Lambda);
        r.Upsilon = std::move(Upsilon);
        r.Xi = std::move(Xi);
        r.params = std::move(params);
        r.validate();
        return r;
    }

    std::uint64_t Np() const { return static_cast<std::uint64_t>(N) * p; }
    bool divides_Np(std::uint64_t v) const { return Np() % v == 0; }
    int eps() const { return params.eps; }
    long disc() const { return mod_floor(d, 4) == 1 ? d : 4 * d; }
    Rational det_S() const { return Rational(a * c) - make_q(b * b, 4); }
    QuadraticLocalAlgebra algebra_at_p() const { return QuadraticLocalAlgebra(p, d); }

    const QuadCharacter& Lambda_p() const {
        auto it = Lambda.local.find(p);
        if (it == Lambda.local.end()) throw InvalidParameter("Lambda has no component at p");
        return it->second;
    }

    void validate() const {
        for (auto* h : {&Lambda, &Upsilon, &Xi})
            if (h->d != d) throw InvalidParameter("Hecke character over the wrong field");
        for (auto v : prime_factors(static_cast<std::uint64_t>(std::labs(c))))
            if (!divides_Np(v)) throw InvalidParameter("c is not a unit at " + std::to_string(v));
        Rational fourdet = 4 * det_S();
        std::vector<std::uint64_t> ps = prime_factors(fourdet.get_num().get_ui());
        for (auto v : prime_factors(static_cast<std::uint64_t>(-disc()))) ps.push_back(v);
        for (auto v : ps)
            if (!divides_Np(v) && val_p(fourdet, v) != val_p(Rational(disc()), v))
                throw InvalidParameter("4 det S and disc(K) differ at " + std::to_string(v));
        if (Xi.r != Lambda.r + Upsilon.r) throw InvalidParameter("Xi infinity type is not that of conj-inverse Lambda Upsilon");
        for (auto& [v, xv] : Xi.local) {
            auto il = Lambda.local.find(v);
            auto iu = Upsilon.local.find(v);
            if (il == Lambda.local.end() || iu == Upsilon.local.end()) continue;
            for (long x = -3; x <= 3; ++x)
                for (long y = -3; y <= 3; ++y) {
                    QuadElem z(d, x, y);
                    if (z.is_zero()) continue;
                    if (xv(z) * il->second(z.conj()) * iu->second(z.conj()) != CyclotomicValue(1))
                        throw InvalidParameter("Xi is not conj-inverse of Lambda Upsilon at " + std::to_string(v));
                }
        }
        if (params.prime() != p) throw LevelMismatch("ordinary data at the wrong prime");
        if (Lambda.local.count(p) && Lambda_p().algebra().prime() != p) throw LevelMismatch("Lambda_p at the wrong prime");
    }
};

// Hecke character with the given infinity type and trivial components at the listed primes.
inline HeckeCharacterData trivial_hecke(long d, int r, const std::vector<std::uint64_t>& places) {
    HeckeCharacterData h;
    h.d = d;
    h.r = r;
    for (auto v : places) h.local.emplace(v, QuadCharacter::trivial(QuadraticLocalAlgebra(v, d)));
    return h;
}

// ---------------------------------------------------------------- unramified places

enum class LocalSupport { OutsideDual, Unimodular, Other };

// Position of beta at a finite place v relative to the dual lattice Her_3(O_v)^*
// of the pairing tr(beta x), and to GL(3, O_v).
inline LocalSupport classify_local(const HermitianIndex& beta, std::uint64_t v) {
    long d = beta.d();
    for (auto& x : beta.m.d)
        if (!is_p_integral(x, v)) return LocalSupport::OutsideDual;
    QuadElem w(d, 0, 1);
    for (auto* z : {&beta.m.u12, &beta.m.u13, &beta.m.u23})
        if (!is_p_integral(z->trace(), v) || !is_p_integral((*z * w).trace(), v)) return LocalSupport::OutsideDual;
    for (auto* z : {&beta.m.u12, &beta.m.u13, &beta.m.u23})
        if (!is_p_integral(z->a(), v) || !is_p_integral(z->b(), v)) return LocalSupport::Other;
    Rational dt = beta.det();
    if (dt == 0 || val_p(dt, v) != 0) return LocalSupport::Other;
    return LocalSupport::Unimodular;
}

// eta_{K/Q} at v. Only its ramification matters at ramified v, where the unit
// part is the Legendre symbol (odd v) or the character mod 4 (v = 2).
inline LocalCharacter quadratic_character_at(long d, std::uint64_t v) {
    QuadraticLocalAlgebra A(v, d);
    switch (A.kind()) {
        case LocalKind::Split: return LocalCharacter::trivial(v);
        case LocalKind::Inert: return LocalCharacter::unramified(v, CyclotomicValue(-1));
        default: break;
    }
    if (v == 2) return LocalCharacter(2, DirichletCharacter::from_standard_exponents(4, {1}), CyclotomicValue(1));
    return LocalCharacter(v, DirichletCharacter::quadratic_legendre(v), CyclotomicValue(1));
}

// Unramified local Whittaker value (h = 1 branch), for the identity component:
// 1_{dual lattice}(beta) d_3(s, Xi (chi o Nm)) h(beta), as a function of X = v^{-s}.
inline RationalInQ whittaker_unramified(const HermitianIndex& beta, std::uint64_t v, const LocalCharacter& xiQ, const LocalCharacter& chi,
                                        const LocalCharacter& eta) {
    if (xiQ.prime() != v || chi.prime() != v || eta.prime() != v) throw LevelMismatch("characters at the wrong place");
    if (!xiQ.is_unramified() || !chi.is_unramified()) throw InvalidParameter("chi_v and Xi_v must be unramified");
    switch (classify_local(beta, v)) {
        case LocalSupport::OutsideDual: return RationalInQ(CyclotomicValue(0));
        case LocalSupport::Other:
            throw UnimplementedHPolynomial("beta is not in GL(3, O) at " + std::to_string(v) + ": " + beta.str());
        default: return d_factor(3, xiQ, chi, eta);
    }
}

// ---------------------------------------------------------------- coefficients

enum class HPolicy {
    Strict,   // non-unimodular beta at an unramified place raises UnimplementedHPolynomial
    ProxyOne  // ... is given h = 1 (a proxy family, not the Eisenstein coefficient)
};

struct CoeffOptions {
    Component component;
    HPolicy h = HPolicy::Strict;
};

// The three rational invariants of the p-factor:
//   X = (conj b13 b23 - b13 conj b23)/(alpha - conj alpha),
//   Y = (alpha - conj alpha)(b12 - conj b12)/2,  Z = (b12 - conj b12)/2 det[[conj b13, conj b23], [b13, b23]].
struct PInvariants {
    Rational X, Y, Z;
};

inline PInvariants p_invariants(const HermitianIndex& beta, const QuadElem& alpha) {
    QuadElem da = alpha - alpha.conj();
    long d = beta.d();
    QuadElem im12 = (beta.b12() - beta.b12().conj()) / QuadElem(d, 2);
    QuadElem pf = beta.b13().conj() * beta.b23() - beta.b23().conj() * beta.b13();
    QuadElem X = pf / da, Y = da * im12, Z = im12 * pf;
    if (!X.is_rational() || !Y.is_rational() || !Z.is_rational()) throw InvalidParameter("p-factor invariants are not rational");
    return {X.a(), Y.a(), Z.a()};
}

// (z / conj z)^{r/2} = z^r N(z)^{-r/2}
inline CyclotomicValue lambda_infty(int r, const QuadElem& z) {
    if (z.is_zero()) throw InvalidParameter("Lambda_infty at 0");
    CyclotomicValue n = CyclotomicValue::sqrt_rational(z.norm());
    return detail::quad_to_cyc(z).pow(r) * n.pow(-r);
}

namespace detail {

inline void check_coeff_pre(const DirichletCharacter& chi, int k, const SetupData& S, const CoeffOptions& o) {
    if (!in_critical_range(k, S.params)) throw InvalidParameter("k = " + std::to_string(k) + " outside the critical range");
    std::uint64_t n = chi.modulus(), q = n;
    while (q % S.p == 0) q /= S.p;
    if (static_cast<std::uint64_t>(S.N) % q != 0) throw LevelMismatch("chi level does not divide N p^infty");
    if (!o.component.is_identity()) throw InvalidParameter("only the identity component (class number one data) is supported");
}

// The primes where beta might fail to be unimodular.
inline std::vector<std::uint64_t> bad_places(const HermitianIndex& beta, const SetupData& S) {
    std::vector<std::uint64_t> out;
    auto add_int = [&](const Integer& n) {
        Integer a = abs(n);
        if (a <= 1) return;
        if (!a.fits_ulong_p()) throw IndexOverflow("entry too large to factor");
        for (auto v : prime_factors(a.get_ui())) out.push_back(v);
    };
    for (auto& x : beta.m.d) add_int(x.get_den());
    for (auto* z : {&beta.m.u12, &beta.m.u13, &beta.m.u23}) {
        add_int(z->a().get_den());
        add_int(z->b().get_den());
    }
    Rational dt = beta.det();
    add_int(dt.get_num());
    add_int(dt.get_den());
    add_int(Integer(S.disc()));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

// The p-factor of the Y = 0 coefficient; the k-branch term is applied by the callers.
// Includes the support of the Fourier transform of the p-section (integral
// diagonal and beta23 in (alpha - conj alpha) O_p).
inline CyclotomicValue p_factor_characters(const HermitianIndex& beta, const DirichletCharacter& chi, const SetupData& S) {
    std::uint64_t p = S.p;
    QuadraticLocalAlgebra A = S.algebra_at_p();
    QuadElem da = S.alpha - S.alpha.conj();
    for (auto& x : beta.m.d)
        if (!is_p_integral(x, p)) return CyclotomicValue(0);
    if (!is_p_integral(beta.b12().sqrt_x(), p)) return CyclotomicValue(0);
    if (!detail::in_lattice(A, beta.b23(), da)) return CyclotomicValue(0);
    if (!A.is_unit(beta.b13())) return CyclotomicValue(0);
    const OrdinaryParams& o = S.params;
    LocalCharacter chip = LocalCharacter::from_dirichlet(chi, p);
    auto inv = [](const LocalCharacter& x) { return x.inverse(); };
    CyclotomicValue v = S.Lambda_p()(beta.b13()) * inv(o.etaPi[1]).circ(beta.b13().norm());
    PInvariants I = p_invariants(beta, S.alpha);
    v = v * inv(o.etaPi[0] * o.etapi[0]).circ(I.X);
    if (v.is_zero()) return v;
    v = v * inv(o.etaPi[2] * o.etapi[1]).circ(I.Y);
    if (v.is_zero()) return v;
    return v * chip.circ(I.Z);
}

// Everything except the k-branch term: support, the v | N factors, the p-factor
// characters, Lambda_infty(beta13), and the rational powers of N(beta13), X, Y.
inline CyclotomicValue coeff_common(const HermitianIndex& beta, const DirichletCharacter& chi, int k, const SetupData& S,
                                    const CoeffOptions& o) {
    detail::check_coeff_pre(chi, k, S, o);
    if (beta.d() != S.d) throw SpaceMismatch("beta over the wrong field");
    if (!beta.is_positive_definite()) return CyclotomicValue(0);
    // Vanishing at any place wins over a missing h-polynomial elsewhere.
    std::optional<std::uint64_t> needs_h;
    for (auto v : detail::bad_places(beta, S)) {
        if (S.divides_Np(v)) continue;
        LocalSupport ls = classify_local(beta, v);
        if (ls == LocalSupport::OutsideDual) return CyclotomicValue(0);
        if (ls == LocalSupport::Other && !needs_h) needs_h = v;
    }
    CyclotomicValue v = p_factor_characters(beta, chi, S);
    if (v.is_zero()) return v;
    for (auto q : prime_factors(static_cast<std::uint64_t>(S.N))) {
        int m = val_p(Integer(S.N), q);
        v = v * build_vol_sec(q, S.alpha, m, Rational(S.c)).fourier_at(beta.m);
        if (v.is_zero()) return v;
    }
    if (needs_h && o.h == HPolicy::Strict)
        throw UnimplementedHPolynomial("h-polynomial needed at " + std::to_string(*needs_h) + " for " + beta.str());
    const OrdinaryParams& P = S.params;
    PInvariants I = p_invariants(beta, S.alpha);
    v = v * lambda_infty(S.Lambda.r, beta.b13());
    v = v * CyclotomicValue::sqrt_rational(beta.b13().norm()).pow(P.l1 - P.l2);
    v = v * CyclotomicValue(qpow(I.X, (-P.l1 + P.l2 + P.l + P.eps) / 2));
    v = v * CyclotomicValue(qpow(I.Y, (P.l1 + P.l2 - P.l + P.eps) / 2));
    return v;
}

// Y = 0 coefficient A(beta; chi, k) for the identity component.
inline CyclotomicValue coeff_A(const HermitianIndex& beta, const DirichletCharacter& chi, int k, const SetupData& S,
                               const CoeffOptions& o = {}) {
    CyclotomicValue v = coeff_common(beta, chi, k, S, o);
    if (v.is_zero()) return v;
    Rational Z = p_invariants(beta, S.alpha).Z;
    int eps = S.eps();
    if (2 * k + eps >= 1) return v * CyclotomicValue(qpow(Z, -k - eps - 1) * qpow(beta.det(), 2 * k + eps - 1));
    return v * CyclotomicValue(qpow(Z, k - 2));
}

// Z / det(beta), the ratio used by the modified coefficient.
inline Rational a_prime_ratio(const HermitianIndex& beta, const QuadElem& alpha) {
    Rational dt = beta.det();
    if (dt == 0) throw BranchUndefined("det beta = 0");
    return p_invariants(beta, alpha).Z / dt;
}

// Exponent of the ratio in the modification for k >= 1. It is the one that
// turns the k-branch term into Z^{k-2} for every k.
inline int a_prime_exponent(int k, int eps) { return 2 * k + eps - 1; }

// Modified coefficient A' = A (Z/det beta)^{2k+eps-1} for k >= 1, A for k <= 0.
inline CyclotomicValue coeff_A_prime(const HermitianIndex& beta, const DirichletCharacter& chi, int k, const SetupData& S,
                                     const CoeffOptions& o = {}) {
    if (k <= 0) return coeff_A(beta, chi, k, S, o);
    if (beta.is_positive_definite() && p_invariants(beta, S.alpha).Z == 0)
        throw BranchUndefined("Z = 0 in the k >= 1 modification for " + beta.str());
    CyclotomicValue v = coeff_A(beta, chi, k, S, o);
    if (v.is_zero()) return v;
    return v * CyclotomicValue(qpow(a_prime_ratio(beta, S.alpha), a_prime_exponent(k, S.eps())));
}

enum class CoeffFamily { A, APrime };

struct SumResult {
    CyclotomicValue value = CyclotomicValue(0);
    std::size_t terms = 0;      // enumerated beta
    std::size_t nonzero = 0;    // beta with a nonzero coefficient
    std::vector<std::string> diagnostics;  // excluded beta (BranchUndefined)
};

inline SumResult a_sum_detailed(const Sym2Index& beta1, const Rational& beta2, const DirichletCharacter& chi, int k, const SetupData& S,
                                CoeffFamily fam, const BetaLattice& L, const CoeffOptions& o = {}) {
    detail::check_coeff_pre(chi, k, S, o);
    SumResult r;
    auto list = enumerate_beta(beta1, beta2, L);
    r.terms = list.size();
    for (auto& beta : list) {
        CyclotomicValue c;
        try {
            c = fam == CoeffFamily::A ? coeff_A(beta, chi, k, S, o) : coeff_A_prime(beta, chi, k, S, o);
        } catch (const BranchUndefined& e) {
            r.diagnostics.push_back(e.what());
            continue;
        }
        if (c.is_zero()) continue;
        ++r.nonzero;
        r.value = r.value + c;
    }
    return r;
}

inline CyclotomicValue a_sum(const Sym2Index& beta1, const Rational& beta2, const DirichletCharacter& chi, int k, const SetupData& S,
                             CoeffFamily fam, const BetaLattice& L, const CoeffOptions& o = {}) {
    return a_sum_detailed(beta1, beta2, chi, k, S, fam, L, o).value;
}

// Coefficients of one component at a finite set of (beta1, beta2); indices with
// trace above the bound are left out.
struct QExpansionSlice {
    int i = 1, j = 1;
    Rational trace_bound;
    std::map<std::pair<Sym2Index, Rational>, CyclotomicValue> coeffs;

    bool has(const Sym2Index& b1, const Rational& b2) const { return coeffs.count({b1, b2}) > 0; }
};

inline QExpansionSlice build_slice(const std::vector<std::pair<Sym2Index, Rational>>& indices, const Rational& trace_bound,
                                   const DirichletCharacter& chi, int k, const SetupData& S, CoeffFamily fam, const BetaLattice& L,
                                   const CoeffOptions& o = {}) {
    QExpansionSlice s;
    s.trace_bound = trace_bound;
    for (auto& [b1, b2] : indices) {
        if (b1.trace() + b2 > trace_bound) continue;
        s.coeffs[{b1, b2}] = a_sum(b1, b2, chi, k, S, fam, L, o);
    }
    return s;
}

}  // namespace padicl
