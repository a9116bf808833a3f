#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string>

#include "additive.hpp"
#include "characters.hpp"
#include "gamma_euler.hpp"
#include "laurent.hpp"
#include "quadratic.hpp"
#include "schwartz.hpp"

namespace padicl {

// -------- exact integration over locally constant data --------

// Integrands are x -> psi(twist * x) g(x) with g constant on cosets of
// p^constancy (additive) or on u (1 + p^constancy Z_p) (multiplicative).  The
// character factor is integrated over each coset in closed form, so only
// residues modulo p^constancy are enumerated.
struct AdditiveDomain {
    std::uint64_t p = 2;
    std::optional<int> support;  // g vanishes off p^support Z_p
    int constancy = 0;
    Rational twist = 0;
};

struct MultiplicativeDomain {
    std::uint64_t p = 2;
    std::optional<int> first_shell, last_shell;  // shells p^n Z_p^x, inclusive
    int constancy = 1;                            // relative: g(p^n u) depends on u mod p^constancy
    Rational twist = 0;
};

// Units of O_p, written as x + y * gen with gen a generator of O_p over Z_p;
// g is constant modulo p^constancy O_p.  The measure has total mass 1.
struct QuadUnitDomain {
    QuadraticLocalAlgebra A;
    QuadElem gen;
    int constancy = 1;
};

namespace detail {
inline constexpr std::uint64_t kMaxCells = 50000000;

inline std::uint64_t cell_count(std::uint64_t p, int e) {
    if (e < 0) return 1;
    std::uint64_t n = 1;
    for (int i = 0; i < e; ++i) {
        if (n > kMaxCells / p) throw IndexOverflow("too many integration cells");
        n *= p;
    }
    return n;
}

// int_{a + p^c Z_p} psi(b x) dx
inline CyclotomicValue ball_character_integral(std::uint64_t p, const Rational& a, int c, const Rational& b) {
    if (b != 0 && val_p(b, p) + c < 0) return CyclotomicValue(0);
    return psi_p(b * a, p) * CyclotomicValue(ppow_q(p, -c));
}
}  // namespace detail

template <class F>
CyclotomicValue haar_integral(const F& g, const AdditiveDomain& D) {
    if (!D.support) throw UnboundedSupport("additive integrand without a support bound");
    int s = *D.support, c = std::max(D.constancy, s);
    std::uint64_t n = detail::cell_count(D.p, c - s);
    Rational step = detail::ppow_q(D.p, s);
    CyclotomicValue r(0);
    for (std::uint64_t t = 0; t < n; ++t) {
        Rational a = step * Rational(Integer(static_cast<unsigned long>(t)));
        CyclotomicValue v = g(a);
        if (v.is_zero()) continue;
        r = r + v * detail::ball_character_integral(D.p, a, c, D.twist);
    }
    return r;
}

// d^x x with vol(Z_p^x) = 1.
template <class F>
CyclotomicValue haar_integral(const F& g, const MultiplicativeDomain& D) {
    if (!D.first_shell || !D.last_shell) throw UnboundedSupport("multiplicative integrand without a shell range");
    int c = std::max(D.constancy, 1);
    std::uint64_t n = detail::cell_count(D.p, c);
    Rational mass = Rational(static_cast<long>(D.p)) / Rational(static_cast<long>(D.p - 1));
    CyclotomicValue r(0);
    for (int k = *D.first_shell; k <= *D.last_shell; ++k) {
        Rational pk = detail::ppow_q(D.p, k);
        // d^x x = (p/(p-1)) |x|^{-1} dx on the shell
        Rational scale = mass * qpow(Rational(static_cast<long>(D.p)), k);
        CyclotomicValue shell(0);
        for (std::uint64_t u = 1; u < n; ++u) {
            if (u % D.p == 0) continue;
            Rational a = pk * Rational(Integer(static_cast<unsigned long>(u)));
            CyclotomicValue v = g(a);
            if (v.is_zero()) continue;
            shell = shell + v * detail::ball_character_integral(D.p, a, k + c, D.twist);
        }
        r = r + shell * CyclotomicValue(scale);
    }
    return r;
}

template <class F>
CyclotomicValue haar_integral(const F& g, const QuadUnitDomain& D) {
    std::uint64_t p = D.A.prime();
    std::uint64_t n = detail::cell_count(p, std::max(D.constancy, 1));
    if (n > detail::kMaxCells / n) throw IndexOverflow("too many integration cells");
    CyclotomicValue r(0);
    std::uint64_t count = 0;
    for (std::uint64_t x = 0; x < n; ++x)
        for (std::uint64_t y = 0; y < n; ++y) {
            QuadElem z = QuadElem(D.gen.d(), Rational(Integer(static_cast<unsigned long>(x)))) +
                         Rational(Integer(static_cast<unsigned long>(y))) * D.gen;
            if (z.is_zero() || val_p(z.norm(), p) != 0) continue;
            ++count;
            CyclotomicValue v = g(z);
            if (!v.is_zero()) r = r + v;
        }
    return r * CyclotomicValue(Rational(1, static_cast<long>(count)));
}

// -------- GL(2) matrices and the induced section --------

struct Mat2 {
    std::array<Rational, 4> m{Rational(1), Rational(0), Rational(0), Rational(1)};

    static Mat2 diag(const Rational& a, const Rational& d) { return {{a, Rational(0), Rational(0), d}}; }
    static Mat2 upper(const Rational& x) { return {{Rational(1), x, Rational(0), Rational(1)}}; }
    static Mat2 lower(const Rational& x) { return {{Rational(1), Rational(0), x, Rational(1)}}; }
    static Mat2 weyl() { return {{Rational(0), Rational(-1), Rational(1), Rational(0)}}; }

    Rational det() const { return m[0] * m[3] - m[1] * m[2]; }
    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return {{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3], a.m[2] * b.m[0] + a.m[3] * b.m[2],
                 a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
    }
    Mat2 scaled(const Rational& s) const { return {{s * m[0], s * m[1], s * m[2], s * m[3]}}; }
    Mat2 inv() const {
        Rational d = det();
        if (d == 0) throw DivisionByZero("singular matrix");
        return {{m[3] / d, -m[1] / d, -m[2] / d, m[0] / d}};
    }
    friend bool operator==(const Mat2& a, const Mat2& b) { return a.m == b.m; }
};

// phi_0(h) = 1_{Z_p}(d/c) eta1(c) eta2(det h / c) |det h / c^2|^{1/2} for
// bottom row (c, d); a vector of Ind(eta2, eta1).
inline CyclotomicValue section_phi0(std::uint64_t p, const Rational& c, const Rational& d, const Rational& det, const LocalCharacter& eta1,
                                    const LocalCharacter& eta2) {
    if (c == 0) return CyclotomicValue(0);
    if (d != 0 && val_p(d / c, p) < 0) return CyclotomicValue(0);
    return eta1(c) * eta2(det / c) * CyclotomicValue::q_half_power(p, -(val_p(det, p) - 2 * val_p(c, p)));
}
inline CyclotomicValue section_phi0(const Mat2& h, std::uint64_t p, const LocalCharacter& eta1, const LocalCharacter& eta2) {
    return section_phi0(p, h.m[2], h.m[3], h.det(), eta1, eta2);
}

// W(diag(a, 1)) = 1_{Z_p}(a) eta1(a) |a|^{1/2}
inline CyclotomicValue whittaker_section_value(const Rational& a, const LocalCharacter& eta1) {
    if (a == 0) throw InvalidParameter("Whittaker value at a = 0");
    std::uint64_t p = eta1.prime();
    int v = val_p(a, p);
    if (v < 0) return CyclotomicValue(0);
    return eta1(a) * CyclotomicValue::q_half_power(p, -v);
}

namespace detail {
struct WhittakerSplitter {
    std::uint64_t p;
    Mat2 g;
    const LocalCharacter& eta1;
    const LocalCharacter& eta2;
    Rational det;
    int cc;
    static constexpr int kInf = std::numeric_limits<int>::max() / 4;

    int v(const Rational& x) const { return x == 0 ? kInf : val_p(x, p); }

    // Value of an affine function u + w (x - a) on a + p^k Z_p: its minimum
    // valuation and whether the valuation is constant.
    std::pair<int, bool> affine(const Rational& at_a, const Rational& w, int k) const {
        if (w == 0) return {v(at_a), true};
        int a = v(at_a), b = k + v(w);
        if (a < b) return {a, true};
        return {b, false};
    }

    CyclotomicValue ball(const Rational& a, int k, int depth) const {
        if (depth > 400) throw PrecisionExhausted("Whittaker subdivision did not resolve");
        Rational c = g.m[0] + a * g.m[2], d = g.m[1] + a * g.m[3];
        auto [vc, c_const] = affine(c, g.m[2], k);
        auto [vd, d_const] = affine(d, g.m[3], k);
        if (d_const && vd < vc) return CyclotomicValue(0);
        bool c_stable = c != 0 && (g.m[2] == 0 || k + v(g.m[2]) >= v(c) + cc);
        if (c_stable && vd >= v(c)) {
            if (k < 0) return CyclotomicValue(0);
            return eta1(c) * eta2(det / c) * CyclotomicValue::q_half_power(p, -(val_p(det, p) - 2 * val_p(c, p))) * psi_p(-a, p) *
                   CyclotomicValue(ppow_q(p, -k));
        }
        CyclotomicValue r(0);
        Rational step = ppow_q(p, k);
        for (std::uint64_t j = 0; j < p; ++j) r = r + ball(a + step * Rational(Integer(static_cast<unsigned long>(j))), k + 1, depth + 1);
        return r;
    }
};
}  // namespace detail

// W(g) = int_{Q_p} phi_0(w n(x) g) psi(-x) dx with w = [[0, -1], [1, 0]],
// by recursive subdivision into balls on which the integrand is psi(-x)
// times a constant.  Outside p^{-R} Z_p the integral over each shell
// vanishes; extra_radius enlarges R for refinement checks.
inline CyclotomicValue whittaker_general(const Mat2& g, const LocalCharacter& eta1, const LocalCharacter& eta2, int extra_radius = 0) {
    std::uint64_t p = eta1.prime();
    if (eta2.prime() != p) throw LevelMismatch("characters at different primes");
    Rational det = g.det();
    if (det == 0) throw InvalidParameter("singular matrix");
    int cc = std::max({eta1.conductor_exponent(), eta2.conductor_exponent(), 1});
    detail::WhittakerSplitter S{p, g, eta1, eta2, det, cc};
    const Rational &g11 = g.m[0], &g12 = g.m[1], &g21 = g.m[2], &g22 = g.m[3];
    int R = std::max((eta1 * eta2.inverse()).conductor_exponent() + 1, 1);
    if (g21 != 0) R = std::max(R, cc - (g11 == 0 ? 0 : val_p(g11 / g21, p)));
    if (g22 != 0 && g12 != 0) R = std::max(R, 1 - val_p(g12 / g22, p));
    if (g22 != 0 && g11 != 0) R = std::max(R, val_p(g22, p) - val_p(g11, p) + 1);
    R += 2 + extra_radius;
    return S.ball(Rational(0), -R, 0);
}

// -------- Bessel setups --------

// S = [[a, b/2], [b/2, c]] positive definite, alpha_S = (b + sqrt(b^2 - 4ac)) / (2c).
struct BesselSetup {
    std::uint64_t p = 2;
    long a = 1, b = 0, c = 1;
    QuadElem alpha;
    QuadraticLocalAlgebra A{3, -1};
    LocalCharacter eta1, eta2;

    static BesselSetup make(std::uint64_t p, long a, long b, long c, LocalCharacter eta1, LocalCharacter eta2) {
        long D = b * b - 4 * a * c;
        if (a <= 0 || D >= 0) throw InvalidParameter("S must be positive definite");
        if (eta1.prime() != p || eta2.prime() != p) throw LevelMismatch("characters at the wrong prime");
        std::uint64_t s, f;
        squarefree_split(static_cast<std::uint64_t>(-D), s, f);
        long d = -static_cast<long>(s);
        BesselSetup r{p, a, b, c, QuadElem::from_sqrt_coords(d, make_q(b, 2 * c), make_q(static_cast<long>(f), 2 * c)),
                      QuadraticLocalAlgebra(p, d), std::move(eta1), std::move(eta2)};
        return r;
    }

    bool split() const { return A.kind() == LocalKind::Split; }
    Rational trace() const { return alpha.trace(); }
    Rational norm() const { return alpha.norm(); }

    // iota_S(x + y alpha)
    Mat2 iota(const Rational& x, const Rational& y) const { return {{x + y * trace(), y, -y * norm(), x}}; }
};

// Dividing out eta1(p)^{m1} eta2(p)^{m2} |p|^{(m1 - m2)/2} gives the
// (m1, m2)-independent value.
inline CyclotomicValue bessel_scaling(const BesselSetup& S, int m1, int m2) {
    return S.eta1.t().pow(m1) * S.eta2.t().pow(m2) * CyclotomicValue::q_half_power(S.p, -(m1 - m2));
}

namespace detail {
inline void check_m(int m1, int m2) {
    if (m2 < 0 || m1 < m2) throw InvalidParameter("need m1 >= m2 >= 0");
}
}  // namespace detail

// Split case, rho the projection to the place of Lambda_v:
//   int W(diag(t, 1) [[1, 1], [-rho(conj alpha), -rho(alpha)]]^{-1} diag(p^{m1}, p^{m2})) Lambda_v^{-1}(t) d^x t.
// With delta = rho(conj alpha - alpha) and e = m1 - m2 the matrix factors as
//   p^{m2} delta^{-1} n(-1) diag(delta p^e, 1) [[1, 0], [rho(conj alpha) p^e, 1]],
// the last factor fixing phi_0 once e + v(rho(conj alpha)) >= max(1, conductors).
struct SplitBesselData {
    CyclotomicValue central;     // omega(p^{m2} delta^{-1}) eta1(delta p^e) |delta p^e|^{1/2}
    CyclotomicValue t_integral;  // int_{val t >= -e - v(delta)} psi(-t) chi(t) |t|^{1/2} d^x t, chi = eta1 Lambda^{-1}
    int lower_shell;
};

inline SplitBesselData bessel_split_data(int m1, int m2, const BesselSetup& S, const LocalCharacter& Lambda) {
    detail::check_m(m1, m2);
    if (!S.split()) throw InvalidParameter("bessel_split needs p split");
    if (Lambda.prime() != S.p) throw LevelMismatch("Lambda at the wrong prime");
    std::uint64_t p = S.p;
    int e = m1 - m2;
    QuadElem diff = S.alpha.conj() - S.alpha;
    int vdelta = S.A.split_valuations(diff).first;
    int vrbar = S.A.split_valuations(S.alpha.conj()).first;
    int cc = std::max({1, S.eta1.conductor_exponent(), S.eta2.conductor_exponent()});
    if (e + vrbar < cc) throw InsufficientDepth("m1 - m2 too small for the lower unipotent factor to fix the section");
    // eta(rho(z)) through the split quadratic character (eta, 1)
    auto at_rho = [&](const LocalCharacter& eta, const QuadElem& z) { return QuadCharacter::split(S.A, eta, LocalCharacter::trivial(p))(z); };
    LocalCharacter omega = S.eta1 * S.eta2;
    CyclotomicValue pe = CyclotomicValue(S.eta1.t().pow(e));
    CyclotomicValue central = omega.t().pow(m2) * at_rho(omega.inverse(), diff) * at_rho(S.eta1, diff) * pe *
                              CyclotomicValue::q_half_power(p, -(vdelta + e));
    LocalCharacter chi = S.eta1 * Lambda.inverse();
    int lower = -e - vdelta;
    CyclotomicValue total(0);
    if (lower < 0) {
        MultiplicativeDomain D{p, lower, -1, std::max(1, chi.conductor_exponent()), Rational(-1)};
        total = haar_integral([&](const Rational& t) { return chi(t) * CyclotomicValue::q_half_power(p, -val_p(t, p)); }, D);
    }
    // shells n >= max(lower, 0): psi(-t) = 1, each shell is (chi(p) p^{-1/2})^n times the mean of chi on units
    int n0 = std::max(lower, 0);
    MultiplicativeDomain U{p, 0, 0, std::max(1, chi.conductor_exponent()), Rational(0)};
    CyclotomicValue mean = haar_integral([&](const Rational& u) { return chi.ramified_part().eval(u); }, U);
    if (!mean.is_zero()) {
        CyclotomicValue r = chi.t() * CyclotomicValue::q_half_power(p, -1);
        if (std::abs(r.to_complex()) >= 1.0 - 1e-12) throw NonConvergent("shell sums over val t -> infinity do not converge");
        total = total + mean * r.pow(n0) / (CyclotomicValue(1) - r);
    }
    return {central, total, lower};
}

inline CyclotomicValue bessel_split(int m1, int m2, const BesselSetup& S, const LocalCharacter& Lambda) {
    auto d = bessel_split_data(m1, m2, S, Lambda);
    return d.central * d.t_integral;
}
inline CyclotomicValue bessel_split_normalized(int m1, int m2, const BesselSetup& S, const LocalCharacter& Lambda) {
    return bessel_split(m1, m2, S, Lambda) / bessel_scaling(S, m1, m2);
}

// eta2^{-1}(rho(conj alpha - alpha)) gamma(1/2, eta1^{-1} Lambda)
inline CyclotomicValue bessel_split_closed_form(const BesselSetup& S, const LocalCharacter& Lambda) {
    auto at_rho = [&](const LocalCharacter& eta, const QuadElem& z) { return QuadCharacter::split(S.A, eta, LocalCharacter::trivial(S.p))(z); };
    return at_rho(S.eta2.inverse(), S.alpha.conj() - S.alpha) * gamma_gl1(S.eta1.inverse() * Lambda, HalfInt{1});
}
// The factor relating the stabilized value to the closed form under
// vol(Z_p^x) = 1 and W(n(x) g) = psi(x) W(g): chi(-1) p/(p-1) |delta|^{1/2}.
inline CyclotomicValue bessel_split_convention_factor(const BesselSetup& S, const LocalCharacter& Lambda) {
    LocalCharacter chi = S.eta1 * Lambda.inverse();
    int vdelta = S.A.split_valuations(S.alpha.conj() - S.alpha).first;
    return chi(Rational(-1)) * CyclotomicValue(Rational(static_cast<long>(S.p), static_cast<long>(S.p - 1))) *
           CyclotomicValue::q_half_power(S.p, -vdelta);
}

// Nonsplit case: I_0 = int_{O_p^x} phi_0(iota_S(z) diag(p^{m1}, p^{m2})) Lambda^{-1}(z) dz,
// vol(O_p^x) = 1.  Needs O_p = Z_p + Z_p alpha_S (p unramified in K).
inline int bessel_nonsplit_constancy(int m1, int m2, const BesselSetup& S, const QuadCharacter& Lambda) {
    return std::max({m1 - m2, S.eta1.conductor_exponent(), S.eta2.conductor_exponent(), detail::quad_conductor(Lambda), 1});
}

inline CyclotomicValue bessel_nonsplit(int m1, int m2, const BesselSetup& S, const QuadCharacter& Lambda, int refine = 0) {
    detail::check_m(m1, m2);
    if (S.split()) throw InvalidParameter("bessel_nonsplit needs p nonsplit");
    if (S.A.kind() == LocalKind::Ramified) throw InvalidParameter("ramified p is not supported");
    if (!S.A.integral_at_p(S.alpha) || val_p((S.alpha - S.alpha.conj()).norm(), S.p) != 0)
        throw InvalidParameter("Z_p + Z_p alpha_S must be the maximal order");
    std::uint64_t p = S.p;
    Mat2 Dm = Mat2::diag(detail::ppow_q(p, m1), detail::ppow_q(p, m2));
    QuadUnitDomain D{S.A, S.alpha, bessel_nonsplit_constancy(m1, m2, S, Lambda) + refine};
    QuadCharacter Li = Lambda.inverse();
    return haar_integral(
        [&](const QuadElem& z) {
            // z = x + y alpha
            Rational y = z.sqrt_y() / S.alpha.sqrt_y();
            Rational x = z.sqrt_x() - y * S.alpha.sqrt_x();
            CyclotomicValue v = section_phi0(S.iota(x, y) * Dm, p, S.eta1, S.eta2);
            if (v.is_zero()) return v;
            return v * Li(z);
        },
        D);
}

inline CyclotomicValue bessel_nonsplit_normalized(int m1, int m2, const BesselSetup& S, const QuadCharacter& Lambda, int refine = 0) {
    return bessel_nonsplit(m1, m2, S, Lambda, refine) / bessel_scaling(S, m1, m2);
}

// Limit of the normalized nonsplit value:
//   p/(p+1) eta1(N alpha) Lambda^{-1}(alpha) (eta1 eta2)(-1) [eta1 eta2 = Lambda on Z_p^x].
inline CyclotomicValue bessel_nonsplit_limit(const BesselSetup& S, const QuadCharacter& Lambda) {
    std::uint64_t p = S.p;
    LocalCharacter omega = S.eta1 * S.eta2;
    int c = std::max({omega.conductor_exponent(), detail::quad_conductor(Lambda), 1});
    std::uint64_t n = detail::cell_count(p, c);
    for (std::uint64_t u = 1; u < n; ++u) {
        if (u % p == 0) continue;
        if (omega.on_unit_residue(u) != Lambda.on_rational_unit(static_cast<long long>(u))) return CyclotomicValue(0);
    }
    return CyclotomicValue(Rational(static_cast<long>(p), static_cast<long>(p + 1))) * S.eta1(S.norm()) * Lambda.inverse()(S.alpha) *
           omega(Rational(-1));
}

struct StabilizedValue {
    int threshold;
    CyclotomicValue value;
};

// Walks m = (2k, k) until two consecutive normalized values agree, then
// asserts agreement for two further steps.
template <class F>
StabilizedValue stabilize_diagonal(const F& normalized, int max_k) {
    std::optional<CyclotomicValue> prev;
    for (int k = 1; k <= max_k; ++k) {
        CyclotomicValue v;
        try {
            v = normalized(2 * k, k);
        } catch (const InsufficientDepth&) {
            prev.reset();
            continue;
        }
        if (prev && *prev == v) {
            if (k + 2 > max_k) throw InsufficientDepth("no room to confirm stabilization below the configured depth");
            for (int j = k + 1; j <= k + 2; ++j)
                if (normalized(2 * j, j) != v) throw NoStabilization("normalized values moved after the threshold");
            return {k - 1, v};
        }
        prev = v;
    }
    throw InsufficientDepth("normalized values did not stabilize below the configured depth");
}

// -------- closed-form constants --------

// |4 c^2 p^{7m}|_q / ((1 - q^{-4})(1 - q^{-2})^2) for q = p^f.
inline Rational zvol_constant(std::uint64_t q, int m, const Rational& c) {
    if (m < 1) throw InvalidParameter("m >= 1 required");
    auto pf = detail::factor_modulus(q);
    if (pf.size() != 1) throw InvalidParameter("q must be a prime power");
    std::uint64_t p = pf[0].p;
    int f = pf[0].e;
    if (c == 0 || val_p(c, p) != 0) throw InvalidParameter("c must be a unit");
    Rational Q(Integer(static_cast<unsigned long>(q)));
    // |x|_q = q^{-val_p(x)/f}; 4 and p^{7m} have valuations val_p(4) and 7 m f at q
    int v4 = val_p(Integer(4), p);
    if (v4 % f != 0) throw InvalidParameter("|4|_q is not a power of q");
    Rational num = qpow(Q, -(v4 / f) - 7 * m);
    Rational one(1);
    Rational den = (one - qpow(Q, -4)) * (one - qpow(Q, -2)) * (one - qpow(Q, -2));
    return num / den;
}

inline CyclotomicValue up_eigenvalue_bigcell(const LocalCharacter& omega, const LocalCharacter& eta3, int m) {
    std::uint64_t p = omega.prime();
    if (eta3.prime() != p) throw LevelMismatch("characters at different primes");
    CyclotomicValue base = omega.t() * eta3.t().pow(-2) * CyclotomicValue(qpow(Rational(static_cast<long>(p)), -3));
    return base.pow(m);
}

// -------- I_p components --------

struct IpComponents {
    CyclotomicValue Ip1;           // closed form, 1
    CyclotomicValue Ip1_oracle;    // shell-sum integral
    CyclotomicValue Ip2;           // with the Bessel symbol factored out
    CyclotomicValue Ip;            // with the Bessel/W symbol factored out
    RationalInQ Ip_rational;       // I_p as a function of X = p^{-s}, symbol factored out
    RationalInQ Ep_shifted;        // E_p(s + 1/2)
    LaurentPoly Ep_cofactor;       // Ip_rational / Ep_shifted
    std::string bessel_symbol = "(eta_Pi3(p) p^{3/2})^{m1+m2} B(diag(p^{m1}, p^{m2}, p^{-m1}, p^{-m2}) phi_ord)";
    std::string ratio_symbol = "B(diag(p^{m1}, p^{m2}, p^{-m1}, p^{-m2}) phi_ord) W_c(f_ord) / (lambda1^{m1} lambda2^{m2} B(phi_ord))";
};

// I_p1 by integrating |nu|^{-s+1/2} chi^{-1} eta_pi2 eta_Pi3(nu) (F Phi_alt)(nu)
// over the support shells of the Fourier transform of phi_p's alt factor.
inline CyclotomicValue ip1_oracle(std::uint64_t p, const QuadElem& alpha, const PhiPData& d, HalfInt s) {
    ProductSchwartz3 phi = build_phi_p(p, alpha, d);
    Schwartz1 Falt = phi.alt.fourier();
    if (!Falt(Rational(0)).is_zero()) throw UnboundedSupport("F Phi_alt does not vanish at 0");
    LocalCharacter th = d.chi.inverse() * d.eta.etapi[1] * d.eta.etaPi[2];
    int lo = Falt.support_exponent(), hi = Falt.constancy_exponent();
    MultiplicativeDomain D{p, lo, hi, std::max(1, std::max(th.conductor_exponent(), hi - lo + 1)), Rational(0)};
    return haar_integral(
        [&](const Rational& nu) {
            CyclotomicValue f = Falt(nu);
            if (f.is_zero()) return f;
            // |nu|^{1/2 - s}
            return f * th(nu) * CyclotomicValue::q_half_power(p, -val_p(nu, p) * (1 - s.twice));
        },
        D);
}

inline IpComponents Ip_components(const EulerEtas& eta, const LocalCharacter& chi, const QuadCharacter& Lambda, const QuadElem& alpha,
                                  const Rational& cc, HalfInt s) {
    std::uint64_t p = chi.prime();
    const QuadraticLocalAlgebra& A = Lambda.algebra();
    if (A.prime() != p || A.d() != alpha.d()) throw LevelMismatch("Lambda is not a character of K_p for this alpha");
    if (cc == 0) throw InvalidParameter("c must be nonzero");
    QuadElem da = alpha - alpha.conj();
    QuadElem dd = da * da;
    if (!dd.is_rational()) throw InvalidParameter("(alpha - conj alpha)^2 is not rational");
    Rational D2 = -dd.a();  // -(alpha - conj alpha)^2 > 0
    int kron = A.kind() == LocalKind::Split ? 1 : (A.kind() == LocalKind::Inert ? -1 : 0);
    Rational P(static_cast<long>(p));
    Rational lead = (Rational(1) - Rational(kron) / P) / (Rational(1) + Rational(1) / P);
    int v2 = val_p(D2, p);
    // |(alpha - conj alpha)/sqrt(disc)|_p = |(alpha - conj alpha)^2 / disc|^{1/2}
    CyclotomicValue covol = CyclotomicValue::q_half_power(p, -(v2 - val_p(Rational(A.disc()), p)));
    LocalCharacter t1 = chi.inverse() * eta.etapi[0];
    CyclotomicValue chars2 = t1(D2) * Lambda(-da);

    // I_p2 = lead covol chars2 |D2|^{1-s}; |D2|^{1-s} = p^{-v2} X^{-v2}
    CyclotomicValue K2 = CyclotomicValue(lead) * covol * chars2 * CyclotomicValue(qpow(P, -v2));
    int vc = val_p(cc, p);
    CyclotomicValue Kc = chi(Rational(-1)) * (t1 * eta.etaPi[2])(cc);
    RationalInQ Ep = euler_Ep_rational(eta, chi).shift(1, 1);
    // |c|^{-s} = X^{-vc}
    RationalInQ mono2(LaurentPoly::monomial(K2, -v2), LaurentPoly(CyclotomicValue(1)), p);
    RationalInQ monoc(LaurentPoly::monomial(Kc, -vc), LaurentPoly(CyclotomicValue(1)), p);
    IpComponents r;
    r.Ip1 = CyclotomicValue(1);
    PhiPData pd{chi, Lambda, eta};
    r.Ip1_oracle = ip1_oracle(p, alpha, pd, s);
    r.Ip2 = mono2.at(s);
    r.Ip_rational = mono2 * monoc * Ep;
    r.Ep_shifted = Ep;
    r.Ip = r.Ip_rational.at(s);
    auto q = (r.Ip_rational / Ep).as_laurent();
    if (!q) throw DegenerateDenominator("E_p(s + 1/2) does not divide I_p");
    r.Ep_cofactor = *q;
    return r;
}

}  // namespace padicl
