#pragma once

// Symbolic Schwartz functions on Q_p, Sym_2(Q_p), M_2(Q_p) and Her_3(K_p)
// with exact Fourier transforms.  Conventions: psi_p(x) = e^{-2 pi i {x}},
// dx with vol(Z_p) = 1, and on K_p the measure with vol(O_p) = 1.

#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "additive.hpp"
#include "characters.hpp"
#include "cyclotomic.hpp"
#include "errors.hpp"
#include "gamma_euler.hpp"
#include "quadratic.hpp"
#include "rational.hpp"

namespace padicl {

namespace detail {
inline int pexp(std::uint64_t n, std::uint64_t p) {
    int e = 0;
    while (n > 1 && n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}
inline Rational ppow_q(std::uint64_t p, long e) { return qpow(Rational(static_cast<long>(p)), e); }
}  // namespace detail

// c * psi(b x) * g(x - a), where g is 1_{p^k Z_p} (Coset) or the shell
// function z -> chi(z p^{-k}) on val z = k, zero elsewhere (Shell).  chi is
// primitive with p-power modulus.
struct SchwartzTerm {
    enum class Kind { Coset, Shell };
    CyclotomicValue c = CyclotomicValue(1);
    Rational a = 0, b = 0;
    Kind kind = Kind::Coset;
    int k = 0;
    DirichletCharacter chi;

    int chi_exponent(std::uint64_t p) const { return detail::pexp(chi.modulus(), p); }

    CyclotomicValue atom(const Rational& z, std::uint64_t p) const {
        if (kind == Kind::Coset) return (z == 0 || val_p(z, p) >= k) ? CyclotomicValue(1) : CyclotomicValue(0);
        if (z == 0 || val_p(z, p) != k) return CyclotomicValue(0);
        if (chi.modulus() == 1) return CyclotomicValue(1);
        return chi.eval(z * detail::ppow_q(p, -k));
    }
};

class Schwartz1 {
public:
    explicit Schwartz1(std::uint64_t p = 2) : p_(p) {
        if (!is_prime(p)) throw InvalidParameter("p must be prime");
    }

    // 1_{a + p^k Z_p}
    static Schwartz1 coset(std::uint64_t p, int k, const Rational& a = 0) {
        Schwartz1 f(p);
        SchwartzTerm t;
        t.a = a;
        t.k = k;
        f.terms_.push_back(t);
        return f;
    }
    // x -> chi(x p^{-j}) on p^j Z_p^x; chi need not be primitive.
    static Schwartz1 shell(std::uint64_t p, const DirichletCharacter& chi, int j) {
        if (chi.modulus() != 1 && prime_factors(chi.modulus()) != std::vector<std::uint64_t>{p})
            throw LevelMismatch("shell character must have p-power modulus");
        Schwartz1 f(p);
        SchwartzTerm t;
        t.kind = SchwartzTerm::Kind::Shell;
        t.k = j;
        t.chi = chi.primitive();
        f.terms_.push_back(t);
        return f;
    }
    // x -> theta-circ(lambda x)
    static Schwartz1 character_circ(const LocalCharacter& th, const Rational& lambda = 1) {
        return shell(th.prime(), th.ramified_part(), 0).dilated(lambda);
    }

    std::uint64_t prime() const { return p_; }
    const std::vector<SchwartzTerm>& terms() const { return terms_; }
    bool is_zero_symbol() const { return terms_.empty(); }

    CyclotomicValue operator()(const Rational& x) const {
        CyclotomicValue r(0);
        for (auto& t : terms_) {
            CyclotomicValue g = t.atom(x - t.a, p_);
            if (g.is_zero()) continue;
            r = r + t.c * psi_p(t.b * x, p_) * g;
        }
        return r;
    }

    friend Schwartz1 operator+(const Schwartz1& f, const Schwartz1& g) {
        check(f, g);
        Schwartz1 r = f;
        r.terms_.insert(r.terms_.end(), g.terms_.begin(), g.terms_.end());
        return r;
    }
    Schwartz1 scaled(const CyclotomicValue& s) const {
        Schwartz1 r(p_);
        if (s.is_zero()) return r;
        r.terms_ = terms_;
        for (auto& t : r.terms_) t.c = t.c * s;
        return r;
    }
    friend Schwartz1 operator-(const Schwartz1& f, const Schwartz1& g) { return f + g.scaled(CyclotomicValue(-1)); }

    // x -> psi(b x) f(x)
    Schwartz1 twisted(const Rational& b) const {
        Schwartz1 r = *this;
        for (auto& t : r.terms_) t.b += b;
        return r;
    }
    // x -> f(x - a)
    Schwartz1 translated(const Rational& a) const {
        Schwartz1 r = *this;
        for (auto& t : r.terms_) {
            t.c = t.c * psi_p(-t.b * a, p_);
            t.a += a;
        }
        return r;
    }
    // x -> f(lambda x)
    Schwartz1 dilated(const Rational& lambda) const {
        if (lambda == 0) throw InvalidParameter("dilation by 0");
        int v = val_p(lambda, p_);
        Rational mu = lambda * detail::ppow_q(p_, -v);
        Schwartz1 r(p_);
        for (auto t : terms_) {
            if (t.kind == SchwartzTerm::Kind::Shell && t.chi.modulus() > 1) t.c = t.c * t.chi.eval(mu);
            t.a = t.a / lambda;
            t.b = t.b * lambda;
            t.k -= v;
            r.terms_.push_back(t);
        }
        return r;
    }
    Schwartz1 reflected() const { return dilated(-1); }

    // (F f)(y) = int f(x) psi(x y) dx
    Schwartz1 fourier() const {
        Schwartz1 r(p_);
        for (auto& t : terms_) {
            CyclotomicValue pre = t.c * psi_p(t.a * t.b, p_);
            auto push = [&](CyclotomicValue c, SchwartzTerm::Kind kind, int k, DirichletCharacter chi) {
                SchwartzTerm n;
                n.c = pre * c;
                n.a = -t.b;
                n.b = t.a;
                n.kind = kind;
                n.k = k;
                n.chi = std::move(chi);
                r.terms_.push_back(std::move(n));
            };
            if (t.kind == SchwartzTerm::Kind::Coset) {
                push(CyclotomicValue(detail::ppow_q(p_, -t.k)), SchwartzTerm::Kind::Coset, -t.k, DirichletCharacter());
            } else if (t.chi.modulus() == 1) {
                push(CyclotomicValue(detail::ppow_q(p_, -t.k)), SchwartzTerm::Kind::Coset, -t.k, DirichletCharacter());
                push(CyclotomicValue(-detail::ppow_q(p_, -t.k - 1)), SchwartzTerm::Kind::Coset, -t.k - 1, DirichletCharacter());
            } else {
                int m = t.chi_exponent(p_);
                push(gauss_sum(t.chi) * CyclotomicValue(detail::ppow_q(p_, -t.k - m)), SchwartzTerm::Kind::Shell, -t.k - m, t.chi.inverse());
            }
        }
        return r;
    }
    // int f(x) psi(-x y) dx
    Schwartz1 inverse_fourier() const { return fourier().reflected(); }

    // f vanishes outside p^s Z_p; s = +inf for the empty symbol is reported as 0.
    int support_exponent() const {
        int s = std::numeric_limits<int>::max();
        for (auto& t : terms_) {
            int s0 = t.k;
            if (t.a != 0) s0 = std::min(s0, val_p(t.a, p_));
            s = std::min(s, s0);
        }
        return terms_.empty() ? 0 : s;
    }
    // f is constant on cosets of p^c Z_p.
    int constancy_exponent() const {
        int c = std::numeric_limits<int>::min();
        for (auto& t : terms_) {
            int c0 = t.kind == SchwartzTerm::Kind::Coset ? t.k : t.k + std::max(1, t.chi_exponent(p_));
            if (t.b != 0) c0 = std::max(c0, -val_p(t.b, p_));
            c = std::max(c, c0);
        }
        if (terms_.empty()) return 0;
        return std::max(c, support_exponent());
    }

    std::string str() const {
        std::ostringstream o;
        o << "(sum";
        for (auto& t : terms_) {
            o << " (term (c " << t.c.str() << ") (a " << t.a.get_str() << ") (b " << t.b.get_str() << ") ";
            if (t.kind == SchwartzTerm::Kind::Coset) o << "(coset " << t.k << ")";
            else o << "(shell " << t.k << " " << t.chi.str() << ")";
            o << ")";
        }
        o << ")";
        return o.str();
    }

private:
    static void check(const Schwartz1& f, const Schwartz1& g) {
        if (f.p_ != g.p_) throw SpaceMismatch("Schwartz functions at different primes");
    }

    std::uint64_t p_;
    std::vector<SchwartzTerm> terms_;
};

// Grid of representatives x = p^s t, t = 0..p^{c-s}-1, of p^s Z_p / p^c Z_p.
inline std::vector<Rational> schwartz_grid(std::uint64_t p, int s, int c, std::uint64_t limit = 2000000) {
    if (c < s) c = s;
    Rational n = detail::ppow_q(p, c - s);
    if (n > limit) throw IndexOverflow("grid too large");
    std::vector<Rational> out;
    long N = n.get_num().get_si();
    Rational step = detail::ppow_q(p, s);
    for (long t = 0; t < N; ++t) out.push_back(step * t);
    return out;
}

inline bool equal_as_functions(const Schwartz1& f, const Schwartz1& g) {
    if (f.prime() != g.prime()) throw SpaceMismatch("different primes");
    int s = std::min(f.support_exponent(), g.support_exponent());
    int c = std::max(f.constancy_exponent(), g.constancy_exponent());
    for (auto& x : schwartz_grid(f.prime(), s, c))
        if (f(x) != g(x)) return false;
    Rational out = detail::ppow_q(f.prime(), s - 1);
    return f(out) == g(out);
}

// int |f|^2 dx, summed exactly over the constancy grid.
inline CyclotomicValue l2_norm_sq(const Schwartz1& f) {
    int s = f.support_exponent(), c = f.constancy_exponent();
    CyclotomicValue acc(0);
    for (auto& x : schwartz_grid(f.prime(), s, c)) {
        CyclotomicValue v = f(x);
        acc = acc + v * v.conj();
    }
    return acc * CyclotomicValue(detail::ppow_q(f.prime(), -c));
}

// Product f11(x11) f12(x12) f22(x22) on Sym_2(Q_p), paired with
// x11 y11 + 2 x12 y12 + x22 y22 (= tr(xy)).
struct Sym2Schwartz {
    Schwartz1 f11, f12, f22;

    static Sym2Schwartz lattice(std::uint64_t p, int k) { return {Schwartz1::coset(p, k), Schwartz1::coset(p, k), Schwartz1::coset(p, k)}; }

    CyclotomicValue operator()(const Rational& x11, const Rational& x12, const Rational& x22) const { return f11(x11) * f12(x12) * f22(x22); }
    Sym2Schwartz fourier() const { return {f11.fourier(), f12.fourier().dilated(2), f22.fourier()}; }
    // Exact inverse of fourier() (differs from the reflected transform by |2|_p at p = 2).
    Sym2Schwartz inverse_fourier() const {
        std::uint64_t p = f12.prime();
        CyclotomicValue two = p == 2 ? CyclotomicValue(make_q(1, 2)) : CyclotomicValue(1);
        return {f11.inverse_fourier(), f12.inverse_fourier().dilated(2).scaled(two), f22.inverse_fourier()};
    }
    std::string str() const { return "(sym " + f11.str() + " " + f12.str() + " " + f22.str() + ")"; }
};

// Product of coordinate functions on M_2(Q_p), entries (a, b; c, d), paired entrywise.
struct M2Schwartz {
    Schwartz1 f[4];

    // 1_{K(p^m)}: a, d in 1 + p^m Z_p, b, c in p^m Z_p
    static M2Schwartz K_level(std::uint64_t p, int m) {
        return {{Schwartz1::coset(p, m, 1), Schwartz1::coset(p, m), Schwartz1::coset(p, m), Schwartz1::coset(p, m, 1)}};
    }
    // 1_{K^1(p^m)}: a, d in 1 + p^m Z_p, b in Z_p, c in p^m Z_p
    static M2Schwartz K1_level(std::uint64_t p, int m) {
        return {{Schwartz1::coset(p, m, 1), Schwartz1::coset(p, 0), Schwartz1::coset(p, m), Schwartz1::coset(p, m, 1)}};
    }

    CyclotomicValue operator()(const Rational& a, const Rational& b, const Rational& c, const Rational& d) const {
        return f[0](a) * f[1](b) * f[2](c) * f[3](d);
    }
    M2Schwartz fourier() const { return {{f[0].fourier(), f[1].fourier(), f[2].fourier(), f[3].fourier()}}; }
    std::string str() const { return "(m2 " + f[0].str() + " " + f[1].str() + " " + f[2].str() + " " + f[3].str() + ")"; }
};

// Hermitian 3x3 matrix over K = Q(sqrt d): rational diagonal and upper
// entries u12, u13, u23; the lower entries are their conjugates.
struct HermitianMatrix {
    Rational d[3] = {0, 0, 0};
    QuadElem u12, u13, u23;

    static HermitianMatrix zero(long dK) {
        HermitianMatrix w;
        w.u12 = w.u13 = w.u23 = QuadElem(dK, 0);
        return w;
    }
    static HermitianMatrix identity(long dK) {
        HermitianMatrix w = zero(dK);
        w.d[0] = w.d[1] = w.d[2] = 1;
        return w;
    }
};

// A function on K_p^2 given by its Fourier transform G(b1, b2).  G vanishes
// unless b_i in p^{s_i} O_p, and is constant on (p^c O_p)^2 cosets.
struct KFourierBlock {
    QuadraticLocalAlgebra A;
    std::function<CyclotomicValue(const QuadElem&, const QuadElem&)> G;
    int s1 = 0, s2 = 0, c = 1;
    std::string label = "G";

    // int int G(b1, b2) psi(-Tr(b1 w1 + b2 w2)) db1 db2, by exact summation.
    CyclotomicValue inverse_at(const QuadElem& w1, const QuadElem& w2) const {
        std::uint64_t p = A.prime();
        long dK = A.d();
        Rational pc = detail::ppow_q(p, c);
        auto trivial_on = [&](const QuadElem& w) {
            return is_p_integral((QuadElem(dK, pc) * w).trace(), p) && is_p_integral((QuadElem(dK, 0, pc) * w).trace(), p);
        };
        if (!trivial_on(w1) || !trivial_on(w2)) return CyclotomicValue(0);
        auto cells = [&](int s) {
            std::vector<QuadElem> out;
            for (auto& x : schwartz_grid(p, s, c, 5000))
                for (auto& y : schwartz_grid(p, s, c, 5000)) out.push_back(QuadElem(dK, x, y));
            return out;
        };
        std::vector<QuadElem> B1 = cells(s1), B2 = cells(s2);
        if (B1.size() * B2.size() > 4000000) throw IndexOverflow("K^2 inversion grid too large");
        CyclotomicValue acc(0);
        for (auto& b1 : B1) {
            CyclotomicValue e1 = psi_p(-(b1 * w1).trace(), p);
            for (auto& b2 : B2) {
                CyclotomicValue g = G(b1, b2);
                if (g.is_zero()) continue;
                acc = acc + g * e1 * psi_p(-(b2 * w2).trace(), p);
            }
        }
        // self-dual correction |D_K|_p per variable, cell volume p^{-2c} per variable
        Rational D = abs_p(Rational(A.disc()), p);
        return acc * CyclotomicValue(D * D * detail::ppow_q(p, -4 * c));
    }
};

// Block Schwartz function on Her_3(K_p):
//   scalar * sym(w11, Re w21, w22) * two(w33) * alt((w21 - conj w21)/(alpha - conj alpha)) * zero(w31, w32)
// where zero is either a product on M_2(Q_p) in the coordinates
// X = [[alpha, 1], [conj alpha, 1]]^{-1} [[w31, w32], [conj w31, conj w32]],
// or a block on K_p^2 given by its Fourier transform.
struct ProductSchwartz3 {
    std::uint64_t p = 2;
    QuadElem alpha;
    CyclotomicValue scalar = CyclotomicValue(1);
    Sym2Schwartz sym;
    Schwartz1 alt, two;
    std::variant<M2Schwartz, KFourierBlock> zero;

    long dK() const { return alpha.d(); }
    QuadElem alpha_diff() const { return alpha - alpha.conj(); }

    // |(alpha - conj alpha)^2 / D_K|_p^{1/2}: covolume of Z_p alpha + Z_p in O_p.
    CyclotomicValue jacobian() const {
        QuadElem dd = alpha_diff() * alpha_diff();
        if (!dd.is_rational()) throw InvalidParameter("alpha - conj alpha squared is not rational");
        Rational r = dd.a() / Rational(QuadraticLocalAlgebra(p, dK()).disc());
        return CyclotomicValue::q_half_power(p, -val_p(r, p));
    }

    static std::array<Rational, 4> m2_coords(const QuadElem& alpha, const QuadElem& w31, const QuadElem& w32) {
        QuadElem da = alpha - alpha.conj();
        auto rat = [](const QuadElem& z) {
            if (!z.is_rational()) throw SpaceMismatch("coordinate is not rational");
            return z.a();
        };
        return {rat((w31 - w31.conj()) / da), rat((w32 - w32.conj()) / da), rat((alpha * w31.conj() - alpha.conj() * w31) / da),
                rat((alpha * w32.conj() - alpha.conj() * w32) / da)};
    }

    void check_point(const HermitianMatrix& w) const {
        if (w.u12.d() != dK() || w.u13.d() != dK() || w.u23.d() != dK()) throw SpaceMismatch("point not in Her_3 of this field");
    }

    CyclotomicValue evaluate(const HermitianMatrix& w) const {
        check_point(w);
        QuadElem w21 = w.u12.conj(), w31 = w.u13.conj(), w32 = w.u23.conj();
        QuadElem y = (w21 - w21.conj()) / alpha_diff();
        if (!y.is_rational()) throw SpaceMismatch("alt coordinate is not rational");
        CyclotomicValue v = scalar * sym(w.d[0], w21.trace() / 2, w.d[1]) * two(w.d[2]) * alt(y.a());
        if (v.is_zero()) return v;
        if (auto* m = std::get_if<M2Schwartz>(&zero)) {
            auto X = m2_coords(alpha, w31, w32);
            return v * (*m)(X[0], X[1], X[2], X[3]);
        }
        return v * std::get<KFourierBlock>(zero).inverse_at(w31, w32);
    }

    // int Phi(w) psi(tr(beta w)) dw with the product measure (vol O_p = 1 on the off-diagonal entries).
    CyclotomicValue fourier_at(const HermitianMatrix& b) const {
        check_point(b);
        CyclotomicValue J = jacobian();
        Rational alt_dual = (b.u12 * alpha_diff()).trace() / 2;
        CyclotomicValue v = scalar * J * sym.fourier()(b.d[0], b.u12.trace() / 2, b.d[1]) * two.fourier()(b.d[2]) * alt.fourier()(alt_dual);
        if (v.is_zero()) return v;
        if (auto* m = std::get_if<M2Schwartz>(&zero)) {
            M2Schwartz F = m->fourier();
            return v * J * J * F((b.u13 * alpha).trace(), (b.u23 * alpha).trace(), b.u13.trace(), b.u23.trace());
        }
        return v * std::get<KFourierBlock>(zero).G(b.u13, b.u23);
    }

    std::string str() const {
        std::string z = std::holds_alternative<M2Schwartz>(zero) ? std::get<M2Schwartz>(zero).str() : "(fourier-block " + std::get<KFourierBlock>(zero).label + ")";
        return "(her3 (alpha " + alpha.str() + ") (scalar " + scalar.str() + ") " + sym.str() + " (alt " + alt.str() + ") (two " + two.str() + ") " + z + ")";
    }
};

// -------- standard choices --------

namespace detail {
inline QuadElem check_alpha(std::uint64_t p, const QuadElem& alpha) {
    if (!is_prime(p)) throw InvalidParameter("p must be prime");
    if (alpha.is_rational()) throw InvalidParameter("alpha must not be rational");
    return alpha;
}
}  // namespace detail

// vol-sec(m, c): sym = 1_{Sym_2(Z_p)}, alt = 1_{4 c^2 p^{2m} Z_p}, zero = 1_{K(p^m)},
// two = F^{-1} 1_{-c + p^{m + v(c)} Z_p}.
inline ProductSchwartz3 build_vol_sec(std::uint64_t p, const QuadElem& alpha, int m, const Rational& c) {
    detail::check_alpha(p, alpha);
    if (m < 1) throw InvalidParameter("vol-sec needs m >= 1");
    if (c == 0) throw InvalidParameter("vol-sec needs c != 0");
    ProductSchwartz3 f;
    f.p = p;
    f.alpha = alpha;
    f.sym = Sym2Schwartz::lattice(p, 0);
    f.alt = Schwartz1::coset(p, val_p(4 * c * c, p) + 2 * m);
    f.two = Schwartz1::coset(p, m + val_p(c, p), -c).inverse_fourier();
    f.zero = M2Schwartz::K_level(p, m);
    return f;
}

// phi_N at v | N: sym = 1_{N Sym_2(Z_v)}, two = F^{-1} 1_{-c(1 + N Z_v)},
// alt = 1_{c^2 N^3 Z_v}, zero = 1_{K^1(v^{val N})}.
inline ProductSchwartz3 build_phi_N(std::uint64_t p, const QuadElem& alpha, long N, const Rational& c) {
    detail::check_alpha(p, alpha);
    if (N <= 0 || N % static_cast<long>(p) != 0) throw InvalidParameter("phi_N needs p | N");
    if (c == 0) throw InvalidParameter("phi_N needs c != 0");
    int v = val_p(Integer(N), p);
    ProductSchwartz3 f;
    f.p = p;
    f.alpha = alpha;
    f.sym = Sym2Schwartz::lattice(p, v);
    f.two = Schwartz1::coset(p, v + val_p(c, p), -c).inverse_fourier();
    f.alt = Schwartz1::coset(p, val_p(c * c, p) + 3 * v);
    f.zero = M2Schwartz::K1_level(p, v);
    return f;
}

struct PhiPData {
    LocalCharacter chi;
    QuadCharacter Lambda;
    EulerEtas eta;
};

namespace detail {
inline int quad_conductor(const QuadCharacter& L) {
    if (L.is_split()) return std::max(L.lambda1().conductor_exponent(), L.lambda2().conductor_exponent());
    return L.level_m();
}

inline bool in_lattice(const QuadraticLocalAlgebra& A, const QuadElem& z, const QuadElem& gen) { return z.is_zero() || A.integral_at_p(z / gen); }

// The Fourier-side block G(b13, b23) of phi_p.
inline CyclotomicValue phi_p_block(const QuadraticLocalAlgebra& A, const QuadElem& da, const PhiPData& d, const QuadElem& b13, const QuadElem& b23) {
    if (!in_lattice(A, b23, da)) return CyclotomicValue(0);
    if (!A.is_unit(b13)) return CyclotomicValue(0);
    CyclotomicValue v = d.Lambda(b13) * d.eta.etaPi[1].inverse().circ(b13.norm());
    if (v.is_zero()) return v;
    LocalCharacter th2 = d.chi * d.eta.etapi[0].inverse() * d.eta.etaPi[0].inverse();
    QuadElem x = (b13.conj() * b23 - b13 * b23.conj()) / da;
    if (!x.is_rational()) throw InvalidParameter("block argument is not rational");
    return v * th2.circ(x.a());
}
}  // namespace detail

inline LocalCharacter phi_p_alt_character(const PhiPData& d) { return d.chi * d.eta.etapi[1].inverse() * d.eta.etaPi[2].inverse(); }

// The displayed Fourier transform of phi_p, computed directly:
//   1_{Sym_2(Z_p)}(b11, Re b12, b22) 1_{Z_p}(b33) theta1-circ((alpha - conj alpha)(b12 - conj b12)/2) G(b13, b23)
inline CyclotomicValue phi_p_fourier_display(std::uint64_t p, const QuadElem& alpha, const PhiPData& d, const HermitianMatrix& b) {
    QuadraticLocalAlgebra A(p, alpha.d());
    QuadElem da = alpha - alpha.conj();
    auto intg = [&](const Rational& x) { return is_p_integral(x, p); };
    if (!intg(b.d[0]) || !intg(b.d[1]) || !intg(b.d[2]) || !intg(b.u12.trace() / 2)) return CyclotomicValue(0);
    QuadElem t = (da * (b.u12 - b.u12.conj())) / QuadElem(alpha.d(), 2);
    CyclotomicValue v = phi_p_alt_character(d).circ(t.a());
    if (v.is_zero()) return v;
    return v * detail::phi_p_block(A, da, d, b.u13, b.u23);
}

// phi_p, stored through its Fourier transform: each factor is inverted symbolically.
inline ProductSchwartz3 build_phi_p(std::uint64_t p, const QuadElem& alpha, const PhiPData& d) {
    detail::check_alpha(p, alpha);
    QuadraticLocalAlgebra A(p, alpha.d());
    if (d.chi.prime() != p || d.Lambda.algebra().prime() != p) throw InvalidParameter("characters at the wrong prime");
    ProductSchwartz3 f;
    f.p = p;
    f.alpha = alpha;
    f.scalar = f.jacobian().inv();
    f.sym = Sym2Schwartz::lattice(p, 0).inverse_fourier();
    f.two = Schwartz1::coset(p, 0).inverse_fourier();
    f.alt = Schwartz1::character_circ(phi_p_alt_character(d)).inverse_fourier();
    QuadElem da = f.alpha_diff();
    KFourierBlock blk{A, [A, da, d](const QuadElem& b13, const QuadElem& b23) { return detail::phi_p_block(A, da, d, b13, b23); }};
    int vda;
    if (A.kind() == LocalKind::Split) {
        auto [v1, v2] = A.split_valuations(da);
        blk.s2 = std::min(0, std::min(v1, v2));
        vda = std::max(0, std::max(v1, v2));
    } else {
        Rational v = A.valuation(da);
        Integer fl, cl;
        mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
        mpz_cdiv_q(cl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
        blk.s2 = std::min(0L, fl.get_si());
        vda = static_cast<int>(std::max(0L, cl.get_si()));
    }
    int cond = std::max({1, detail::quad_conductor(d.Lambda), d.eta.etaPi[1].conductor_exponent(),
                         (d.chi * d.eta.etapi[0].inverse() * d.eta.etaPi[0].inverse()).conductor_exponent()});
    blk.s1 = 0;
    blk.c = cond + vda;
    blk.label = "phi_p";
    f.zero = blk;
    return f;
}

}  // namespace padicl
