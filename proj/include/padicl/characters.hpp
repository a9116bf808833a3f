#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "quadratic.hpp"
#include "rational.hpp"

namespace padicl {

namespace detail {

struct PrimePowerFactor {
    std::uint64_t p;
    int e;
    std::uint64_t q;  // p^e
};

inline std::vector<PrimePowerFactor> factor_modulus(std::uint64_t n) {
    std::vector<PrimePowerFactor> out;
    for (auto p : prime_factors(n)) {
        int e = 0;
        std::uint64_t q = 1;
        while (n % p == 0) {
            n /= p;
            q *= p;
            ++e;
        }
        out.push_back({p, e, q});
    }
    return out;
}

// Element congruent to x mod q and to 1 mod n/q (q, n/q coprime).
inline std::uint64_t crt_lift(std::uint64_t x, std::uint64_t q, std::uint64_t n) {
    std::uint64_t r = n / q;
    if (r == 1) return x % n;
    // y = x + q*t with y = 1 mod r
    std::uint64_t qi = invmod(q % r, r);
    std::uint64_t t = mulmod((1 + r - x % r) % r, qi, r);
    return (x % q + q * t) % n;
}

inline std::uint64_t mult_order(std::uint64_t g, std::uint64_t n) {
    std::uint64_t x = g % n, k = 1;
    while (x != 1 % n) {
        x = mulmod(x, g, n);
        ++k;
    }
    return k;
}

}  // namespace detail

// Fixed generators of (Z/n)^x: for odd p^e the least primitive root mod p^e,
// for 2^e the elements -1 and 5; each lifted by CRT to be 1 at the other
// prime powers.
struct UnitGroupGenerators {
    std::uint64_t modulus;
    std::vector<std::uint64_t> gens;
    std::vector<std::uint64_t> orders;
};

inline UnitGroupGenerators unit_group_generators(std::uint64_t n) {
    UnitGroupGenerators G{n, {}, {}};
    if (n <= 2) return G;
    for (auto& f : detail::factor_modulus(n)) {
        if (f.p == 2) {
            if (f.e == 1) continue;
            G.gens.push_back(detail::crt_lift(f.q - 1, f.q, n));
            G.orders.push_back(2);
            if (f.e >= 3) {
                G.gens.push_back(detail::crt_lift(5, f.q, n));
                G.orders.push_back(f.q / 4);
            }
            continue;
        }
        std::uint64_t g = primitive_root(f.p);
        if (f.e >= 2 && detail::powmod(g, f.p - 1, f.p * f.p) == 1) g += f.p;
        G.gens.push_back(detail::crt_lift(g, f.q, n));
        G.orders.push_back(f.q / f.p * (f.p - 1));
    }
    return G;
}

// Dirichlet character mod n with values in mu_L; stored as a discrete-log
// style table a -> exponent of zeta_L (or -1 off the units).
class DirichletCharacter {
public:
    DirichletCharacter() : n_(1), L_(1), table_(1, 0) {}

    // chi(g_i) = zeta_{ord_i}^{k_i} on the fixed generators of (Z/n)^x.
    static DirichletCharacter from_standard_exponents(std::uint64_t n, const std::vector<std::uint64_t>& k) {
        auto G = unit_group_generators(n);
        if (k.size() != G.gens.size()) throw InvalidParameter("wrong number of generator exponents");
        std::vector<std::pair<std::uint64_t, Rational>> imgs;
        for (size_t i = 0; i < k.size(); ++i)
            imgs.push_back({G.gens[i], Rational(static_cast<long>(k[i] % G.orders[i]), static_cast<long>(G.orders[i]))});
        return from_images(n, imgs);
    }

    // chi(g) = exp(2 pi i * turn) for each listed generator g; the listed
    // elements must generate (Z/n)^x and the images must be consistent.
    static DirichletCharacter from_images(std::uint64_t n, std::vector<std::pair<std::uint64_t, Rational>> imgs) {
        if (n == 0) throw InvalidParameter("modulus must be positive");
        if (n > 10000000) throw InvalidParameter("modulus too large for a table");
        DirichletCharacter c;
        c.n_ = n;
        long long L = 1;
        for (auto& [g, t] : imgs) {
            t.canonicalize();
            if (std::gcd(g % n, n) != 1 && n > 1) throw InvalidParameter("generator is not a unit");
            L = detail::lcm_ll(L, t.get_den().get_si());
        }
        c.L_ = static_cast<int>(L);
        c.table_.assign(n, -1);
        c.table_[1 % n] = 0;
        std::vector<std::uint64_t> frontier{1 % n};
        std::uint64_t reached = 1;
        while (!frontier.empty()) {
            std::vector<std::uint64_t> next;
            for (auto a : frontier)
                for (auto& [g, t] : imgs) {
                    Rational tl = t * static_cast<long>(c.L_);
                    long long e = mod_floor(tl.get_num().get_si(), c.L_);
                    std::uint64_t b = detail::mulmod(a, g % n, n);
                    long long v = mod_floor(c.table_[a] + e, c.L_);
                    if (c.table_[b] < 0) {
                        c.table_[b] = static_cast<int>(v);
                        next.push_back(b);
                        ++reached;
                    } else if (c.table_[b] != v) {
                        throw InvalidParameter("inconsistent generator images");
                    }
                }
            frontier.swap(next);
        }
        if (reached != (n == 1 ? 1 : euler_phi(n))) throw InvalidParameter("listed elements do not generate the unit group");
        c.reduce_level();
        return c;
    }

    static DirichletCharacter trivial(std::uint64_t n) { return from_standard_exponents(n, std::vector<std::uint64_t>(unit_group_generators(n).gens.size(), 0)); }

    // Legendre symbol mod an odd prime p.
    static DirichletCharacter quadratic_legendre(std::uint64_t p) {
        if (p % 2 == 0 || !is_prime(p)) throw InvalidParameter("odd prime required");
        return from_standard_exponents(p, {(p - 1) / 2});
    }

    std::uint64_t modulus() const { return n_; }
    int level() const { return L_; }

    // Exponent j with chi(a) = zeta_L^j, or nullopt when gcd(a, n) > 1.
    std::optional<int> exponent(long long a) const {
        int v = table_[static_cast<std::uint64_t>(mod_floor(a, static_cast<long long>(n_)))];
        if (v < 0) return std::nullopt;
        return v;
    }
    CyclotomicValue operator()(long long a) const {
        auto e = exponent(a);
        if (!e) return CyclotomicValue(0);
        return CyclotomicValue::root_of_unity(L_, *e);
    }
    CyclotomicValue eval(const Rational& x) const {
        if (x.get_den() != 1) {
            if (std::gcd(x.get_den().get_ui() % n_, n_) != 1 && n_ > 1) throw LevelMismatch("denominator not a unit mod n");
            Integer inv;
            Integer nn(static_cast<unsigned long>(n_));
            mpz_invert(inv.get_mpz_t(), x.get_den_mpz_t(), nn.get_mpz_t());
            Integer r = x.get_num() * inv % nn;
            if (r < 0) r += nn;
            return (*this)(r.get_si());
        }
        Integer r = x.get_num() % Integer(static_cast<unsigned long>(n_));
        if (r < 0) r += Integer(static_cast<unsigned long>(n_));
        return (*this)(r.get_si());
    }

    bool is_trivial() const {
        for (auto v : table_)
            if (v > 0) return false;
        return true;
    }
    int parity() const { return n_ <= 2 ? 1 : (*exponent(static_cast<long long>(n_) - 1) == 0 ? 1 : -1); }

    DirichletCharacter inverse() const {
        DirichletCharacter c = *this;
        for (auto& v : c.table_)
            if (v > 0) v = L_ - v;
        return c;
    }

    friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b) {
        std::uint64_t n = static_cast<std::uint64_t>(detail::lcm_ll(a.n_, b.n_));
        DirichletCharacter x = a.lifted(n), y = b.lifted(n);
        DirichletCharacter c;
        c.n_ = n;
        c.L_ = static_cast<int>(detail::lcm_ll(x.L_, y.L_));
        c.table_.assign(n, -1);
        for (std::uint64_t t = 0; t < n; ++t) {
            if (x.table_[t] < 0 || y.table_[t] < 0) continue;
            c.table_[t] = static_cast<int>((static_cast<long long>(x.table_[t]) * (c.L_ / x.L_) + static_cast<long long>(y.table_[t]) * (c.L_ / y.L_)) % c.L_);
        }
        c.reduce_level();
        return c;
    }
    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
        if (a.n_ != b.n_) return false;
        for (std::uint64_t t = 0; t < a.n_; ++t) {
            int x = a.table_[t], y = b.table_[t];
            if ((x < 0) != (y < 0)) return false;
            if (x < 0) continue;
            if (static_cast<long long>(x) * b.L_ != static_cast<long long>(y) * a.L_) return false;
        }
        return true;
    }

    DirichletCharacter pow(long e) const {
        DirichletCharacter c = *this;
        for (auto& v : c.table_)
            if (v >= 0) v = static_cast<int>(mod_floor(static_cast<long long>(v) * e, L_));
        c.reduce_level();
        return c;
    }

    // Same character viewed modulo a multiple n2 of n.
    DirichletCharacter lifted(std::uint64_t n2) const {
        if (n2 % n_ != 0) throw LevelMismatch("lift to a non-multiple modulus");
        if (n2 == n_) return *this;
        DirichletCharacter c;
        c.n_ = n2;
        c.L_ = L_;
        c.table_.assign(n2, -1);
        for (std::uint64_t t = 0; t < n2; ++t)
            if (std::gcd(t, n2) == 1) c.table_[t] = table_[t % n_];
        return c;
    }

    // Conductor: least d | n such that chi is trivial on units = 1 mod d.
    std::uint64_t conductor() const {
        for (std::uint64_t d = 1; d <= n_; ++d) {
            if (n_ % d) continue;
            bool ok = true;
            for (std::uint64_t t = 1; t < n_ && ok; t += d)
                if (table_[t] > 0) ok = false;
            if (ok) return d;
        }
        return n_;
    }
    bool is_primitive() const { return conductor() == n_; }

    // Primitive character inducing this one.
    DirichletCharacter primitive() const {
        std::uint64_t f = conductor();
        DirichletCharacter c;
        c.n_ = f;
        c.L_ = L_;
        c.table_.assign(f, -1);
        for (std::uint64_t t = 0; t < n_; ++t)
            if (table_[t] >= 0) c.table_[t % f] = table_[t];
        if (f == 1) c.table_[0] = 0;
        c.reduce_level();
        return c;
    }

    // Component on (Z/p^e)^x for the prime power p^e || n.
    DirichletCharacter p_component(std::uint64_t p) const {
        std::uint64_t q = 1;
        while (n_ % (q * p) == 0) q *= p;
        DirichletCharacter c;
        c.n_ = q;
        c.L_ = L_;
        c.table_.assign(q, -1);
        if (q == 1) {
            c.table_[0] = 0;
            c.L_ = 1;
            return c;
        }
        for (std::uint64_t t = 0; t < q; ++t)
            if (t % p) c.table_[t] = table_[detail::crt_lift(t, q, n_)];
        c.reduce_level();
        return c;
    }

    // Every character mod n, ordered by the exponents on the fixed generators.
    static std::vector<DirichletCharacter> all(std::uint64_t n) {
        auto G = unit_group_generators(n);
        std::vector<DirichletCharacter> out;
        std::vector<std::uint64_t> k(G.gens.size(), 0);
        while (true) {
            out.push_back(from_standard_exponents(n, k));
            size_t i = 0;
            while (i < k.size() && ++k[i] == G.orders[i]) k[i++] = 0;
            if (i == k.size()) break;
        }
        return out;
    }

    // Exponents on the fixed generators (inverse of from_standard_exponents).
    std::vector<std::uint64_t> standard_exponents() const {
        auto G = unit_group_generators(n_);
        std::vector<std::uint64_t> k;
        for (size_t i = 0; i < G.gens.size(); ++i) {
            long long e = table_[G.gens[i]];
            k.push_back(static_cast<std::uint64_t>(e * static_cast<long long>(G.orders[i]) / L_));
        }
        return k;
    }

    std::string str() const {
        std::string s = "chi mod " + std::to_string(n_) + " [";
        auto k = standard_exponents();
        for (size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
        return s + "]";
    }

private:
    void reduce_level() {
        long long g = L_;
        for (auto v : table_)
            if (v > 0) g = std::gcd(g, static_cast<long long>(v));
        if (g > 1) {
            for (auto& v : table_)
                if (v > 0) v = static_cast<int>(v / g);
            L_ = static_cast<int>(L_ / g);
        }
    }

    std::uint64_t n_;
    int L_;
    std::vector<int> table_;
};

// Character of Q_p^x: theta(p^v u) = t^v * ram(u mod p^m).
class LocalCharacter {
public:
    LocalCharacter() = default;
    LocalCharacter(std::uint64_t p, DirichletCharacter ram, CyclotomicValue t) : p_(p), ram_(std::move(ram)), t_(std::move(t)) {
        std::uint64_t n = ram_.modulus();
        while (n % p == 0) n /= p;
        if (n != 1) throw LevelMismatch("ramified part must have p-power modulus");
        if (t_.is_zero()) throw InvalidParameter("unramified parameter must be nonzero");
    }

    static LocalCharacter trivial(std::uint64_t p) { return LocalCharacter(p, DirichletCharacter(), CyclotomicValue(1)); }
    static LocalCharacter unramified(std::uint64_t p, CyclotomicValue t) { return LocalCharacter(p, DirichletCharacter(), std::move(t)); }

    // Local component at p of a Dirichlet character: the ramified part is the
    // character itself on units of Z_p (through its p-component) and the value
    // at p defaults to 1; pass `t` to override.
    static LocalCharacter from_dirichlet(const DirichletCharacter& chi, std::uint64_t p, CyclotomicValue t = CyclotomicValue(1)) {
        return LocalCharacter(p, chi.p_component(p), std::move(t));
    }

    // |x|^(e/2)
    static LocalCharacter abs_half_power(std::uint64_t p, long e) { return unramified(p, CyclotomicValue::q_half_power(p, -e)); }

    std::uint64_t prime() const { return p_; }
    const DirichletCharacter& ramified_part() const { return ram_; }
    const CyclotomicValue& t() const { return t_; }

    int conductor_exponent() const {
        std::uint64_t f = ram_.conductor();
        int a = 0;
        while (f > 1) {
            f /= p_;
            ++a;
        }
        return a;
    }
    bool is_unramified() const { return conductor_exponent() == 0; }

    CyclotomicValue operator()(const Rational& x) const {
        if (x == 0) throw InvalidParameter("character at 0");
        int v = val_p(x, p_);
        Rational u = x * qpow(Rational(static_cast<long>(p_)), -v);
        return ram_.eval(u) * t_.pow(v);
    }
    // theta-circ: theta on Z_p^x and 0 elsewhere.
    CyclotomicValue circ(const Rational& x) const {
        if (x == 0 || val_p(x, p_) != 0) return CyclotomicValue(0);
        return ram_.eval(x);
    }
    // Value on a unit given by its residue modulo a p-power at least the conductor.
    CyclotomicValue on_unit_residue(std::uint64_t u) const { return ram_(static_cast<long long>(u % ram_.modulus())); }

    LocalCharacter inverse() const { return LocalCharacter(p_, ram_.inverse(), t_.inv()); }
    friend LocalCharacter operator*(const LocalCharacter& a, const LocalCharacter& b) {
        if (a.p_ != b.p_) throw LevelMismatch("characters at different primes");
        return LocalCharacter(a.p_, a.ram_ * b.ram_, a.t_ * b.t_);
    }
    LocalCharacter times_abs_half_power(long e) const { return *this * abs_half_power(p_, e); }

    friend bool operator==(const LocalCharacter& a, const LocalCharacter& b) {
        if (a.p_ != b.p_ || a.t_ != b.t_) return false;
        std::uint64_t n = static_cast<std::uint64_t>(detail::lcm_ll(a.ram_.modulus(), b.ram_.modulus()));
        return a.ram_.lifted(n) == b.ram_.lifted(n);
    }

    std::string str() const { return "theta_" + std::to_string(p_) + "(" + ram_.str() + ", t=" + t_.str() + ")"; }

private:
    std::uint64_t p_ = 2;
    DirichletCharacter ram_;
    CyclotomicValue t_ = CyclotomicValue(1);
};

// Character of (K tensor Q_p)^x.  Split: a pair (lambda1, lambda2) evaluated
// as lambda1(rho z) lambda2(rho conj z).  Inert: a table on (O/p^m)^x given by
// generator images together with the value at p.
class QuadCharacter {
public:
    QuadCharacter() = default;

    static QuadCharacter split(const QuadraticLocalAlgebra& A, LocalCharacter l1, LocalCharacter l2) {
        if (A.kind() != LocalKind::Split) throw InvalidParameter("algebra not split");
        QuadCharacter c;
        c.A_ = A;
        c.l1_ = std::move(l1);
        c.l2_ = std::move(l2);
        return c;
    }

    // Inert case: images z_i -> exp(2 pi i turn_i) for residues z_i = (a_i, b_i)
    // (meaning a + b*omega) generating (O/p^m)^x; `t` is the value at p.
    static QuadCharacter inert(const QuadraticLocalAlgebra& A, int m, const std::vector<std::pair<std::pair<long, long>, Rational>>& imgs, CyclotomicValue t) {
        if (A.kind() != LocalKind::Inert) throw InvalidParameter("algebra not inert");
        QuadCharacter c;
        c.A_ = A;
        c.m_ = m;
        c.t_ = std::move(t);
        std::uint64_t q = detail::ppow_checked(A.prime(), m);
        c.q_ = q;
        long long L = 1;
        for (auto& [g, tt] : imgs) L = detail::lcm_ll(L, Rational(tt).get_den().get_si());
        c.L_ = static_cast<int>(L);
        c.table_.assign(q * q, -1);
        if (m == 0) {
            c.table_.assign(1, 0);
            return c;
        }
        c.table_[c.idx(1, 0)] = 0;
        std::vector<std::pair<std::uint64_t, std::uint64_t>> frontier{{1, 0}};
        std::uint64_t reached = 1;
        while (!frontier.empty()) {
            std::vector<std::pair<std::uint64_t, std::uint64_t>> next;
            for (auto [x, y] : frontier)
                for (auto& [g, tt] : imgs) {
                    Rational fr = tt;
                    fr.canonicalize();
                    long long e = mod_floor(Rational(fr * static_cast<long>(L)).get_num().get_si(), L);
                    auto [u, v] = c.mul_res(x, y, static_cast<std::uint64_t>(mod_floor(g.first, q)), static_cast<std::uint64_t>(mod_floor(g.second, q)));
                    long long val = mod_floor(c.table_[c.idx(x, y)] + e, L);
                    int& slot = c.table_[c.idx(u, v)];
                    if (slot < 0) {
                        slot = static_cast<int>(val);
                        next.push_back({u, v});
                        ++reached;
                    } else if (slot != val) {
                        throw InvalidParameter("inconsistent unit-group images");
                    }
                }
            frontier.swap(next);
        }
        std::uint64_t p = A.prime();
        if (reached != (q * q / (p * p)) * (p * p - 1)) throw InvalidParameter("images do not generate (O/p^m)^x");
        return c;
    }

    static QuadCharacter trivial(const QuadraticLocalAlgebra& A) {
        if (A.kind() == LocalKind::Split) return split(A, LocalCharacter::trivial(A.prime()), LocalCharacter::trivial(A.prime()));
        return inert(A, 0, {}, CyclotomicValue(1));
    }

    const QuadraticLocalAlgebra& algebra() const { return *A_; }
    bool is_split() const { return A_->kind() == LocalKind::Split; }
    const LocalCharacter& lambda1() const { return l1_; }
    const LocalCharacter& lambda2() const { return l2_; }
    int level_m() const { return m_; }
    int root_level() const { return L_; }

    // Exponent of zeta_L on a unit residue (x + y omega) mod p^m (inert case).
    int unit_exponent(std::uint64_t x, std::uint64_t y) const {
        if (m_ == 0) return 0;
        int e = table_[idx(x % q_, y % q_)];
        if (e < 0) throw InvalidParameter("not a unit residue");
        return e;
    }

    CyclotomicValue operator()(const QuadElem& z) const {
        if (z.is_zero()) throw InvalidParameter("character at 0");
        if (is_split()) {
            const auto& A = *A_;
            Rational n = z.norm();
            int M = std::max(8, std::abs(val_p(n, A.prime())) + 8);
            auto [v1, v2] = A.split_valuations(z, M);
            (void)v2;
            PadicScalar r1 = A.rho(z, M), r2 = A.rho(z, M, true);
            return eval_padic(l1_, r1) * eval_padic(l2_, r2);
        }
        std::uint64_t p = A_->prime();
        Rational v = A_->valuation(z);
        long k = v.get_num().get_si();
        QuadElem u = qpow(Rational(static_cast<long>(p)), -k) * z;
        CyclotomicValue unit_val(1);
        if (m_ > 0) {
            Integer qq(static_cast<unsigned long>(q_));
            auto red = [&](const Rational& x) {
                Integer inv;
                mpz_invert(inv.get_mpz_t(), x.get_den_mpz_t(), qq.get_mpz_t());
                Integer r = x.get_num() * inv % qq;
                if (r < 0) r += qq;
                return r.get_ui();
            };
            unit_val = CyclotomicValue::root_of_unity(L_, unit_exponent(red(u.a()), red(u.b())));
        }
        return unit_val * t_.pow(k);
    }

    // Restriction to Z_p^x as a function of the residue mod p^m.
    CyclotomicValue on_rational_unit(long long u) const {
        if (is_split()) return l1_.on_unit_residue(static_cast<std::uint64_t>(mod_floor(u, static_cast<long long>(l1_.ramified_part().modulus())))) *
                               l2_.on_unit_residue(static_cast<std::uint64_t>(mod_floor(u, static_cast<long long>(l2_.ramified_part().modulus()))));
        if (m_ == 0) return CyclotomicValue(1);
        return CyclotomicValue::root_of_unity(L_, unit_exponent(static_cast<std::uint64_t>(mod_floor(u, static_cast<long long>(q_))), 0));
    }

    QuadCharacter inverse() const {
        QuadCharacter c = *this;
        if (is_split()) {
            c.l1_ = l1_.inverse();
            c.l2_ = l2_.inverse();
            return c;
        }
        for (auto& v : c.table_)
            if (v > 0) v = L_ - v;
        c.t_ = t_.inv();
        return c;
    }

private:
    static CyclotomicValue eval_padic(const LocalCharacter& chi, const PadicScalar& x) {
        if (x.is_zero()) throw PrecisionExhausted("character at an indistinguishable-from-zero point");
        int v = x.val();
        std::uint64_t n = chi.ramified_part().modulus();
        return chi.on_unit_residue(x.unit() % n) * chi.t().pow(v);
    }
    std::size_t idx(std::uint64_t x, std::uint64_t y) const { return static_cast<std::size_t>(x * q_ + y); }
    std::pair<std::uint64_t, std::uint64_t> mul_res(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) const {
        // (a + b w)(c + d w), w^2 = w + (d0-1)/4 or d0
        long d0 = A_->d();
        std::int64_t q = static_cast<std::int64_t>(q_);
        if (mod_floor(d0, 4) == 1) {
            std::int64_t k = (d0 - 1) / 4;
            std::int64_t bd = mod_floor(static_cast<std::int64_t>(b * d % q_), q);
            std::int64_t x = mod_floor(static_cast<std::int64_t>(a * c % q_) + mod_floor(bd * k, q), q);
            std::int64_t y = mod_floor(static_cast<std::int64_t>((a * d + b * c) % q_) + bd, q);
            return {static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y)};
        }
        std::int64_t bd = static_cast<std::int64_t>(b * d % q_);
        std::int64_t x = mod_floor(static_cast<std::int64_t>(a * c % q_) + mod_floor(bd * d0, q), q);
        std::int64_t y = static_cast<std::int64_t>((a * d + b * c) % q_);
        return {static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y)};
    }

    std::optional<QuadraticLocalAlgebra> A_;
    LocalCharacter l1_, l2_;
    int m_ = 0;
    std::uint64_t q_ = 1;
    int L_ = 1;
    std::vector<int> table_{0};
    CyclotomicValue t_ = CyclotomicValue(1);
};

// Hecke character of K given by its local components at finitely many
// primes and its infinity type (r/2, -r/2).
struct HeckeCharacterData {
    long d = -1;  // K = Q(sqrt d)
    int r = 0;
    std::map<std::uint64_t, QuadCharacter> local;

    // Check that the restriction to Z_v^x agrees with the declared characters.
    void check_central(const std::map<std::uint64_t, DirichletCharacter>& central) const {
        for (auto& [v, ch] : central) {
            auto it = local.find(v);
            if (it == local.end()) continue;
            std::uint64_t n = ch.modulus();
            for (std::uint64_t u = 1; u < std::max<std::uint64_t>(n, 2) * v; ++u) {
                if (u % v == 0) continue;
                if (it->second.on_rational_unit(static_cast<long long>(u)) != ch(static_cast<long long>(u)))
                    throw InvalidParameter("central restriction mismatch at " + std::to_string(v));
            }
        }
    }
    void check_lambda_range(int l1, int l2) const {
        if (r < -l1 + l2 || r > l1 - l2) throw InvalidParameter("infinity type outside [-l1+l2, l1-l2]");
    }
};

// p-ordinary local data of Pi and pi together with the weights.
struct OrdinaryParams {
    LocalCharacter etaPi[3];
    LocalCharacter etapi[2];
    int l1 = 4, l2 = 4, l = 4;
    int eps = 0;

    static void check_weights(int l1, int l2, int l, int eps) {
        if (!(l1 >= l2 && l2 >= 3 && l >= 2)) throw InvalidParameter("weights must satisfy l1 >= l2 >= 3, l >= 2");
        if (std::min(-l1 + l2 + l, l1 + l2 - l) < 3) throw InvalidParameter("min(-l1+l2+l, l1+l2-l) must be >= 3");
        if (eps != ((l1 + l2 + l) % 2 + 2) % 2) throw InvalidParameter("eps must be the parity of l1+l2+l");
    }

    // Validating constructor: the ordinarity valuations must hold exactly.
    static OrdinaryParams make(const LocalCharacter (&ePi)[3], const LocalCharacter (&epi)[2], int l1, int l2, int l, int eps) {
        check_weights(l1, l2, l, eps);
        OrdinaryParams o;
        for (int i = 0; i < 3; ++i) o.etaPi[i] = ePi[i];
        for (int i = 0; i < 2; ++i) o.etapi[i] = epi[i];
        o.l1 = l1;
        o.l2 = l2;
        o.l = l;
        o.eps = eps;
        std::uint64_t p = ePi[0].prime();
        for (auto& e : o.etaPi)
            if (e.prime() != p) throw LevelMismatch("characters at different primes");
        for (auto& e : o.etapi)
            if (e.prime() != p) throw LevelMismatch("characters at different primes");
        auto v = [&](const CyclotomicValue& x) { return x.valuation(p); };
        if (v(ePi[0].t() / ePi[2].t()) != Rational(-l1 + 1)) throw InvalidParameter("val_p(eta_Pi1/eta_Pi3 (p)) != -l1+1");
        if (v(ePi[1].t() / ePi[2].t()) != Rational(-l2 + 2)) throw InvalidParameter("val_p(eta_Pi2/eta_Pi3 (p)) != -l2+2");
        if (v(epi[1].t() / epi[0].t()) != Rational(-l + 1)) throw InvalidParameter("val_p(eta_pi1^-1 eta_pi2 (p)) != -l+1");
        return o;
    }

    std::uint64_t prime() const { return etaPi[0].prime(); }
};

struct KRange {
    int kmin, kmax;
};

// {k : -m/2 + 2 <= k + eps/2 <= m/2 - 1}, m = min(-l1+l2+l, l1+l2-l).
inline KRange critical_range(int l1, int l2, int l, int eps) {
    int m = std::min(-l1 + l2 + l, l1 + l2 - l);
    if (m < 3) throw EmptyRange("min(-l1+l2+l, l1+l2-l) = " + std::to_string(m) + " < 3");
    // -m + 4 <= 2k + eps <= m - 2
    auto ceil_div2 = [](int x) { return x >= 0 ? (x + 1) / 2 : -((-x) / 2); };
    auto floor_div2 = [](int x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); };
    KRange r{ceil_div2(-m + 4 - eps), floor_div2(m - 2 - eps)};
    if (r.kmin > r.kmax) throw EmptyRange("no critical k");
    return r;
}
inline KRange critical_range(const OrdinaryParams& o) { return critical_range(o.l1, o.l2, o.l, o.eps); }

inline bool in_critical_range(int k, const OrdinaryParams& o) {
    auto r = critical_range(o);
    return k >= r.kmin && k <= r.kmax;
}

// t_k = 2k+eps+2 when k + eps/2 >= 1/2, else -2k-eps+4.
inline int t_weight(int k, int eps) { return 2 * k + eps >= 1 ? 2 * k + eps + 2 : -2 * k - eps + 4; }

}  // namespace padicl
