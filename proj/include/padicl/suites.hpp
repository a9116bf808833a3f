#pragma once

// Invariant suites behind `padicl verify`.  Each row records what it checks
// and the exact values involved; a failing check is a row, never an exception.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "arch_oracles.hpp"
#include "eisenstein.hpp"
#include "gamma_euler.hpp"
#include "local_models.hpp"
#include "measures.hpp"
#include "schwartz.hpp"

namespace padicl::suites {

struct Row {
    std::string suite;
    std::string name;
    std::string checks;  // module and identity
    bool pass = false;
    std::string detail;
};

struct Options {
    bool corrupt = false;  // kummer: perturb one coefficient
};

namespace detail {

inline Row run(const std::string& suite, const std::string& name, const std::string& checks, const std::function<std::pair<bool, std::string>()>& f) {
    Row r{suite, name, checks, false, ""};
    try {
        std::tie(r.pass, r.detail) = f();
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("raised ") + e.what();
    }
    return r;
}

inline std::pair<bool, std::string> eq(const CyclotomicValue& a, const CyclotomicValue& b) { return {a == b, a.str() + " vs " + b.str()}; }

inline CyclotomicValue dft(const Schwartz1& f, const Rational& y, int N) {
    std::uint64_t p = f.prime();
    long n = static_cast<long>(upow(p, N));
    CyclotomicValue acc(0);
    for (long x = 0; x < n; ++x) acc = acc + f(Rational(x)) * psi_p(Rational(x) * y, p);
    return acc * CyclotomicValue(make_q(1, n));
}

}  // namespace detail

inline std::vector<Row> gamma_suite(const std::vector<std::uint64_t>& primes = {3, 5}) {
    std::vector<Row> rows;
    for (auto p : primes) {
        for (auto& chi : DirichletCharacter::all(p * p)) {
            if (chi.conductor() == 1) continue;
            LocalCharacter th(p, chi, CyclotomicValue(2));
            for (int s2 : {0, 1, 2}) {
                HalfInt s{s2};
                rows.push_back(detail::run("gamma", "FE p=" + std::to_string(p) + " " + chi.str() + " s=" + s.str(),
                                           "gamma-euler: gamma(s,chi) gamma(1-s,chi^-1) = chi(-1)", [&] {
                                               return detail::eq(gamma_gl1(th, s) * gamma_gl1(th.inverse(), HalfInt{2} - s), CyclotomicValue(chi.parity()));
                                           }));
            }
        }
        for (auto t : {CyclotomicValue(2), CyclotomicValue(make_q(1, 3)), CyclotomicValue::root_of_unity(4, 1)}) {
            auto th = LocalCharacter::unramified(p, t);
            rows.push_back(detail::run("gamma", "FE p=" + std::to_string(p) + " unramified t=" + t.str(),
                                       "gamma-euler: gamma(s,chi) gamma(1-s,chi^-1) = 1 as rational functions", [&] {
                                           auto prod = gamma_gl1_rational(th) * gamma_gl1_rational(th.inverse()).reflect();
                                           return std::pair{prod == RationalInQ::one(p), prod.str()};
                                       }));
        }
    }
    for (std::uint64_t n = 3; n <= 25; ++n) {
        auto f = padicl::detail::factor_modulus(n);
        if (f.size() != 1) continue;
        for (auto& chi : DirichletCharacter::all(n)) {
            if (!chi.is_primitive()) continue;
            rows.push_back(detail::run("gamma", "Gauss norm " + chi.str(), "gamma-euler: g(chi) g(conj chi) = chi(-1) p^m", [&] {
                return detail::eq(gauss_sum(chi) * gauss_sum(chi.inverse()), CyclotomicValue(static_cast<long>(chi.parity() * static_cast<long>(n))));
            }));
        }
    }
    return rows;
}

inline std::vector<Row> schwartz_suite() {
    std::vector<Row> rows;
    const std::uint64_t p = 3;
    std::vector<std::pair<std::string, Schwartz1>> zoo{{"1_{Z_3}", Schwartz1::coset(p, 0)},
                                                       {"1_{1/2 + 9Z_3}", Schwartz1::coset(p, 2, make_q(1, 2))},
                                                       {"psi(2x/3) 1_{1/3 + 3^-1 Z_3}", Schwartz1::coset(p, -1, make_q(1, 3)).twisted(make_q(2, 3))}};
    for (auto& chi : DirichletCharacter::all(9)) {
        zoo.push_back({"shell0 " + chi.str(), Schwartz1::shell(p, chi, 0)});
        zoo.push_back({"shell1 " + chi.str(), Schwartz1::shell(p, chi, 1).twisted(make_q(1, 3))});
    }
    std::vector<Rational> probes{Rational(0)};
    for (int v = -3; v <= 3; ++v)
        for (long u = 1; u < 9; ++u)
            if (u % 3) probes.push_back(Rational(u) * qpow(Rational(3), v));
    for (auto& [name, f] : zoo)
        rows.push_back(detail::run("schwartz", "FF = reflection " + name, "schwartz: fourier(fourier(f)) = f(-x)", [&] {
            return std::pair{equal_as_functions(f.fourier().fourier(), f.reflected()), f.str()};
        }));
    for (std::uint64_t n : {3u, 9u})
        for (auto& chi : DirichletCharacter::all(n)) {
            if (!chi.is_primitive()) continue;
            int m = n == 3 ? 1 : 2;
            rows.push_back(detail::run("schwartz", "DFT chi-circ " + chi.str(), "schwartz: F(chi-circ) = finite DFT on val in [-3,3]", [&] {
                Schwartz1 f = Schwartz1::character_circ(LocalCharacter::from_dirichlet(chi, p));
                Schwartz1 F = f.fourier();
                for (auto& y : probes) {
                    int N = std::max(2 * m, y == 0 ? 0 : -val_p(y, p));
                    if (F(y) != detail::dft(f, y, N)) return std::pair{false, "mismatch at y = " + y.get_str()};
                }
                return std::pair{true, std::to_string(probes.size()) + " points"};
            }));
        }
    return rows;
}

namespace detail {

inline LocalCharacter quartic5(CyclotomicValue t = CyclotomicValue(1)) {
    return LocalCharacter::from_dirichlet(DirichletCharacter::from_standard_exponents(5, {1}), 5, std::move(t));
}
inline LocalCharacter legendre3(CyclotomicValue t = CyclotomicValue(1)) {
    return LocalCharacter::from_dirichlet(DirichletCharacter::quadratic_legendre(3), 3, std::move(t));
}
inline QuadCharacter octic3(const QuadraticLocalAlgebra& A, CyclotomicValue t = CyclotomicValue(1)) {
    return QuadCharacter::inert(A, 1, {{{1, 1}, make_q(1, 8)}}, std::move(t));
}

}  // namespace detail

inline std::vector<Row> bessel_suite() {
    std::vector<Row> rows;
    {
        const std::uint64_t p = 5;
        std::vector<std::tuple<std::string, LocalCharacter, LocalCharacter, LocalCharacter>> configs{
            {"unramified", LocalCharacter::unramified(p, CyclotomicValue(2)), LocalCharacter::unramified(p, CyclotomicValue(make_q(1, 3))),
             LocalCharacter::trivial(p)},
            {"ramified eta1", detail::quartic5(CyclotomicValue(2)), LocalCharacter::unramified(p, CyclotomicValue(3)), LocalCharacter::trivial(p)},
            {"ramified Lambda", detail::quartic5(CyclotomicValue::root_of_unity(4, 1)), detail::quartic5().inverse(),
             detail::quartic5(CyclotomicValue(make_q(1, 2))).inverse()},
            {"vanishing", LocalCharacter::trivial(p).times_abs_half_power(1), LocalCharacter::trivial(p).times_abs_half_power(-1), LocalCharacter::trivial(p)},
        };
        for (auto& [name, e1, e2, L] : configs) {
            BesselSetup S = BesselSetup::make(p, 1, 0, 1, e1, e2);
            CyclotomicValue v63;
            rows.push_back(detail::run("bessel", "split p=5 " + name + " (8,4)=(6,3)", "local-models: normalized split Bessel stabilizes", [&] {
                v63 = bessel_split_normalized(6, 3, S, L);
                return detail::eq(bessel_split_normalized(8, 4, S, L), v63);
            }));
            rows.push_back(detail::run("bessel", "split p=5 " + name + " (10,5)=(6,3)", "local-models: normalized split Bessel stabilizes",
                                       [&] { return detail::eq(bessel_split_normalized(10, 5, S, L), v63); }));
            rows.push_back(detail::run("bessel", "split p=5 " + name + " closed form", "local-models: limit = closed form x measure-convention factor", [&] {
                CyclotomicValue f = bessel_split_convention_factor(S, L);
                auto r = detail::eq(v63, bessel_split_closed_form(S, L) * f);
                r.second += " (convention factor " + f.str() + ")";
                return r;
            }));
        }
    }
    {
        const std::uint64_t p = 3;
        QuadraticLocalAlgebra A(p, -1);
        std::vector<std::tuple<std::string, LocalCharacter, LocalCharacter, QuadCharacter>> configs{
            {"trivial", LocalCharacter::trivial(p), LocalCharacter::trivial(p), QuadCharacter::trivial(A)},
            {"ramified", detail::legendre3(CyclotomicValue(2)), LocalCharacter::unramified(p, CyclotomicValue(make_q(1, 5))),
             detail::octic3(A, CyclotomicValue(make_q(2, 5)))},
            {"incompatible", LocalCharacter::trivial(p), LocalCharacter::trivial(p), detail::octic3(A)},
        };
        for (auto& [name, e1, e2, L] : configs) {
            BesselSetup S = BesselSetup::make(p, 1, 0, 1, e1, e2);
            rows.push_back(detail::run("bessel", "nonsplit p=3 " + name + " (8,4)=(6,3)", "local-models: normalized nonsplit Bessel stabilizes", [&] {
                return detail::eq(bessel_nonsplit_normalized(8, 4, S, L), bessel_nonsplit_normalized(6, 3, S, L));
            }));
            rows.push_back(detail::run("bessel", "nonsplit p=3 " + name + " limit", "local-models: nonsplit value = closed limit",
                                       [&] { return detail::eq(bessel_nonsplit_normalized(6, 3, S, L), bessel_nonsplit_limit(S, L)); }));
        }
    }
    return rows;
}

inline std::vector<Row> ip1_suite() {
    std::vector<Row> rows;
    const std::uint64_t p = 3;
    QuadraticLocalAlgebra A(p, -1);
    QuadElem i(-1, Rational(0), Rational(1));
    rows.push_back(detail::run("local", "zvol(3,1,1)", "local-models: zvol_constant = 3/5120",
                               [&] { return std::pair{zvol_constant(3, 1, Rational(1)) == make_q(3, 5120), zvol_constant(3, 1, Rational(1)).get_str()}; }));
    for (std::uint64_t n : {3u, 9u})
        for (auto& chi9 : DirichletCharacter::all(n)) {
            LocalCharacter chi = LocalCharacter::from_dirichlet(chi9, p, CyclotomicValue(2));
            EulerEtas eta = EulerEtas::trivial(p);
            eta.etapi[1] = detail::legendre3(CyclotomicValue(3));
            for (auto& [lname, L] : {std::pair{std::string("trivial"), QuadCharacter::trivial(A)}, std::pair{std::string("octic"), detail::octic3(A)}})
                rows.push_back(detail::run("local", "I_p1 chi=" + chi9.str() + " Lambda=" + lname, "local-models: I_p1 = 1 by shell summation", [&] {
                    auto c = Ip_components(eta, chi, L, i, Rational(2), HalfInt{0});
                    return std::pair{c.Ip1 == CyclotomicValue(1) && c.Ip1_oracle == CyclotomicValue(1), c.Ip1.str() + " / oracle " + c.Ip1_oracle.str()};
                }));
        }
    return rows;
}

inline std::vector<Row> arch_suite() {
    std::vector<Row> rows;
    for (auto [s2, t] : {std::pair{1, 4}, std::pair{2, 4}, std::pair{3, 6}}) {
        std::string at = "(s,t)=(" + HalfInt{s2}.str() + "," + std::to_string(t) + ")";
        rows.push_back(detail::run("arch", "C_t quadrature " + at, "gamma-euler: arch_Ct vs numeric quadrature, rel. tol 1e-6", [&] {
            long double exact = arch_Ct(HalfInt{s2}, t).to_complex().real();
            long double quad = oracle::ct_quadrature(s2 / 2.0L, t);
            long double rel = std::abs(quad - exact) / exact;
            return std::pair{rel < 1e-6L, "rel. error " + std::to_string(static_cast<double>(rel))};
        }));
        rows.push_back(detail::run("arch", "lambda-a integral " + at, "gamma-euler: double integral vs Gamma form, rel. tol 1e-5", [&] {
            long double s = s2 / 2.0L;
            long double q = oracle::lambda_a_double_integral(s, t, 1.0L);
            long double closed = oracle::lambda_a_closed(s, t, 1.0L) * std::pow(2.0L, -2 * s - t);
            long double rel = std::abs(q - closed) / std::abs(closed);
            return std::pair{rel < 1e-5L, "rel. error " + std::to_string(static_cast<double>(rel))};
        }));
    }
    return rows;
}

inline std::vector<Row> measure_suite() {
    std::vector<Row> rows;
    const std::uint64_t p = 3;
    for (long N : {1L, 4L})
        for (int m = 1; m <= 2; ++m) {
            FiniteLevelMeasure mu{p, N, m, 6, {}};
            long seed = 7;
            for (auto a : padicl::detail::units_mod(mu.modulus())) {
                seed = (seed * 1103515245 + 12345) % 2147483648;
                mu.table[a] = CyclotomicValue(seed % 11 - 5);
            }
            std::string lvl = "N=" + std::to_string(N) + " m=" + std::to_string(m);
            auto chars = DirichletCharacter::all(mu.modulus());
            rows.push_back(detail::run("measure", "round trip " + lvl, "measures: measure_from_values inverts evaluation", [&] {
                CharacterValues v;
                for (auto& chi : chars) v.emplace_back(chi, evaluate_measure(mu, chi, 0));
                return std::pair{measure_from_values(p, N, m, v, 6) == mu, std::to_string(chars.size()) + " characters"};
            }));
            rows.push_back(detail::run("measure", "homomorphism " + lvl, "measures: evaluation of mu*mu is the square", [&] {
                auto sq = convolve(mu, mu);
                for (auto& chi : chars)
                    if (evaluate_measure(sq, chi, 0) != evaluate_measure(mu, chi, 0).pow(2)) return std::pair{false, chi.str()};
                return std::pair{true, std::to_string(chars.size()) + " characters"};
            }));
            rows.push_back(detail::run("measure", "pushforward " + lvl, "measures: pushforward preserves lower-level values", [&] {
                auto low = mu.pushforward();
                for (auto& chi : DirichletCharacter::all(low.modulus()))
                    if (evaluate_measure(low, chi, 0) != evaluate_measure(mu, chi, 0)) return std::pair{false, chi.str()};
                return std::pair{true, std::string()};
            }));
            rows.push_back(detail::run("measure", "delta_a * delta_b " + lvl, "measures: point masses multiply", [&] {
                std::uint64_t n = mu.modulus();
                auto units = padicl::detail::units_mod(n);
                for (auto a : units)
                    for (auto b : units) {
                        auto prod = convolve(FiniteLevelMeasure::point_mass(p, N, m, 6, a), FiniteLevelMeasure::point_mass(p, N, m, 6, b));
                        if (!(prod == FiniteLevelMeasure::point_mass(p, N, m, 6, a * b % n))) return std::pair{false, std::to_string(a) + "," + std::to_string(b)};
                    }
                return std::pair{true, std::to_string(units.size() * units.size()) + " pairs"};
            }));
        }
    return rows;
}

// Coefficient sums of the proxy family at p = 3 over Q(i); chi (.)^k ~ chi' (.)^k'
// when they agree mod 3^n on the generator 2, and the sums must then agree mod 3^n.
inline std::vector<Row> kummer_suite(const Options& opt = {}) {
    std::vector<Row> rows;
    const std::uint64_t p = 3;
    const int l = 12;
    auto pw = [&](int e) { return CyclotomicValue(qpow(Rational(3), e)); };
    LocalCharacter ePi[3] = {LocalCharacter(p, DirichletCharacter(), pw(-(l - 1))), LocalCharacter(p, DirichletCharacter(), pw(-(l - 2))),
                             LocalCharacter::trivial(p)};
    LocalCharacter epi[2] = {LocalCharacter::trivial(p), LocalCharacter(p, DirichletCharacter(), pw(-(l - 1)))};
    auto params = OrdinaryParams::make(ePi, epi, l, l, l, 0);
    auto S = SetupData::make(1, 0, 1, p, 1, trivial_hecke(-1, 0, {p}), trivial_hecke(-1, 0, {}), trivial_hecke(-1, 0, {}), params);
    CoeffOptions proxy;
    proxy.h = HPolicy::ProxyOne;
    auto Z = BetaLattice::integral(-1);
    auto kr = critical_range(params);
    const std::vector<std::pair<Sym2Index, Rational>> idx = {{{2, 0, 2}, 2}, {{2, 1, 3}, 2}, {{3, 1, 2}, 1}};
    for (int n : {1, 2}) {
        std::uint64_t mod = upow(3, n);
        struct Entry {
            DirichletCharacter chi;
            int k;
            std::vector<CyclotomicValue> vals;
        };
        std::vector<Entry> entries;
        for (auto& chi : DirichletCharacter::all(mod))
            for (int k = kr.kmin; k <= kr.kmax; ++k) {
                Entry e{chi, k, {}};
                for (auto& [b1, b2] : idx) e.vals.push_back(a_sum(b1, b2, chi, k, S, CoeffFamily::APrime, Z, proxy));
                entries.push_back(e);
            }
        if (opt.corrupt && n == 2) entries.front().vals.front() = entries.front().vals.front() + CyclotomicValue(1);
        for (std::size_t t = 0; t < idx.size(); ++t) {
            std::string name = "index " + idx[t].first.str() + "," + idx[t].second.get_str() + " mod 3^" + std::to_string(n);
            rows.push_back(detail::run("kummer", name, "eisenstein+measures: congruent characters give congruent a' sums", [&] {
                int pairs = 0;
                for (std::size_t i = 0; i < entries.size(); ++i)
                    for (std::size_t j = i + 1; j < entries.size(); ++j) {
                        CyclotomicValue gi = entries[i].chi(2) * CyclotomicValue(qpow(Rational(2), entries[i].k));
                        CyclotomicValue gj = entries[j].chi(2) * CyclotomicValue(qpow(Rational(2), entries[j].k));
                        if (!congruent_mod(gi, gj, p, n)) continue;
                        ++pairs;
                        if (!congruent_mod(entries[i].vals[t], entries[j].vals[t], p, n))
                            return std::pair{false, "(" + entries[i].chi.str() + ", " + std::to_string(entries[i].k) + ") vs (" + entries[j].chi.str() + ", " +
                                                        std::to_string(entries[j].k) + ")"};
                    }
                return std::pair{pairs > 0, std::to_string(pairs) + " congruent pairs"};
            }));
        }
    }
    return rows;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"gamma", "schwartz", "bessel", "local", "kummer", "measure", "arch"};
    return names;
}

// "local" runs the Bessel, gamma functional-equation and I_p1 suites together.
inline std::vector<Row> run_suite(const std::string& name, const Options& opt = {}) {
    if (name == "gamma") return gamma_suite();
    if (name == "schwartz") return schwartz_suite();
    if (name == "bessel") return bessel_suite();
    if (name == "arch") return arch_suite();
    if (name == "measure") return measure_suite();
    if (name == "kummer") return kummer_suite(opt);
    if (name == "local") {
        auto rows = bessel_suite();
        for (auto& r : gamma_suite()) rows.push_back(r);
        for (auto& r : ip1_suite()) rows.push_back(r);
        return rows;
    }
    throw InvalidParameter("unknown suite " + name);
}

}  // namespace padicl::suites
