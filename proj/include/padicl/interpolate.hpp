#pragma once

// Assembly of the interpolation formula's right-hand side: an unevaluated
// monomial in period symbols times exact local factors.

#include <string>
#include <vector>

#include "gamma_euler.hpp"
#include "io.hpp"

namespace padicl {

struct FormalPeriodSymbol {
    std::string name;
    int exponent = 1;
};

inline std::vector<FormalPeriodSymbol> period_monomial() {
    return {{"B_dagger(S,Lambda,phi)", 1}, {"W_c(f)", 1}, {"P(phi,phi)", -1}, {"P(f,f)", -1}};
}

inline std::string monomial_str(const std::vector<FormalPeriodSymbol>& m) {
    std::string s;
    for (auto& f : m) {
        if (!s.empty()) s += " * ";
        s += f.name;
        if (f.exponent != 1) s += "^" + std::to_string(f.exponent);
    }
    return s;
}

// chi_p on Z_p^x is chi through its p-component; with the same convention at
// every place, the product formula forces chi_p(p) = chi'(p)^{-1} for the
// prime-to-p part chi', and chi_q(q) = chi(q)^{-1} at q prime to the modulus.
inline CyclotomicValue chi_p_at_p(const DirichletCharacter& chi, std::uint64_t p) {
    std::uint64_t n = chi.modulus(), pe = 1, rest = n;
    while (rest % p == 0) {
        rest /= p;
        pe *= p;
    }
    if (rest == 1) return CyclotomicValue(1);
    // x = p mod rest, x = 1 mod pe
    for (std::uint64_t x = 1; x < n; x += pe)
        if (x % rest == p % rest) return chi(static_cast<long long>(x)).inv();
    throw InvalidParameter("no CRT lift");
}

inline LocalCharacter chi_local_p(const DirichletCharacter& chi, std::uint64_t p) { return LocalCharacter::from_dirichlet(chi, p, chi_p_at_p(chi, p)); }

inline CyclotomicValue chi_unramified_at(const DirichletCharacter& chi, std::uint64_t q) {
    if (std::gcd(q, chi.modulus()) != 1) return CyclotomicValue(0);
    return chi(static_cast<long long>(q % chi.modulus())).inv();
}

struct InterpolationRow {
    DirichletCharacter chi;
    int k = 0;
    HalfInt s{0};
    std::vector<FormalPeriodSymbol> periods;
    CyclotomicValue Ep;
    bool scalar = false;
    ArchValue I_infty;  // meaningful when scalar
    std::string I_infty_symbol;  // the opaque symbol otherwise
    CyclotomicValue L_partial = CyclotomicValue(1);
    std::vector<std::uint64_t> euler_primes;
    std::uint64_t euler_bound = 0;
    std::vector<std::pair<std::string, std::string>> provenance;
};

inline InterpolationRow interpolate_row(const io::SetupFile& F, const DirichletCharacter& chi, int k, EinfShift shift = EinfShift::Proof) {
    const SetupData& S = F.data;
    const OrdinaryParams& o = S.params;
    if (!in_critical_range(k, o)) throw InvalidParameter("k = " + std::to_string(k) + " outside the critical range");
    std::uint64_t q = chi.modulus();
    while (q % S.p == 0) q /= S.p;
    if (static_cast<std::uint64_t>(S.N) % q != 0) throw LevelMismatch("chi must have level dividing N p^infty");

    InterpolationRow r;
    r.chi = chi;
    r.k = k;
    r.s = HalfInt{2 * k + o.eps};
    r.periods = period_monomial();
    r.Ep = euler_Ep(o, chi_local_p(chi, S.p), r.s);
    r.provenance.push_back({"E_p", "gamma-euler: euler_Ep(k + eps/2), modified Euler factor at p"});
    if (o.l1 == o.l2 && o.l2 == o.l) {
        r.scalar = true;
        r.I_infty = I_infty_scalar(k, o.eps, F.c_whittaker, F.alpha_diff_sq, o.l1, o.l2, o.l, shift);
        r.provenance.push_back({"I_infty", std::string("gamma-euler: I_infty_scalar = |c^2 (alpha - conj alpha)| 2^-6 i^eps E_inf, E_inf at ") +
                                               (shift == EinfShift::Proof ? "k + eps/2 + 1" : "k + eps/2")});
    } else {
        r.I_infty_symbol = "I_infty_general";
        r.periods.push_back({"I_infty_general", 1});
        r.provenance.push_back({"I_infty", "symbolic: general-weight archimedean integral, not evaluated"});
    }
    r.euler_bound = F.euler_bound;
    for (auto& sd : F.satake) {
        if (F.euler_bound && sd.q > F.euler_bound) continue;
        if (static_cast<std::uint64_t>(S.N) % sd.q == 0 || sd.q == S.p) continue;
        r.L_partial = r.L_partial * degree8_L_unramified(sd, chi_unramified_at(chi, sd.q)).at(r.s);
        r.euler_primes.push_back(sd.q);
    }
    r.provenance.push_back({"L^{Np infty}", "gamma-euler: truncated product of degree8_L_unramified over the supplied Satake data"});
    return r;
}

inline io::json to_json(const InterpolationRow& r) {
    io::json periods = io::json::array();
    for (auto& f : r.periods) periods.push_back({{"symbol", f.name}, {"exponent", f.exponent}});
    io::json prov = io::json::object();
    for (auto& [k, v] : r.provenance) prov[k] = v;
    io::json j = {{"chi", io::to_json(r.chi)}, {"k", r.k}, {"s", r.s.str()}, {"periods", periods}, {"period_monomial", monomial_str(r.periods)},
                  {"E_p", io::to_json(r.Ep)}};
    if (r.scalar) j["I_infty"] = io::to_json(r.I_infty);
    else j["I_infty"] = r.I_infty_symbol;
    j["L_partial"] = io::to_json(r.L_partial);
    j["euler_primes"] = r.euler_primes;
    j["euler_bound"] = r.euler_bound;
    j["provenance"] = prov;
    return j;
}

}  // namespace padicl
