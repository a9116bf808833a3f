#pragma once

// JSON records for exact values, characters, setups and measures.

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "eisenstein.hpp"
#include "gamma_euler.hpp"
#include "measures.hpp"

namespace padicl::io {

using json = nlohmann::ordered_json;

inline json rational_json(const Rational& r) { return r.get_str(); }

inline Rational rational_from(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw InvalidParameter("expected a rational, got " + j.dump());
}

// ---------------------------------------------------------------- cyclotomic values

// {"terms": [{"sqrt": r, "level": L, "coeffs": [c_0, ..., c_{phi(L)-1}]}]}:
// sum over terms of sqrt(r) * sum_k c_k zeta_L^k.
inline json to_json(const CyclotomicValue& v) {
    json terms = json::array();
    for (auto& [r, c] : v.terms()) {
        json cs = json::array();
        for (auto& a : c.coeffs()) cs.push_back(a.get_str());
        terms.push_back({{"sqrt", r}, {"level", c.level()}, {"coeffs", cs}});
    }
    return {{"terms", terms}, {"display", v.str()}};
}

// Also accepted: a rational, {"root_of_unity": [L, j]}, {"q_half_power": [p, e]}
// (meaning p^{e/2}), each optionally with "times": rational.
inline CyclotomicValue cyclotomic_from(const json& j) {
    if (j.is_number_integer() || j.is_string()) return CyclotomicValue(rational_from(j));
    if (!j.is_object()) throw InvalidParameter("expected a cyclotomic value, got " + j.dump());
    CyclotomicValue v(0);
    if (j.contains("terms")) {
        for (auto& t : j.at("terms")) {
            int L = t.at("level").get<int>();
            Cyc c = Cyc::zero_at(L);
            const auto& cs = t.at("coeffs");
            for (std::size_t k = 0; k < cs.size(); ++k) c = c + Cyc(rational_from(cs[k])) * Cyc::root_of_unity(L, static_cast<long long>(k));
            v = v + CyclotomicValue::sqrt_rational(Rational(t.at("sqrt").get<long>())) * CyclotomicValue(c);
        }
    } else if (j.contains("root_of_unity")) {
        v = CyclotomicValue::root_of_unity(j.at("root_of_unity")[0].get<int>(), j.at("root_of_unity")[1].get<long long>());
    } else if (j.contains("q_half_power")) {
        v = CyclotomicValue::q_half_power(j.at("q_half_power")[0].get<std::uint64_t>(), j.at("q_half_power")[1].get<long>());
    } else {
        throw InvalidParameter("unrecognized cyclotomic value " + j.dump());
    }
    if (j.contains("times")) v = v * CyclotomicValue(rational_from(j.at("times")));
    return v;
}

inline json to_json(const ArchValue& a, long double tolerance = 1e-12L) {
    auto z = a.to_complex();
    std::ostringstream re, im;
    re.precision(18);
    im.precision(18);
    re << z.real();
    im << z.imag();
    return {{"exact", a.str()}, {"re", re.str()}, {"im", im.str()}, {"tolerance", static_cast<double>(tolerance)}};
}

inline json to_json(const LaurentPoly& f) {
    json out = json::object();
    for (auto& [e, c] : f.coeffs()) out[std::to_string(e)] = to_json(c);
    return out;
}

// Rational function in X = q^{-s}: exponent -> coefficient maps.
inline json to_json(const RationalInQ& f) { return {{"q", f.q()}, {"variable", "X = q^-s"}, {"num", to_json(f.num())}, {"den", to_json(f.den())}, {"display", f.str()}}; }

// ---------------------------------------------------------------- characters

// Exponents k_i with chi(g_i) = zeta_{ord_i}^{k_i} on the fixed generators.
inline std::vector<std::uint64_t> standard_exponents(const DirichletCharacter& chi) {
    auto G = unit_group_generators(chi.modulus());
    std::vector<std::uint64_t> k;
    for (std::size_t i = 0; i < G.gens.size(); ++i) {
        int e = *chi.exponent(static_cast<long long>(G.gens[i]));
        k.push_back(static_cast<std::uint64_t>(e) * G.orders[i] / static_cast<std::uint64_t>(chi.level()));
    }
    return k;
}

inline json to_json(const DirichletCharacter& chi) { return {{"modulus", chi.modulus()}, {"exponents", standard_exponents(chi)}}; }

// "n:k1,k2", "n" (trivial mod n), "legendre:p", or the object form.
inline DirichletCharacter dirichlet_from_string(const std::string& s) {
    auto colon = s.find(':');
    if (s.rfind("legendre:", 0) == 0) return DirichletCharacter::quadratic_legendre(std::stoull(s.substr(9)));
    if (colon == std::string::npos) return DirichletCharacter::trivial(std::stoull(s));
    std::uint64_t n = std::stoull(s.substr(0, colon));
    std::vector<std::uint64_t> k;
    std::stringstream ss(s.substr(colon + 1));
    for (std::string part; std::getline(ss, part, ',');)
        if (!part.empty()) k.push_back(std::stoull(part));
    return DirichletCharacter::from_standard_exponents(n, k);
}

inline DirichletCharacter dirichlet_from(const json& j) {
    if (j.is_string()) return dirichlet_from_string(j.get<std::string>());
    if (j.is_number_integer()) return DirichletCharacter::trivial(j.get<std::uint64_t>());
    if (j.contains("legendre")) return DirichletCharacter::quadratic_legendre(j.at("legendre").get<std::uint64_t>());
    return DirichletCharacter::from_standard_exponents(j.at("modulus").get<std::uint64_t>(), j.value("exponents", std::vector<std::uint64_t>{}));
}

// "all:n" -> every character mod n; "primitive:n"; otherwise a ';'-separated list.
inline std::vector<DirichletCharacter> character_list_from_string(const std::string& s) {
    if (s.rfind("all:", 0) == 0) return DirichletCharacter::all(std::stoull(s.substr(4)));
    if (s.rfind("primitive:", 0) == 0) {
        std::vector<DirichletCharacter> out;
        for (auto& c : DirichletCharacter::all(std::stoull(s.substr(10))))
            if (c.is_primitive()) out.push_back(c);
        return out;
    }
    std::vector<DirichletCharacter> out;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, ';');)
        if (!part.empty()) out.push_back(dirichlet_from_string(part));
    return out;
}

inline std::vector<DirichletCharacter> character_list_from(const json& j) {
    if (j.is_string()) return character_list_from_string(j.get<std::string>());
    std::vector<DirichletCharacter> out;
    for (auto& x : j) out.push_back(dirichlet_from(x));
    return out;
}

inline json to_json(const LocalCharacter& th) { return {{"p", th.prime()}, {"ram", to_json(th.ramified_part())}, {"t", to_json(th.t())}}; }

inline LocalCharacter local_from(const json& j, std::uint64_t p) {
    if (j.is_string() && j.get<std::string>() == "trivial") return LocalCharacter::trivial(p);
    std::uint64_t q = j.value("p", p);
    DirichletCharacter ram = j.contains("ram") ? dirichlet_from(j.at("ram")) : DirichletCharacter();
    CyclotomicValue t = j.contains("t") ? cyclotomic_from(j.at("t")) : CyclotomicValue(1);
    if (ram.modulus() > 1) return LocalCharacter::from_dirichlet(ram, q, t);
    return LocalCharacter(q, ram, t);
}

// "trivial" | {"kind": "split", "l1": local, "l2": local}
//           | {"kind": "inert", "m": m, "images": [[a, b, turn], ...], "t": value}
inline QuadCharacter quad_from(const json& j, const QuadraticLocalAlgebra& A) {
    if (j.is_string() && j.get<std::string>() == "trivial") return QuadCharacter::trivial(A);
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "split") return QuadCharacter::split(A, local_from(j.at("l1"), A.prime()), local_from(j.at("l2"), A.prime()));
    if (kind == "inert") {
        std::vector<std::pair<std::pair<long, long>, Rational>> imgs;
        for (auto& g : j.at("images")) imgs.push_back({{g[0].get<long>(), g[1].get<long>()}, rational_from(g[2])});
        return QuadCharacter::inert(A, j.at("m").get<int>(), imgs, j.contains("t") ? cyclotomic_from(j.at("t")) : CyclotomicValue(1));
    }
    throw InvalidParameter("unknown quadratic character kind " + kind);
}

// ---------------------------------------------------------------- measures

inline json to_json(const FiniteLevelMeasure& mu) {
    json table = json::object();
    for (auto& [a, v] : mu.table) table[std::to_string(a)] = to_json(v);
    return {{"p", mu.p}, {"N", mu.N}, {"level", mu.m}, {"modulus", mu.modulus()}, {"precision", mu.M}, {"table", table}};
}

inline FiniteLevelMeasure measure_from(const json& j) {
    FiniteLevelMeasure mu{j.at("p").get<std::uint64_t>(), j.value("N", 1L), j.at("level").get<int>(), j.value("precision", 6), {}};
    if (j.contains("modulus") && j.at("modulus").get<std::uint64_t>() != mu.modulus()) throw LevelMismatch("modulus does not equal N p^level");
    for (auto a : detail::units_mod(mu.modulus())) mu.table[a] = CyclotomicValue(0);
    for (auto& [k, v] : j.at("table").items()) {
        std::uint64_t a = std::stoull(k);
        if (!mu.table.count(a)) throw InvalidParameter("residue " + k + " is not a unit mod " + std::to_string(mu.modulus()));
        mu.table[a] = cyclotomic_from(v);
    }
    return mu;
}

// Character values {"p", "N", "level", "values": [{"chi": ..., "value": ...}]}.
inline json to_json(const CharacterValues& vals) {
    json arr = json::array();
    for (auto& [chi, v] : vals) arr.push_back({{"chi", to_json(chi)}, {"value", to_json(v)}});
    return arr;
}

inline CharacterValues character_values_from(const json& arr) {
    CharacterValues out;
    for (auto& e : arr) out.emplace_back(dirichlet_from(e.at("chi")), cyclotomic_from(e.at("value")));
    return out;
}

// ---------------------------------------------------------------- setup files

struct SetupFile {
    SetupData data;
    Rational c_whittaker = 1;
    Rational alpha_diff_sq = 0;  // |alpha - conj alpha|^2
    std::vector<SatakeData> satake;
    std::uint64_t euler_bound = 0;
    BetaLattice lattice;
    CoeffOptions options;
    Rational trace_bound = 40;
};

inline long field_discriminant_d(long a, long b, long c) {
    long D = b * b - 4 * a * c;
    if (D >= 0) throw InvalidParameter("S must be positive definite");
    std::uint64_t s, f;
    squarefree_split(static_cast<std::uint64_t>(-D), s, f);
    return -static_cast<long>(s);
}

inline HeckeCharacterData hecke_from(const json& j, long d, const std::vector<std::uint64_t>& default_places) {
    if (j.is_null()) return trivial_hecke(d, 0, default_places);
    int r = j.value("r", 0);
    std::vector<std::uint64_t> places = default_places;
    HeckeCharacterData H = trivial_hecke(d, r, j.contains("local") ? std::vector<std::uint64_t>{} : places);
    if (j.contains("local"))
        for (auto& [v, qc] : j.at("local").items()) {
            std::uint64_t place = std::stoull(v);
            H.local[place] = quad_from(qc, QuadraticLocalAlgebra(place, d));
        }
    return H;
}

inline OrdinaryParams ordinary_from(const json& j, std::uint64_t p) {
    auto w = j.at("weights");
    int l1 = w[0].get<int>(), l2 = w[1].get<int>(), l = w[2].get<int>();
    LocalCharacter ePi[3], epi[2];
    for (int i = 0; i < 3; ++i) ePi[i] = local_from(j.at("eta_Pi")[i], p);
    for (int i = 0; i < 2; ++i) epi[i] = local_from(j.at("eta_pi")[i], p);
    return OrdinaryParams::make(ePi, epi, l1, l2, l, ((l1 + l2 + l) % 2 + 2) % 2);
}

inline SetupFile setup_from(const json& j) {
    std::uint64_t p = j.at("p").get<std::uint64_t>();
    auto sj = j.at("S");
    long a = sj[0].get<long>(), b = sj[1].get<long>(), c = sj[2].get<long>();
    long N = j.value("N", 1L);
    long d = field_discriminant_d(a, b, c);
    OrdinaryParams o = ordinary_from(j, p);
    HeckeCharacterData Lam = hecke_from(j.value("Lambda", json()), d, {p});
    HeckeCharacterData Ups = hecke_from(j.value("Upsilon", json()), d, {});
    HeckeCharacterData Xi = hecke_from(j.value("Xi", json()), d, {});
    SetupFile f{SetupData::make(a, b, c, p, N, Lam, Ups, Xi, o)};
    f.c_whittaker = j.contains("c") ? rational_from(j.at("c")) : Rational(1);
    f.alpha_diff_sq = make_q(4 * a * c - b * b, c * c);
    if (j.contains("satake"))
        for (auto& s : j.at("satake")) {
            SatakeData sd;
            sd.q = s.at("q").get<std::uint64_t>();
            for (int i = 0; i < 4; ++i) sd.a[i] = cyclotomic_from(s.at("a")[i]);
            for (int i = 0; i < 2; ++i) sd.b[i] = cyclotomic_from(s.at("b")[i]);
            sd.validate();
            f.satake.push_back(sd);
        }
    f.euler_bound = j.value("euler_bound", std::uint64_t{0});
    std::string lat = j.value("lattice", std::string("integral"));
    if (lat == "integral") f.lattice = BetaLattice::integral(d);
    else if (lat == "inverse_different") f.lattice = BetaLattice::inverse_different(d);
    else throw InvalidParameter("lattice must be integral or inverse_different");
    std::string h = j.value("h_policy", std::string("strict"));
    if (h == "proxy-one") f.options.h = HPolicy::ProxyOne;
    else if (h != "strict") throw InvalidParameter("h_policy must be strict or proxy-one");
    if (j.contains("trace_bound")) f.trace_bound = rational_from(j.at("trace_bound"));
    return f;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidParameter(path + ": " + e.what());
    }
}

// An inline JSON literal when the argument starts with '{' or '[', else a file path.
inline json json_arg(const std::string& s) {
    if (!s.empty() && (s[0] == '{' || s[0] == '[')) return json::parse(s);
    return read_json_file(s);
}

}  // namespace padicl::io
