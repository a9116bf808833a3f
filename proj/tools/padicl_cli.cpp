#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "padicl/interpolate.hpp"
#include "padicl/io.hpp"
#include "padicl/suites.hpp"

using namespace padicl;
using io::json;

namespace {

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

void emit_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i) std::cout << (i ? "," : "") << csv_cell(header[i]);
    std::cout << "\n";
    for (auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << csv_cell(r[i]);
        std::cout << "\n";
    }
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, ',');) {
        auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(std::stoi(part));
        } else {
            int a = std::stoi(part.substr(0, dots)), b = std::stoi(part.substr(dots + 2));
            for (int k = a; k <= b; ++k) out.push_back(k);
        }
    }
    return out;
}

Sym2Index parse_sym2(const std::string& s) {
    std::vector<Rational> v;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, ',');) v.push_back(parse_rational(part));
    if (v.size() != 3) throw InvalidParameter("beta1 needs three entries a,b,c");
    return {v[0], v[1], v[2]};
}

LocalCharacter local_arg(const std::string& s, std::uint64_t p) {
    if (s.empty() || s == "trivial") return LocalCharacter::trivial(p);
    return io::local_from(json::parse(s), p);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"padicl: exact local factors, Fourier coefficients and finite-level measures"};
    app.require_subcommand(1);
    int precision = default_precision();
    app.add_option("--precision", precision, "p-adic precision M (default from PADICL_PRECISION, else 12)");

    // gamma
    auto* gamma = app.add_subcommand("gamma", "Tate gamma factor and Gauss sum of a character of Q_p^x");
    std::string g_chi = "1", g_t = "1", g_s = "1/2";
    std::uint64_t g_p = 0;
    gamma->add_option("--chi", g_chi, "ramified part: n:k1,k2 | legendre:p | n");
    gamma->add_option("--t", g_t, "value at p (JSON cyclotomic value)");
    gamma->add_option("--p", g_p, "prime (default: the prime dividing the modulus)");
    gamma->add_option("--s", g_s, "half-integer s");

    // euler
    auto* euler = app.add_subcommand("euler", "E_p, E_inf and the truncated Euler product for a setup");
    std::string e_setup, e_chi = "1", e_shift = "proof";
    int e_k = 0;
    euler->add_option("--setup", e_setup, "setup file or inline JSON")->required();
    euler->add_option("--chi", e_chi, "Dirichlet character");
    euler->add_option("--k", e_k, "integer k")->required();
    euler->add_option("--einf-shift", e_shift, "proof | theorem");

    // schwartz
    auto* schw = app.add_subcommand("schwartz", "Build a primitive Schwartz function and its Fourier transform");
    std::uint64_t s_p = 3;
    std::string s_kind = "coset", s_chi = "1", s_a = "0", s_twist = "0", s_eval;
    int s_k = 0;
    schw->add_option("--p", s_p, "prime");
    schw->add_option("--kind", s_kind, "coset | shell | circ")->check(CLI::IsMember({"coset", "shell", "circ"}));
    schw->add_option("--k", s_k, "coset radius exponent or shell valuation");
    schw->add_option("--a", s_a, "coset center, or circ scale");
    schw->add_option("--chi", s_chi, "character for shell/circ");
    schw->add_option("--twist", s_twist, "multiply by psi(b x)");
    schw->add_option("--eval", s_eval, "comma-separated points for f and F");

    // local
    auto* local = app.add_subcommand("local", "Local zeta and Bessel values");
    local->require_subcommand(1);
    auto* zvol = local->add_subcommand("zvol", "zvol_constant(q, m, c)");
    std::uint64_t z_q = 3;
    int z_m = 1;
    std::string z_c = "1";
    zvol->add_option("--q", z_q);
    zvol->add_option("--m", z_m);
    zvol->add_option("--c", z_c);
    auto* bsplit = local->add_subcommand("bessel-split", "normalized split Bessel value");
    auto* bnon = local->add_subcommand("bessel-nonsplit", "normalized nonsplit Bessel value");
    std::uint64_t b_p = 5;
    int b_m1 = 6, b_m2 = 3;
    std::string b_e1, b_e2, b_lambda;
    for (auto* sc : {bsplit, bnon}) {
        sc->add_option("--p", b_p);
        sc->add_option("--m1", b_m1);
        sc->add_option("--m2", b_m2);
        sc->add_option("--eta1", b_e1, "local character JSON");
        sc->add_option("--eta2", b_e2, "local character JSON");
        sc->add_option("--lambda", b_lambda, "character of (K tensor Q_p)^x (split: local JSON; nonsplit: quadratic JSON)");
    }

    // fourier-coeffs
    auto* fc = app.add_subcommand("fourier-coeffs", "a(beta1, beta2; chi, k) tables");
    std::string f_setup, f_beta1, f_beta2 = "1", f_chars = "1", f_k, f_family = "aprime", f_format = "json";
    fc->add_option("--setup", f_setup)->required();
    fc->add_option("--beta1", f_beta1, "a,b,c")->required();
    fc->add_option("--beta2", f_beta2);
    fc->add_option("--chars", f_chars, "all:n | primitive:n | list separated by ';'");
    fc->add_option("--k", f_k, "k values, e.g. -2..3,5 (default: critical range)");
    fc->add_option("--family", f_family)->check(CLI::IsMember({"a", "aprime"}));
    fc->add_option("--format", f_format)->check(CLI::IsMember({"json", "csv"}));

    // measure
    auto* meas = app.add_subcommand("measure", "Finite-level measures");
    meas->require_subcommand(1);
    auto* mbuild = meas->add_subcommand("build", "measure from character values");
    auto* meval = meas->add_subcommand("eval", "sum chi(a) <a>^k mu(a)");
    auto* mconv = meas->add_subcommand("convolve", "group-ring product");
    auto* mcheck = meas->add_subcommand("check", "integrality, pushforward and Mellin unit check");
    std::string m_values, m_measure, m_a, m_b, m_chi = "1";
    std::uint64_t m_p = 3;
    long m_N = 1;
    int m_level = 1, m_k = 0;
    mbuild->add_option("--values", m_values, "JSON array of {chi, value}")->required();
    mbuild->add_option("--p", m_p);
    mbuild->add_option("--N", m_N);
    mbuild->add_option("--level", m_level);
    meval->add_option("--measure", m_measure)->required();
    meval->add_option("--chi", m_chi);
    meval->add_option("--k", m_k);
    mconv->add_option("--a", m_a)->required();
    mconv->add_option("--b", m_b)->required();
    mcheck->add_option("--measure", m_measure)->required();

    // interpolate
    auto* interp = app.add_subcommand("interpolate", "Assemble interpolation report rows");
    std::string i_config;
    interp->add_option("--config", i_config, "run config file or inline JSON")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "Run an invariant suite");
    std::string v_suite, v_format = "csv";
    bool v_corrupt = false;
    verify->add_option("suite", v_suite)->required()->check(CLI::IsMember(suites::suite_names()));
    verify->add_flag("--corrupt", v_corrupt, "kummer: perturb one coefficient");
    verify->add_option("--format", v_format)->check(CLI::IsMember({"json", "csv"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gamma) {
            auto chi = io::dirichlet_from_string(g_chi);
            std::uint64_t p = g_p;
            if (!p) {
                auto f = padicl::detail::factor_modulus(chi.modulus());
                if (f.size() != 1) throw InvalidParameter("pass --p for a trivial or composite modulus");
                p = f[0].p;
            }
            LocalCharacter th(p, chi, io::cyclotomic_from(g_t.find_first_of("{[") == 0 ? json::parse(g_t) : json(g_t)));
            HalfInt s = HalfInt::parse(g_s);
            json out = {{"character", io::to_json(th)}, {"s", s.str()}, {"gamma_rational", io::to_json(gamma_gl1_rational(th))}};
            try {
                out["gamma"] = io::to_json(gamma_gl1(th, s));
            } catch (const PoleAtSpecialization& e) {
                out["gamma"] = std::string("pole: ") + e.what();
            }
            if (chi.conductor() > 1) out["gauss_sum"] = io::to_json(gauss_sum(chi.primitive()));
            emit(out);
        } else if (*euler) {
            auto F = io::setup_from(io::json_arg(e_setup));
            auto chi = io::dirichlet_from_string(e_chi);
            EinfShift sh = e_shift == "theorem" ? EinfShift::Theorem : EinfShift::Proof;
            auto row = interpolate_row(F, chi, e_k, sh);
            const auto& o = F.data.params;
            json out = {{"s", row.s.str()}, {"E_p_rational", io::to_json(euler_Ep_rational(o, chi_local_p(chi, F.data.p)))}, {"E_p", io::to_json(row.Ep)}};
            out["E_inf"] = io::to_json(euler_Einf(o.l1, o.l2, o.l, einf_argument(e_k, o.eps, sh)));
            out["L_partial"] = io::to_json(row.L_partial);
            out["euler_primes"] = row.euler_primes;
            emit(out);
        } else if (*schw) {
            Schwartz1 f;
            if (s_kind == "coset") f = Schwartz1::coset(s_p, s_k, parse_rational(s_a));
            else if (s_kind == "shell") f = Schwartz1::shell(s_p, io::dirichlet_from_string(s_chi), s_k);
            else f = Schwartz1::character_circ(LocalCharacter::from_dirichlet(io::dirichlet_from_string(s_chi), s_p), s_a == "0" ? Rational(1) : parse_rational(s_a));
            if (parse_rational(s_twist) != 0) f = f.twisted(parse_rational(s_twist));
            Schwartz1 F = f.fourier();
            json out = {{"f", f.str()}, {"fourier", F.str()}, {"fourier_fourier_is_reflection", equal_as_functions(F.fourier(), f.reflected())}};
            if (!s_eval.empty()) {
                json vals = json::array();
                std::stringstream ss(s_eval);
                for (std::string x; std::getline(ss, x, ',');) {
                    Rational r = parse_rational(x);
                    vals.push_back({{"x", r.get_str()}, {"f", io::to_json(f(r))}, {"F", io::to_json(F(r))}});
                }
                out["values"] = vals;
            }
            emit(out);
        } else if (*local) {
            if (*zvol) {
                emit({{"q", z_q}, {"m", z_m}, {"c", z_c}, {"zvol", zvol_constant(z_q, z_m, parse_rational(z_c)).get_str()}});
            } else if (*bsplit) {
                LocalCharacter e1 = local_arg(b_e1, b_p), e2 = local_arg(b_e2, b_p), L = local_arg(b_lambda, b_p);
                BesselSetup S = BesselSetup::make(b_p, 1, 0, 1, e1, e2);
                emit({{"m1", b_m1},
                      {"m2", b_m2},
                      {"normalized", io::to_json(bessel_split_normalized(b_m1, b_m2, S, L))},
                      {"closed_form", io::to_json(bessel_split_closed_form(S, L))},
                      {"convention_factor", io::to_json(bessel_split_convention_factor(S, L))}});
            } else {
                LocalCharacter e1 = local_arg(b_e1, b_p), e2 = local_arg(b_e2, b_p);
                BesselSetup S = BesselSetup::make(b_p, 1, 0, 1, e1, e2);
                QuadCharacter L = b_lambda.empty() ? QuadCharacter::trivial(S.A) : io::quad_from(json::parse(b_lambda), S.A);
                emit({{"m1", b_m1},
                      {"m2", b_m2},
                      {"normalized", io::to_json(bessel_nonsplit_normalized(b_m1, b_m2, S, L))},
                      {"limit", io::to_json(bessel_nonsplit_limit(S, L))}});
            }
        } else if (*fc) {
            auto F = io::setup_from(io::json_arg(f_setup));
            auto b1 = parse_sym2(f_beta1);
            Rational b2 = parse_rational(f_beta2);
            auto chars = io::character_list_from_string(f_chars);
            std::vector<int> ks;
            if (f_k.empty()) {
                auto r = critical_range(F.data.params);
                for (int k = r.kmin; k <= r.kmax; ++k) ks.push_back(k);
            } else {
                ks = parse_int_list(f_k);
            }
            CoeffFamily fam = f_family == "a" ? CoeffFamily::A : CoeffFamily::APrime;
            json rows = json::array();
            std::vector<std::vector<std::string>> csv;
            for (auto& chi : chars)
                for (int k : ks) {
                    auto r = a_sum_detailed(b1, b2, chi, k, F.data, fam, F.lattice, F.options);
                    rows.push_back({{"chi", io::to_json(chi)}, {"k", k}, {"value", io::to_json(r.value)}, {"terms", r.terms}, {"nonzero", r.nonzero},
                                    {"diagnostics", r.diagnostics}});
                    csv.push_back({chi.str(), std::to_string(k), r.value.str(), std::to_string(r.terms), std::to_string(r.nonzero)});
                }
            if (f_format == "csv") emit_csv({"chi", "k", "value", "terms", "nonzero"}, csv);
            else emit({{"beta1", b1.str()}, {"beta2", b2.get_str()}, {"family", f_family}, {"rows", rows}});
        } else if (*meas) {
            if (*mbuild) {
                auto vals = io::character_values_from(io::json_arg(m_values));
                emit(io::to_json(measure_from_values(m_p, m_N, m_level, vals, precision)));
            } else if (*meval) {
                auto mu = io::measure_from(io::json_arg(m_measure));
                auto chi = io::dirichlet_from_string(m_chi);
                emit({{"chi", io::to_json(chi)}, {"k", m_k}, {"value", io::to_json(evaluate_measure(mu, chi, m_k))}});
            } else if (*mconv) {
                emit(io::to_json(convolve(io::measure_from(io::json_arg(m_a)), io::measure_from(io::json_arg(m_b)))));
            } else {
                auto mu = io::measure_from(io::json_arg(m_measure));
                bool integral = true;
                for (auto& [a, v] : mu.table)
                    if (!v.is_zero() && v.content_valuation(mu.p) < 0) integral = false;
                json out = {{"integral", integral}};
                if (mu.m > 0) {
                    auto low = mu.pushforward();
                    bool ok = true;
                    for (auto& chi : DirichletCharacter::all(low.modulus()))
                        if (evaluate_measure(low, chi, 0) != evaluate_measure(mu, chi, 0)) ok = false;
                    out["pushforward_compatible"] = ok;
                }
                if (mu.p != 2) out["mellin_unit"] = mellin(mu).invertible;
                emit(out);
                if (!integral) return 1;
            }
        } else if (*interp) {
            json cfg = io::json_arg(i_config);
            // a setup path is relative to the config file's directory
            json sj = cfg.contains("setup") ? cfg.at("setup") : cfg;
            if (sj.is_string()) {
                std::filesystem::path sp(sj.get<std::string>());
                if (sp.is_relative() && i_config.front() != '{') sp = std::filesystem::path(i_config).parent_path() / sp;
                sj = io::read_json_file(sp.string());
            }
            io::SetupFile F = io::setup_from(sj);
            auto chars = cfg.contains("characters") ? io::character_list_from(cfg.at("characters")) : std::vector<DirichletCharacter>{DirichletCharacter()};
            std::vector<int> ks;
            if (cfg.contains("k")) {
                for (auto& k : cfg.at("k")) ks.push_back(k.get<int>());
            } else {
                auto r = critical_range(F.data.params);
                for (int k = r.kmin; k <= r.kmax; ++k) ks.push_back(k);
            }
            // every k is checked before any row is computed
            for (int k : ks)
                if (!in_critical_range(k, F.data.params)) throw InvalidParameter("k = " + std::to_string(k) + " outside the critical range");
            EinfShift sh = cfg.value("einf_shift", std::string("proof")) == "theorem" ? EinfShift::Theorem : EinfShift::Proof;
            json rows = json::array();
            for (auto& chi : chars)
                for (int k : ks) rows.push_back(to_json(interpolate_row(F, chi, k, sh)));
            emit({{"precision", cfg.value("precision", precision)}, {"rows", rows}});
        } else if (*verify) {
            suites::Options opt;
            opt.corrupt = v_corrupt;
            auto rows = suites::run_suite(v_suite, opt);
            int failed = 0;
            for (auto& r : rows) failed += !r.pass;
            if (v_format == "json") {
                json arr = json::array();
                for (auto& r : rows) arr.push_back({{"suite", r.suite}, {"name", r.name}, {"checks", r.checks}, {"pass", r.pass}, {"detail", r.detail}});
                emit({{"suite", v_suite}, {"rows", arr}, {"failed", failed}});
            } else {
                std::vector<std::vector<std::string>> csv;
                for (auto& r : rows) csv.push_back({r.suite, r.name, r.pass ? "pass" : "FAIL", r.checks, r.detail});
                emit_csv({"suite", "row", "result", "checks", "detail"}, csv);
            }
            return failed ? 1 : 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
