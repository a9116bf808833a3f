#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "padicl/interpolate.hpp"
#include "padicl/io.hpp"

using namespace padicl;
using io::json;

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(PADICL_CLI_PATH) + " " + args + " 2>&1";
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, f)) out.append(buf, n);
    int st = pclose(f);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

std::filesystem::path tmpdir() {
    auto d = std::filesystem::temp_directory_path() / "padicl_cli_test";
    std::filesystem::create_directories(d);
    return d;
}

void write(const std::filesystem::path& p, const std::string& s) { std::ofstream(p) << s; }

int count(const std::string& hay, const std::string& needle) {
    int n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
    return n;
}

// l1 = l2 = l = w at p = 3 over Q(i), with chi-independent unit shifts so E_p has no pole
json setup_json(int w) {
    auto p3 = [](int e) { return "2/" + std::to_string(upow(3, e)); };
    return {{"p", 3},
            {"S", {1, 0, 1}},
            {"N", 1},
            {"weights", {w, w, w}},
            {"eta_Pi", {{{"t", p3(w - 1)}}, {{"t", p3(w - 2)}}, {{"t", "2"}}}},
            {"eta_pi", {{{"t", "5"}}, {{"t", "5/" + std::to_string(upow(3, w - 1))}}}}};
}

}  // namespace

TEST_CASE("cyclotomic values survive a JSON round trip") {
    std::mt19937 rng(3);
    for (int it = 0; it < 50; ++it) {
        CyclotomicValue v(make_q(static_cast<long>(rng() % 7) - 3, 1 + rng() % 5));
        v = v + CyclotomicValue::root_of_unity(static_cast<int>(3 + rng() % 10), rng() % 12) * CyclotomicValue(static_cast<long>(rng() % 5));
        if (it % 3 == 0) v = v * CyclotomicValue::sqrt_rational(Rational(static_cast<long>(2 + rng() % 5)));
        if (it % 5 == 0) v = v + CyclotomicValue::q_half_power(5, 3);
        json j = io::to_json(v);
        CHECK(io::cyclotomic_from(json::parse(j.dump())) == v);
    }
    CHECK(io::cyclotomic_from(json("3/4")) == CyclotomicValue(make_q(3, 4)));
    CHECK(io::cyclotomic_from(json{{"q_half_power", {3, -3}}}) == CyclotomicValue::q_half_power(3, -3));
    CHECK(io::cyclotomic_from(json{{"root_of_unity", {8, 3}}, {"times", "2"}}) == CyclotomicValue::root_of_unity(8, 3) * CyclotomicValue(2));
    CHECK_THROWS_AS(io::cyclotomic_from(json::array()), InvalidParameter);
}

TEST_CASE("character and measure records round trip") {
    for (std::uint64_t n : {1u, 4u, 9u, 16u, 36u, 45u})
        for (auto& chi : DirichletCharacter::all(n)) CHECK(io::dirichlet_from(json::parse(io::to_json(chi).dump())) == chi);
    CHECK(io::dirichlet_from(json("legendre:3")) == DirichletCharacter::quadratic_legendre(3));
    CHECK(io::character_list_from_string("all:9").size() == 6);
    CHECK(io::character_list_from_string("primitive:9").size() == 4);
    CHECK(io::character_list_from_string("9:1;9:2;1").size() == 3);

    auto mu = FiniteLevelMeasure::point_mass(3, 4, 2, 6, 5, CyclotomicValue::root_of_unity(3, 1));
    CHECK(io::measure_from(json::parse(io::to_json(mu).dump())) == mu);
    json bad = io::to_json(mu);
    bad["modulus"] = 9;
    CHECK_THROWS_AS(io::measure_from(bad), LevelMismatch);
}

TEST_CASE("interpolation rows") {
    auto F = io::setup_from(setup_json(4));
    auto triv = DirichletCharacter();
    auto r = interpolate_row(F, triv, 1);
    CHECK(r.L_partial == CyclotomicValue(1));
    CHECK(r.euler_primes.empty());
    CHECK(r.scalar);
    CHECK(r.periods.size() == 4);
    CHECK(r.Ep == euler_Ep(F.data.params, LocalCharacter::trivial(3), HalfInt{2}));
    CHECK_THROWS_AS(interpolate_row(F, triv, 2), InvalidParameter);
    CHECK_THROWS_AS(interpolate_row(F, DirichletCharacter::trivial(5), 1), LevelMismatch);

    // eps = 1: the i^eps factor against an independent assembly
    auto G = io::setup_from(setup_json(5));
    auto q = interpolate_row(G, triv, 1);
    ArchValue want = ArchValue(Rational(1, 64)) * ArchValue::rational_half_power(Rational(4), 1) * ArchValue::i_power(1) * euler_Einf(5, 5, 5, HalfInt{2 * 1 + 1 + 2});
    CHECK(q.I_infty == want);
    CHECK(q.s == HalfInt{3});

    // non-scalar weights keep the archimedean factor symbolic
    json ns = setup_json(6);
    ns["weights"] = {8, 6, 6};
    ns["eta_Pi"][0]["t"] = "2/" + std::to_string(upow(3, 7));
    auto H = io::setup_from(ns);
    auto h = interpolate_row(H, triv, 1);
    CHECK_FALSE(h.scalar);
    CHECK(h.I_infty_symbol == "I_infty_general");
    CHECK(monomial_str(h.periods).find("I_infty_general") != std::string::npos);

    // chi_p(p) from the prime-to-p part; chi(q) inverted at unramified q
    // 11 = 5 mod 3 and 1 mod 5
    for (auto& chi : DirichletCharacter::all(15)) {
        CHECK(chi_p_at_p(chi, 5) * chi(11) == CyclotomicValue(1));
        CHECK(chi_unramified_at(chi, 7) * chi(7) == CyclotomicValue(1));
        CHECK(chi_unramified_at(chi, 3).is_zero());
    }
}

TEST_CASE("verify suites through the binary") {
    auto g = run("verify gamma");
    CHECK(g.status == 0);
    CHECK(count(g.out, ",FAIL,") == 0);
    CHECK(count(g.out, ",pass,") > 100);

    auto a = run("verify arch");
    CHECK(a.status == 0);
    CHECK(count(a.out, ",pass,") == 6);

    auto k = run("verify kummer");
    CHECK(k.status == 0);
    auto kc = run("verify kummer --corrupt");
    CHECK(kc.status == 1);
    CHECK(count(kc.out, ",FAIL,") == 1);

    auto l = run("verify local --format json");
    CHECK(l.status == 0);
    auto lj = json::parse(l.out);
    CHECK(lj.at("failed") == 0);
    CHECK(run("verify nosuch").status != 0);
}

TEST_CASE("single-value subcommands") {
    auto z = run("local zvol --q 3 --m 1 --c 1");
    REQUIRE(z.status == 0);
    CHECK(json::parse(z.out).at("zvol") == "3/5120");

    auto g = run("gamma --chi 9:1 --s 1/2");
    REQUIRE(g.status == 0);
    CHECK(json::parse(g.out).contains("gauss_sum"));
    CHECK(run("gamma --chi 1 --p 5 --s 1").out.find("pole") != std::string::npos);

    auto s = run("schwartz --p 3 --kind shell --chi 9:1 --k 0 --eval 1,1/3");
    REQUIRE(s.status == 0);
    auto sj = json::parse(s.out);
    CHECK(sj.at("fourier_fourier_is_reflection") == true);
    CHECK(sj.at("values").size() == 2);

    auto b = run("local bessel-nonsplit --p 3 --m1 6 --m2 3");
    REQUIRE(b.status == 0);
    CHECK(json::parse(b.out).at("normalized").at("display") == "(3/4)");
}

TEST_CASE("fourier-coeffs, interpolate and measure pipelines") {
    auto dir = tmpdir();
    json setup = setup_json(12);
    setup["h_policy"] = "proxy-one";
    write(dir / "setup.json", setup.dump());

    auto fc = run("fourier-coeffs --setup " + (dir / "setup.json").string() + " --beta1 2,0,2 --beta2 2 --chars all:3 --k -1..1 --format csv");
    REQUIRE(fc.status == 0);
    CHECK(fc.out.rfind("chi,k,value,terms,nonzero", 0) == 0);
    CHECK(count(fc.out, "\n") == 1 + 2 * 3);
    auto strict = run("fourier-coeffs --setup " + quote(setup_json(12).dump()) + " --beta1 2,0,2 --beta2 2 --k 1");
    CHECK(strict.status == 2);
    CHECK(strict.out.find("UnimplementedHPolynomial") != std::string::npos);

    json cfg = {{"setup", "setup.json"}, {"characters", "all:3"}, {"k", {1, 2}}};
    write(dir / "run.json", cfg.dump());
    auto i1 = run("interpolate --config " + (dir / "run.json").string());
    REQUIRE(i1.status == 0);
    CHECK(json::parse(i1.out).at("rows").size() == 4);
    // byte-deterministic
    CHECK(run("interpolate --config " + (dir / "run.json").string()).out == i1.out);
    cfg["k"] = {1, 40};
    write(dir / "bad.json", cfg.dump());
    auto i2 = run("interpolate --config " + (dir / "bad.json").string());
    CHECK(i2.status == 2);
    CHECK(i2.out.find("outside the critical range") != std::string::npos);

    // values of a known measure -> build -> eval recovers them
    auto mu = FiniteLevelMeasure::point_mass(3, 1, 2, 6, 2, CyclotomicValue(3));
    mu.table[4] = CyclotomicValue(-1);
    CharacterValues vals;
    for (auto& chi : DirichletCharacter::all(9)) vals.emplace_back(chi, evaluate_measure(mu, chi, 0));
    write(dir / "values.json", io::to_json(vals).dump());
    auto mb = run("measure build --p 3 --N 1 --level 2 --values " + (dir / "values.json").string());
    REQUIRE(mb.status == 0);
    CHECK(io::measure_from(json::parse(mb.out)) == mu);
    write(dir / "mu.json", mb.out);
    auto me = run("measure eval --measure " + (dir / "mu.json").string() + " --chi 9:1");
    REQUIRE(me.status == 0);
    CHECK(io::cyclotomic_from(json::parse(me.out).at("value")) == evaluate_measure(mu, DirichletCharacter::from_standard_exponents(9, {1}), 0));
    auto mc = run("measure convolve --a " + (dir / "mu.json").string() + " --b " + (dir / "mu.json").string());
    REQUIRE(mc.status == 0);
    CHECK(io::measure_from(json::parse(mc.out)) == convolve(mu, mu));
    auto mk = run("measure check --measure " + (dir / "mu.json").string());
    CHECK(mk.status == 0);
    CHECK(json::parse(mk.out).at("integral") == true);

    // the trivial character alone is not a measure at level 2
    CharacterValues bad;
    for (auto& chi : DirichletCharacter::all(9)) bad.emplace_back(chi, CyclotomicValue(chi.is_trivial() ? 1 : 0));
    write(dir / "bad_values.json", io::to_json(bad).dump());
    auto kv = run("measure build --p 3 --level 2 --values " + (dir / "bad_values.json").string());
    CHECK(kv.status == 2);
    CHECK(kv.out.find("KummerViolation") != std::string::npos);
}
