#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padicl/characters.hpp"

using namespace padicl;

TEST_CASE("Legendre symbol mod 3") {
    auto chi = DirichletCharacter::quadratic_legendre(3);
    CHECK(chi(2) == CV(-1));
    CHECK(chi(1) == CV(1));
    CHECK(chi(3) == CV(0));
    CHECK(chi.parity() == -1);
}

TEST_CASE("every character is 1 at 1") {
    for (std::uint64_t n : {1, 2, 3, 4, 5, 8, 9, 12, 25, 27})
        for (auto& chi : DirichletCharacter::all(n)) CHECK(chi(1) == CV(1));
}

TEST_CASE("order-6 character mod 9 against a discrete-log oracle") {
    auto chi = DirichletCharacter::from_standard_exponents(9, {1});
    auto z = chi(2);
    CHECK(z.pow(6) == CV(1));
    CHECK(z.pow(2) != CV(1));
    CHECK(z.pow(3) != CV(1));
    // oracle: brute-force discrete log to base 2 on (Z/9)^x
    for (long a = 1; a < 9; ++a) {
        if (a % 3 == 0) continue;
        int k = 0;
        long x = 1;
        while (x != a) {
            x = x * 2 % 9;
            ++k;
        }
        CHECK(chi(a) == CV::root_of_unity(6, k));
    }
    for (int k = 0; k <= 6; ++k) CHECK(chi(static_cast<long long>(upow(2, k))) == z.pow(k));
}

TEST_CASE("orthogonality of character sums") {
    for (std::uint64_t n : {3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 25, 36}) {
        auto chars = DirichletCharacter::all(n);
        CHECK(chars.size() == euler_phi(n));
        for (auto& chi : chars) {
            CV s;
            for (std::uint64_t a = 1; a < n; ++a) s = s + chi(static_cast<long long>(a));
            if (chi.is_trivial()) CHECK(s == CV(static_cast<long>(euler_phi(n))));
            else CHECK(s == CV(0));
            CHECK((chi.parity() == 1 || chi.parity() == -1));
        }
    }
}

TEST_CASE("multiplicativity, inverses and conductors") {
    for (auto& chi : DirichletCharacter::all(45)) {
        for (long a = 1; a < 45; ++a)
            for (long b = 1; b < 45; b += 7) CHECK(chi(a * b) == chi(a) * chi(b));
        CHECK((chi * chi.inverse()).is_trivial());
        auto f = chi.conductor();
        CHECK(45 % f == 0);
        auto prim = chi.primitive();
        CHECK(prim.is_primitive());
        for (long a = 1; a < 45; ++a)
            if (std::gcd(a, 45L) == 1) CHECK(prim(a) == chi(a));
    }
    auto chi = DirichletCharacter::from_standard_exponents(9, {3});  // order 2, conductor 3
    CHECK(chi.conductor() == 3);
    CHECK_FALSE(chi.is_primitive());
    CHECK_THROWS_AS(DirichletCharacter::from_images(9, {{4, make_q(1, 6)}}), InvalidParameter);  // 4 does not generate
    CHECK_THROWS_AS(DirichletCharacter::from_images(9, {{2, make_q(1, 5)}}), InvalidParameter);  // order mismatch
}

TEST_CASE("p-components of Dirichlet characters") {
    auto chi = DirichletCharacter::from_standard_exponents(15, {1, 2});
    auto c3 = chi.p_component(3), c5 = chi.p_component(5);
    CHECK(c3.modulus() == 3);
    CHECK(c5.modulus() == 5);
    for (long a = 1; a < 15; ++a)
        if (std::gcd(a, 15L) == 1) CHECK(chi(a) == c3(a) * c5(a));
}

TEST_CASE("local characters of Q_p^x") {
    auto ram = DirichletCharacter::from_standard_exponents(9, {1});
    auto t = CV::root_of_unity(4, 1);
    LocalCharacter th(3, ram, t);
    CHECK(th(Rational(2)) == ram(2));
    CHECK(th(Rational(6)) == ram(2) * t);
    CHECK(th(make_q(2, 9)) == ram(2) * t.pow(-2));
    CHECK(th.circ(Rational(6)) == CV(0));
    CHECK(th.circ(Rational(2)) == ram(2));
    CHECK(th.conductor_exponent() == 2);
    auto prod = th * th.inverse();
    CHECK(prod(make_q(7, 27)) == CV(1));
    auto half = LocalCharacter::abs_half_power(3, 1);  // |x|^(1/2)
    CHECK(half(Rational(3)) == CV::q_half_power(3, -1));
    CHECK_THROWS_AS(LocalCharacter(3, DirichletCharacter::trivial(5), CV(1)), LevelMismatch);
}

TEST_CASE("inert quadratic characters") {
    QuadraticLocalAlgebra A(3, -1);
    // F_9^x is cyclic of order 8 generated by 1 + i
    auto lam = QuadCharacter::inert(A, 1, {{{1, 1}, make_q(3, 8)}}, CV(1));
    CHECK(lam(QuadElem(-1, 1, 1)) == CV::root_of_unity(8, 3));
    CHECK(lam(QuadElem(-1, -1)) == CV(-1));  // (1+i)^4 = -1
    CHECK(lam(QuadElem(-1, 3)) == CV(1));    // value at p
    for (long a = 1; a < 9; ++a)
        for (long b = 0; b < 3; ++b) {
            QuadElem z(-1, a, b), w(-1, 2, 1);
            if (A.is_unit(z)) CHECK(lam(z * w) == lam(z) * lam(w));
        }
    CHECK(lam.on_rational_unit(2) == CV(-1));
    CHECK_THROWS_AS(QuadCharacter::inert(A, 1, {{{2, 0}, make_q(1, 2)}}, CV(1)), InvalidParameter);
}

TEST_CASE("split quadratic characters") {
    QuadraticLocalAlgebra A(5, -1);
    auto l1 = LocalCharacter(5, DirichletCharacter::from_standard_exponents(5, {1}), CV(1));
    auto lam = QuadCharacter::split(A, l1, LocalCharacter::trivial(5));
    QuadElem z(-1, 1, 2), w(-1, 3, -1);
    CHECK(lam(z * w) == lam(z) * lam(w));
    CHECK(lam(QuadElem(-1, 5)) == CV(1));
}

TEST_CASE("Hecke character central restriction") {
    QuadraticLocalAlgebra A(3, -1);
    HeckeCharacterData h;
    h.local[3] = QuadCharacter::inert(A, 1, {{{1, 1}, make_q(1, 8)}}, CV(1));
    h.r = 0;
    CHECK_NOTHROW(h.check_central({{3, DirichletCharacter::quadratic_legendre(3)}}));
    CHECK_THROWS_AS(h.check_central({{3, DirichletCharacter::trivial(3)}}), InvalidParameter);
    CHECK_NOTHROW(h.check_lambda_range(4, 4));
    h.r = 1;
    CHECK_THROWS_AS(h.check_lambda_range(4, 4), InvalidParameter);
}

TEST_CASE("critical range") {
    auto r = critical_range(4, 4, 4, 0);
    CHECK(r.kmin == 0);
    CHECK(r.kmax == 1);
    r = critical_range(5, 4, 4, 1);
    CHECK(r.kmin == 0);
    CHECK(r.kmax == 0);
    CHECK_THROWS_AS(critical_range(3, 3, 2, 0), EmptyRange);
    // endpoints for a wider window: m = 8
    r = critical_range(8, 8, 8, 0);
    CHECK(r.kmin == -2);
    CHECK(r.kmax == 3);
}

TEST_CASE("t_k weights") {
    CHECK(t_weight(1, 0) == 4);
    CHECK(t_weight(0, 1) == 3);
    CHECK(t_weight(0, 0) == 4);
    CHECK(t_weight(-1, 1) == 5);
}

TEST_CASE("ordinary parameters are validated exactly") {
    const std::uint64_t p = 3;
    auto u = [&](long e) { return LocalCharacter::unramified(p, CV::q_half_power(p, 2 * e)); };
    // (l1, l2, l) = (4, 4, 4): val(t1/t3) = -3, val(t2/t3) = -2, val(tpi2/tpi1) = -3
    LocalCharacter ePi[3] = {u(-3), u(-2), u(0)};
    LocalCharacter epi[2] = {u(0), u(-3)};
    CHECK_NOTHROW(OrdinaryParams::make(ePi, epi, 4, 4, 4, 0));
    LocalCharacter bad[3] = {u(-2), u(-2), u(0)};
    CHECK_THROWS_AS(OrdinaryParams::make(bad, epi, 4, 4, 4, 0), InvalidParameter);
    CHECK_THROWS_AS(OrdinaryParams::make(ePi, epi, 4, 4, 4, 1), InvalidParameter);
    CHECK_THROWS_AS(OrdinaryParams::make(ePi, epi, 3, 3, 2, 0), InvalidParameter);
}
