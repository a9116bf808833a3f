#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "padicl/cyclotomic.hpp"
#include "padicl/padic.hpp"
#include "padicl/quadratic.hpp"

using namespace padicl;

TEST_CASE("padic addition of 3 and 6") {
    auto a = PadicScalar::from_int(3, 3, 12);
    auto b = PadicScalar::from_int(3, 6, 12);
    auto s = a + b;
    CHECK(s.val() == 2);
    CHECK(s.unit() == 1);
    CHECK(s.precision() == 12);
}

TEST_CASE("padic inverse edge cases") {
    CHECK(PadicScalar::from_int(3, 1, 12).inv().unit() == 1);
    CHECK_THROWS_AS(PadicScalar::from_int(3, 0, 12).inv(), DivisionByZero);
    CHECK_THROWS_AS(PadicScalar::from_int(3, 0, 12).val(), PrecisionExhausted);
}

TEST_CASE("padic precision bookkeeping") {
    auto a = PadicScalar::from_int(5, 5, 10);   // 5 * 1, known mod 5^10
    auto b = PadicScalar::from_int(5, 2, 10);
    auto ab = a * b;
    CHECK(ab.val() == 1);
    CHECK(ab.precision() == 10);  // valuation 1 plus relative precision min(9, 10)
    auto ai = a.inv();
    CHECK(ai.val() == -1);
    CHECK(ai.precision() == 8);
    // cancellation loses every digit
    auto z = a - a;
    CHECK(z.is_zero());
    CHECK_THROWS_AS(z.unit(), PrecisionExhausted);
    CHECK_THROWS_AS(PadicScalar::from_int(3, 1, 50), InvalidParameter);
}

TEST_CASE("padic arithmetic agrees with integer arithmetic mod p^M") {
    std::mt19937_64 rng(7);
    const std::uint64_t p = 7;
    const int M = 9;
    const std::uint64_t mod = upow(p, M);
    for (int it = 0; it < 300; ++it) {
        long x = static_cast<long>(rng() % 2000000) - 1000000;
        long y = static_cast<long>(rng() % 2000000) - 1000000;
        auto X = PadicScalar::from_int(p, x, M), Y = PadicScalar::from_int(p, y, M);
        auto check = [&](const PadicScalar& r, long exact) {
            std::uint64_t want = static_cast<std::uint64_t>(mod_floor(exact, static_cast<long>(mod)));
            if (r.precision() < M) return;
            CHECK(r.residue(M) == want);
        };
        check(X + Y, x + y);
        check(X - Y, x - y);
        Integer prod = Integer(x) * Integer(y);
        Integer pm = prod % Integer(static_cast<unsigned long>(mod));
        if (pm < 0) pm += Integer(static_cast<unsigned long>(mod));
        CHECK((X * Y).residue(M) == pm.get_ui());
    }
}

TEST_CASE("padic rational and Hensel helpers") {
    auto h = PadicScalar::from_rational(3, make_q(1, 2), 6);
    auto two = PadicScalar::from_int(3, 2, 6);
    CHECK((h * two).residue(6) == 1);
    std::uint64_t r;
    REQUIRE(sqrt_mod_prime_power(5, Integer(-1), 10, r));
    std::uint64_t mod = upow(5, 10);
    CHECK(detail::mulmod(r, r, mod) == mod - 1);
    CHECK_FALSE(sqrt_mod_prime_power(3, Integer(2), 5, r));
}

TEST_CASE("cyclotomic basics") {
    auto z3 = CV::root_of_unity(3, 1);
    auto c = z3.to_complex();
    CHECK(c.real() == doctest::Approx(-0.5));
    CHECK(c.imag() == doctest::Approx(std::sqrt(3.0) / 2));
    CHECK(z3.pow(3) == CV(1));
    CHECK(z3 * z3 + z3 + CV(1) == CV(0));
    // levels 2 mod 4 are folded: zeta_6 = -zeta_3^2
    CHECK(CV::root_of_unity(6, 1) == -CV::root_of_unity(3, 2));
    CHECK(CV::root_of_unity(4, 1).pow(2) == CV(-1));
    CHECK(CV(1).to_padic(3, 12).residue(12) == 1);
    CHECK(CV(1).to_complex() == std::complex<double>(1.0, 0.0));
}

TEST_CASE("cube root of unity embedded 7-adically") {
    const int M = 12;
    auto z = CV::root_of_unity(3, 1).to_padic(7, M);
    std::uint64_t mod = upow(7, M);
    std::uint64_t r = z.residue(M);
    CHECK(r % 7 == 2);  // Teichmueller lift of 3^2 for the primitive root 3
    CHECK(detail::powmod(r, 3, mod) == 1);
    CHECK(r != 1);
    CHECK((1 + r + detail::mulmod(r, r, mod)) % mod == 0);
}

TEST_CASE("square roots and radicals") {
    for (std::uint64_t q : {2, 3, 5, 7, 11, 13}) {
        auto s = CV::sqrt_rational(Rational(static_cast<long>(q)));
        CHECK(s * s == CV(static_cast<long>(q)));
        auto c = CyclotomicValue::sqrt_prime_cyc(q).to_complex();
        CHECK(c.real() == doctest::Approx(std::sqrt(static_cast<double>(q))));
        CHECK(std::abs(c.imag()) < 1e-12);
        CHECK(s == CV(CyclotomicValue::sqrt_prime_cyc(q)));
    }
    auto h = CV::q_half_power(3, -1);
    CHECK(h * h == CV(make_q(1, 3)));
    CHECK(CV::q_half_power(5, 4) == CV(25));
    CHECK(CV::sqrt_rational(make_q(8, 3)).to_complex().real() == doctest::Approx(std::sqrt(8.0 / 3)));
    // sqrt(2) exists in Q_7 but zeta_8 does not
    auto s2 = CV::sqrt_rational(Rational(2));
    auto e = s2.to_padic(7, 10);
    CHECK((e * e).residue(10) == 2);
    CHECK_THROWS_AS(CV(CyclotomicValue::sqrt_prime_cyc(2)).to_padic(7, 10), EmbeddingUnavailable);
    CHECK_THROWS_AS(CV::sqrt_rational(Rational(3)).to_padic(3, 10), EmbeddingUnavailable);
}

TEST_CASE("embeddings are ring homomorphisms") {
    std::mt19937 rng(3);
    auto rnd = [&](int L) {
        CV x;
        for (int j = 0; j < 4; ++j) x = x + CV(make_q(static_cast<long>(rng() % 11) - 5, 1 + rng() % 4)) * CV::root_of_unity(L, rng() % L);
        return x;
    };
    for (int it = 0; it < 20; ++it) {
        auto x = rnd(12), y = rnd(12);
        CHECK(std::abs((x * y).to_complex() - x.to_complex() * y.to_complex()) < 1e-10);
        CHECK(std::abs((x + y).to_complex() - x.to_complex() - y.to_complex()) < 1e-10);
        // Q(zeta_12) embeds in Q_13
        auto xp = x.to_padic(13, 8), yp = y.to_padic(13, 8);
        CHECK(congruent((x * y).to_padic(13, 8), xp * yp));
        CHECK(congruent((x + y).to_padic(13, 8), xp + yp));
        if (!x.is_zero()) CHECK(x * x.inv() == CV(1));
        CHECK(x.conj().conj() == x);
    }
}

TEST_CASE("cyclotomic valuations and congruences") {
    auto z9 = CV::root_of_unity(9, 1);
    CHECK(z9.valuation(3) == 0);
    CHECK((CV(9) * z9).valuation(3) == 2);
    CHECK(CV::q_half_power(3, -3).valuation(3) == make_q(-3, 2));
    // 1 - zeta_3 has valuation 1/2 at 3
    CHECK((CV(1) - CV::root_of_unity(3, 1)).valuation(3) == make_q(1, 2));
    CHECK(congruent_mod(CV(10), CV(1), 3, 2));
    CHECK_FALSE(congruent_mod(CV(10), CV(1), 3, 3));
    CHECK(CV(make_q(1, 3)).content_valuation(3) == -1);
}

TEST_CASE("quadratic local algebra") {
    QuadraticLocalAlgebra k5(5, -1), k3(3, -1), k2(2, -1), k7(7, -3);
    CHECK(k5.kind() == LocalKind::Split);
    CHECK(k3.kind() == LocalKind::Inert);
    CHECK(k2.kind() == LocalKind::Ramified);
    CHECK(k7.kind() == LocalKind::Split);
    CHECK(QuadraticLocalAlgebra(3, -3).kind() == LocalKind::Ramified);
    CHECK(QuadraticLocalAlgebra(2, -7).kind() == LocalKind::Split);
    CHECK(QuadraticLocalAlgebra(2, -3).kind() == LocalKind::Inert);
    std::mt19937 rng(11);
    for (long d : {-1L, -3L, -7L, 5L}) {
        for (int it = 0; it < 20; ++it) {
            QuadElem z(d, make_q(static_cast<long>(rng() % 21) - 10, 1 + rng() % 3), make_q(static_cast<long>(rng() % 21) - 10, 1));
            QuadElem w(d, make_q(static_cast<long>(rng() % 21) - 10, 1), make_q(static_cast<long>(rng() % 21) - 10, 1 + rng() % 5));
            CHECK((z * w).norm() == z.norm() * w.norm());
            CHECK((z + w).trace() == z.trace() + w.trace());
            CHECK(z.conj().conj() == z);
            QuadElem n = z * z.conj();
            CHECK(n.is_rational());
            CHECK(n.a() == z.norm());
        }
    }
    // omega = (1 + sqrt(-3))/2 satisfies x^2 - x + 1
    QuadElem w(-3, 0, 1);
    CHECK(w * w - w + QuadElem(-3, 1) == QuadElem(-3, 0));
    // split embedding: rho(i)^2 = -1 in Z_5, and rho(i) rho(conj i) = N(i)
    auto ri = k5.rho(QuadElem(-1, 0, 1), 10);
    CHECK(congruent(ri * ri, PadicScalar::from_int(5, -1, 10)));
    auto p = QuadElem(-1, 2, 1);  // 2 + i, norm 5
    auto [v1, v2] = k5.split_valuations(p);
    CHECK(v1 + v2 == 1);
    CHECK(k3.valuation(QuadElem(-1, 3, 3)) == 1);
}
