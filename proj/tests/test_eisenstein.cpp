#include <catch2/catch_amalgamated.hpp>

#include "sylvester/eisenstein.hpp"
#include "sylvester/classgroup.hpp"

#include <random>
#include <set>

using namespace sylv;

TEST_CASE("Eisenstein integer basics") {
    EisInt w = EisInt::omega();
    REQUIRE(w * w * w == EisInt{1, 0});
    REQUIRE((w * w + w + EisInt{1, 0}).is_zero());
    REQUIRE(EisInt::sqrt_m3() * EisInt::sqrt_m3() == EisInt{-3, 0});
    std::mt19937_64 gen(5);
    std::uniform_int_distribution<long> d(-500, 500);
    for (int t = 0; t < 100; t++) {
        EisInt x{d(gen), d(gen)}, y{d(gen), d(gen)};
        if (y.is_zero()) continue;
        auto [q, r] = eis_divmod(x, y);
        REQUIRE(x == q * y + r);
        REQUIRE(r.norm() < y.norm());
        REQUIRE(x.norm() * y.norm() == (x * y).norm());
    }
}

TEST_CASE("Eisenstein factorization") {
    std::mt19937_64 gen(9);
    std::uniform_int_distribution<long> d(-60, 60);
    for (int t = 0; t < 60; t++) {
        EisInt x{d(gen), d(gen)};
        if (x.is_zero()) continue;
        auto f = eis_factor(x);
        EisInt prod = f.unit;
        for (auto& [pi, e] : f.primes)
            for (long i = 0; i < e; i++) prod = prod * pi;
        REQUIRE(prod == x);
        REQUIRE(f.unit.norm() == 1);
    }
}

TEST_CASE("cubic residue symbol") {
    SECTION("cubes map to 1") {
        std::mt19937_64 gen(3);
        std::uniform_int_distribution<long> d(-40, 40);
        int done = 0;
        while (done < 40) {
            EisInt a{d(gen), d(gen)};
            EisInt pi = eis_prime_above(done % 2 ? 7 : 13);
            if (a.is_zero() || eis_divides(pi, a)) continue;
            int s = cubic_residue_symbol(a * a * a, pi);
            REQUIRE(s == 0);
            done++;
        }
    }
    SECTION("symbol of omega follows the norm exponent") {
        for (long ell : {7L, 13L, 19L, 31L, 2L, 5L, 11L}) {
            EisInt pi = eis_prime_above(ell);
            mpz_class q = pi.norm();
            int s = cubic_residue_symbol(EisInt::omega(), pi);
            // brute force: omega^((q-1)/3) equals omega^k with k = ((q-1)/3) mod 3
            mpz_class e = (q - 1) / 3;
            int expect = (int)mpz_class(e % 3).get_si();
            REQUIRE(s == expect);
        }
    }
    SECTION("cubic reciprocity for primary pairs, brute force") {
        std::mt19937_64 gen(17);
        std::uniform_int_distribution<long> d(-35, 35);
        int done = 0;
        while (done < 50) {
            EisInt a{d(gen), d(gen)}, b{d(gen), d(gen)};
            if (a.is_zero() || b.is_zero()) continue;
            if (a.norm() % 3 == 0 || b.norm() % 3 == 0) continue;
            if (!eis_gcd(a, b).norm() == 1) continue;
            if (eis_gcd(a, b).norm() != 1) continue;
            EisInt ap = eis_make_primary(a), bp = eis_make_primary(b);
            REQUIRE(cubic_residue_symbol_composite(ap, bp) ==
                    cubic_residue_symbol_composite(bp, ap));
            done++;
        }
    }
}

TEST_CASE("class group enumeration") {
    SECTION("conductor 1 is trivial") {
        auto cls = pic_enumerate(1);
        REQUIRE(cls.size() == 1);
        REQUIRE(cls[0] == FormClass{1, 1, 1});
    }
    SECTION("conductor 18 has 9 classes") { REQUIRE(pic_enumerate(18).size() == 9); }
    SECTION("conductor 45 has 18 classes") { REQUIRE(pic_enumerate(45).size() == 18); }
    SECTION("closed under composition, Lagrange holds") {
        PicGroup G = PicGroup::build(18);
        FormClass e = principal_form(G.D);
        for (const auto& f : G.classes) {
            REQUIRE(form_compose(f, e) == form_reduce(f));
            REQUIRE(form_compose(f, form_inverse(f)) == e);
            long ord = form_order(f);
            REQUIRE((long)G.size() % ord == 0);
            for (const auto& g : G.classes) {
                FormClass h = form_compose(f, g);
                G.index_of(h);  // throws if not in the enumeration
            }
        }
    }
}

TEST_CASE("cubic characters against the local class field anchors") {
    // chi_n(sigma) = (cbrt(n))^(sigma - 1); anchors from the ramified-at-3 unit action
    for (long pl : {2L, 5L, 11L, 23L}) {
        mpz_class p = pl;
        PicGroup G = PicGroup::build(9 * p);
        FormClass s13 = pic_class_of_3unit(EisInt{1, 3}, p, G);   // sigma_{1+3 omega_3}
        FormClass sw = pic_class_of_3unit(EisInt::omega(), p, G); // sigma_{omega_3}

        // (cbrt 3)^(sigma_{1+3w}-1) = omega^2
        REQUIRE(chi_eval(3, s13, G.conductor) == 2);
        // (cbrt p)^(sigma_{1+3w}-1) = 1
        REQUIRE(chi_eval(p, s13, G.conductor) == 0);
        // (cbrt 3)^(sigma_w - 1) = 1
        REQUIRE(chi_eval(3, sw, G.conductor) == 0);
        // (cbrt p)^(sigma_w - 1) = omega if p = 2 mod 9, omega^2 if p = 5 mod 9
        int expect = (p % 9 == 2) ? 1 : 2;
        REQUIRE(chi_eval(p, sw, G.conductor) == expect);
    }
}

TEST_CASE("characters are homomorphisms and multiply") {
    for (long pl : {2L, 5L}) {
        mpz_class p = pl;
        PicGroup G = PicGroup::build(9 * p);
        auto val = [&](const mpz_class& n, const FormClass& f) { return chi_eval(n, f, G.conductor); };
        FormClass e = principal_form(G.D);
        REQUIRE(val(3, e) == 0);
        REQUIRE(val(p, e) == 0);
        for (const auto& f : G.classes) {
            for (const auto& g : G.classes) {
                FormClass h = form_compose(f, g);
                REQUIRE(val(3, h) == (val(3, f) + val(3, g)) % 3);
                REQUIRE(val(p, h) == (val(p, f) + val(p, g)) % 3);
            }
            // chi_3 chi_p = chi_3p, chi_3 chi_p^2 = chi_3p^2
            REQUIRE(val(3 * p, f) == (val(3, f) + val(p, f)) % 3);
            REQUIRE(val(3 * p * p, f) == (val(3, f) + 2 * val(p, f)) % 3);
        }
    }
}

TEST_CASE("kernel subgroups match the field diagram") {
    for (long pl : {2L, 5L, 11L}) {
        mpz_class p = pl;
        PicGroup G = PicGroup::build(9 * p);
        CubicCharacter chi3{3, G.conductor}, chip{p, G.conductor};
        auto ker = kernel_subgroup({chi3, chip}, G);
        REQUIRE((long)ker.size() == (pl + 1) / 3);
        REQUIRE(ker.size() * 9 == G.size());
        auto all = kernel_subgroup({}, G);
        REQUIRE(all.size() == G.size());
        // kernel of chi_{3p} has index 3
        CubicCharacter chi3p{3 * p, G.conductor};
        REQUIRE(kernel_subgroup({chi3p}, G).size() * 3 == G.size());
    }
}
