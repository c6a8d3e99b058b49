#include <catch2/catch_amalgamated.hpp>

#include "sylvester/ball.hpp"
#include "sylvester/eta.hpp"
#include "sylvester/lll.hpp"
#include "sylvester/qpoly.hpp"

#include <random>

using namespace sylv;

TEST_CASE("ball arithmetic contains exact rational results") {
    std::mt19937_64 gen(42);
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 97);
    for (int trial = 0; trial < 200; trial++) {
        mpq_class a(num(gen), den(gen)), b(num(gen), den(gen));
        mpq_class c(num(gen), den(gen)), d(num(gen), den(gen));
        a.canonicalize(); b.canonicalize(); c.canonicalize(); d.canonicalize();
        if (c == 0 && d == 0) continue;
        Prec p = 128;
        Ball x = Ball::exact_q(a, b, p);
        Ball y = Ball::exact_q(c, d, p);
        Ball r = ((x * y + x - y) * x) / y;
        auto cmul = [](mpq_class ar, mpq_class ai, mpq_class br, mpq_class bi) {
            return std::pair<mpq_class, mpq_class>{ar * br - ai * bi, ar * bi + ai * br};
        };
        auto [t1r, t1i] = cmul(a, b, c, d);
        mpq_class sr = t1r + a - c, si = t1i + b - d;
        auto [wr, wi] = cmul(sr, si, a, b);
        mpq_class nn = c * c + d * d;
        auto [zr, zi] = cmul(wr, wi, c / nn, -d / nn);
        Ball exact = Ball::exact_q(zr, zi, 4 * p);
        REQUIRE((r - exact).contains_zero());
    }
}

TEST_CASE("fundamental domain reduction") {
    SECTION("translation case: i + 5") {
        Surd tau(5, 1, 1);
        auto [t, g] = reduce_to_fundamental(tau);
        REQUIRE(t.x == 0);
        REQUIRE(t.y == 1);
        REQUIRE(g.b == -5);
        REQUIRE(g.det() == 1);
    }
    SECTION("inversion raises small imaginary part") {
        Surd tau(0, mpq_class(1, 100), 1);
        auto [t, g] = reduce_to_fundamental(tau);
        // Im tau' = y * sqrt(D) >= sqrt(3)/2, i.e. y^2 * D >= 3/4
        REQUIRE(t.y * t.y * mpq_class(t.D) >= mpq_class(3, 4));
        REQUIRE(g.det() == 1);
    }
    SECTION("random points: gamma tau = tau', det gamma = 1") {
        std::mt19937_64 gen(7);
        std::uniform_int_distribution<long> coord(-40, 40), den(1, 23), dd(0, 3);
        long Ds[4] = {1, 2, 3, 7};
        for (int trial = 0; trial < 300; trial++) {
            Surd tau(mpq_class(coord(gen), den(gen)), mpq_class(std::abs(coord(gen)) + 1, den(gen)),
                     Ds[dd(gen)]);
            auto [t, g] = reduce_to_fundamental(tau);
            REQUIRE(g.det() == 1);
            REQUIRE(g.apply(tau) == t);
            REQUIRE(abs(t.x) <= mpq_class(1, 2));
            REQUIRE(t.norm() >= 1);
        }
    }
}

TEST_CASE("dedekind sums") {
    REQUIRE(dedekind_s(1, 3) == mpq_class(1, 18));
    REQUIRE(dedekind_s(-1, 3) == mpq_class(-1, 18));
    // reciprocity on random coprime pairs
    std::mt19937_64 gen(11);
    std::uniform_int_distribution<long> pick(1, 400);
    int done = 0;
    while (done < 50) {
        mpz_class h = pick(gen), k = pick(gen), g;
        mpz_gcd(g.get_mpz_t(), h.get_mpz_t(), k.get_mpz_t());
        if (g != 1) continue;
        mpq_class lhs = dedekind_s(h, k) + dedekind_s(k, h);
        mpq_class rhs = mpq_class(-1, 4) + (mpq_class(h) / k + mpq_class(k) / h + mpq_class(1) / (h * k)) / 12;
        REQUIRE(lhs == rhs);
        done++;
    }
}

TEST_CASE("eta transformation anchors") {
    Prec p = 256;
    Surd tau(mpq_class(1, 5), mpq_class(6, 5), 1);  // generic test point
    Ball e0 = eta_q_product(tau, p);

    SECTION("eta(tau+1)/eta(tau) = exp(2 pi i / 24)") {
        Surd tau1 = tau; tau1.x += 1;
        Ball ratio = eta_q_product(tau1, p) / e0;
        Real ang = Real::pi(p) / 12;
        Real s(p), c(p);
        mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
        Ball expect = Ball::from_rounded(Complex(c, s));
        REQUIRE((ratio - expect).contains_zero());
    }
    SECTION("eta(-1/tau)/eta(tau) = sqrt(tau/i)") {
        mpq_class nm = tau.norm();
        Surd taui(-tau.x / nm, tau.y / nm, tau.D);
        Ball ratio = eta_q_product(taui, p) / e0;
        Complex t = tau.embed(p);
        Ball expect = sqrt(Ball::from_rounded(Complex(t.im, -t.re)));  // tau/i = -i*tau
        REQUIRE((ratio - expect).contains_zero());
    }
    SECTION("eta(2i) consistent when precision doubles") {
        Surd t2(0, 2, 1);
        Ball lo = eta_q_product(t2, 128);
        Ball hi = eta_q_product(t2, 256);
        REQUIRE((lo - hi).contains_zero());
        REQUIRE(lo.rad_l2 <= lo.mag_upper() + 8 - 128);  // radius <= 2^(8-prec) * |eta|
    }
}

TEST_CASE("eta_anywhere matches the direct product and the multiplier law") {
    Prec p = 192;
    SECTION("omega/9 agrees with direct evaluation") {
        Surd tau = Surd::from_omega_coords(0, mpq_class(1, 9));
        Ball direct = eta_q_product(tau, p);
        Ball fast = eta_anywhere(tau, p);
        REQUIRE((direct - fast).contains_zero());
        REQUIRE(fast.accuracy_bits() > p / 2);
    }
    SECTION("period 24 in the translation direction") {
        Surd tau(mpq_class(1, 7), mpq_class(2, 7), 3);
        Surd tau24 = tau; tau24.x += 24;
        Ball a = eta_anywhere(tau, p), b = eta_anywhere(tau24, p);
        REQUIRE((a - b).contains_zero());
    }
    SECTION("random consistency and modulus of the transformation law") {
        std::mt19937_64 gen(13);
        std::uniform_int_distribution<long> coord(-30, 30), den(1, 17);
        for (int trial = 0; trial < 100; trial++) {
            Surd tau(mpq_class(coord(gen), den(gen)), mpq_class(std::abs(coord(gen)) % 9 + 1, den(gen)), 3);
            Ball a = eta_anywhere(tau, p);
            Ball b = eta_q_product(tau, p);  // may be slow but converges for these y
            REQUIRE((a - b).contains_zero());
            auto [tr, g] = reduce_to_fundamental(tau);
            // |eta(g tau)| = |c tau + d|^(1/2) |eta(tau)|
            Complex t = tau.embed(p);
            Complex ctd = Complex(Real(mpq_class(g.c), p), Real(0L, p)) * t +
                          Complex(Real(mpq_class(g.d), p), Real(0L, p));
            Ball lhs = eta_anywhere(tr, p);
            Real mod_ratio = lhs.c.abs() / (sqrt(ctd.abs()) * a.c.abs());
            REQUIRE(std::abs(mod_ratio.to_double() - 1.0) < 1e-20);
        }
    }
}

TEST_CASE("algebraic recognition") {
    SECTION("sqrt(2) gives x^2 - 2") {
        auto ev = [](Prec p) { return Ball::from_rounded(Complex(sqrt(Real(2L, p)), Real(0L, p))); };
        auto res = recognize(ev, 192, 4, 32);
        REQUIRE(res.has_value());
        REQUIRE(res->certified);
        REQUIRE(res->minpoly == std::vector<mpz_class>{-2, 0, 1});
    }
    SECTION("f(omega/9) is a root of a factor of 27x^6+1") {
        auto ev = [](Prec p) {
            Surd z = Surd::from_omega_coords(0, mpq_class(1, 9));
            Surd z3 = z.scaled(3), z27 = z.scaled(27);
            return eta_anywhere(z27, p) / eta_anywhere(z3, p);
        };
        // the value is exp(-pi i/6)/sqrt(3); sixth power must be -1/27
        Ball v = ev(256);
        Ball v6 = pow_si(v, 6);
        REQUIRE((v6 - Ball::exact_q(mpq_class(-1, 27), 0, 256)).contains_zero());

        auto res = recognize(ev, 320, 6, 32);
        REQUIRE(res.has_value());
        REQUIRE(res->certified);
        // dividing 27x^6+1 exactly
        QPoly big{1, 0, 0, 0, 0, 0, 27};
        QPoly got;
        for (auto& c : res->minpoly) got.emplace_back(c);
        auto [q, r] = qp_divmod(big, got);
        REQUIRE(r.empty());
        // e^(-pi i/6)/sqrt(3) = 1/2 - i/(2 sqrt 3) has minimal polynomial 3x^2-3x+1
        REQUIRE(got == QPoly{1, -3, 3});
    }
    SECTION("perturbed input does not certify") {
        auto ev = [](Prec p) {
            Real x = Real(2L, p) + Real(mpq_class(1, 1000), p);
            return Ball::from_rounded(Complex(x, Real(0L, p)));
        };
        auto res = recognize(ev, 192, 2, 8);
        REQUIRE(!res.has_value());
    }
    SECTION("never certifies on 2^(-prec/4) perturbations of sqrt(2)") {
        Prec p = 256;
        auto ev = [p](Prec q) {
            Real x = sqrt(Real(2L, q)) + ldexp(Real(1L, q), -(long)p / 4);
            return Ball::from_rounded(Complex(x, Real(0L, q)));
        };
        auto res = recognize(ev, p, 3, 12);
        REQUIRE(!res.has_value());
    }
    SECTION("idempotent under precision doubling") {
        auto ev = [](Prec p) {
            // golden ratio
            Real x = (Real(1L, p) + sqrt(Real(5L, p))) / 2;
            return Ball::from_rounded(Complex(x, Real(0L, p)));
        };
        auto r1 = recognize(ev, 128, 4, 24);
        auto r2 = recognize(ev, 256, 4, 24);
        REQUIRE(r1.has_value());
        REQUIRE(r2.has_value());
        REQUIRE(r1->certified);
        REQUIRE(r2->certified);
        REQUIRE(r1->minpoly == r2->minpoly);
    }
}

TEST_CASE("rational recognition by continued fractions") {
    Prec p = 256;
    Real x = Real(mpq_class(-355, 1130), p);
    auto q = recognize_rational(x, 64);
    REQUIRE(q.has_value());
    REQUIRE(*q == mpq_class(-71, 226));
    Real irr = sqrt(Real(2L, p));
    auto bad = recognize_rational(irr, 48);
    REQUIRE(!bad.has_value());
}
