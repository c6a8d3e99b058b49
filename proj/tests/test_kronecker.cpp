#include <catch2/catch_amalgamated.hpp>

#include "sylvester/kronecker.hpp"

using namespace sylv;

TEST_CASE("theta and the corollary constants embed correctly") {
    Prec p = 160;
    FieldPtr F = RadicalField::create(3, 1);
    FieldElem s3 = FieldElem::from_eisq(F, EisQ(EisInt::sqrt_m3()));
    FieldElem w = FieldElem::omega(F);
    FieldElem c23 = FieldElem::monomial(F, 0, 2, 0);
    FieldElem theta = s3 * w * c23 * FieldElem::rational(F, mpq_class(-1, 3));
    // theta = 3^(1/6) e^(i pi/6)
    Ball th = theta.embed(p);
    Real arg = th.c.arg();
    Real mag = th.c.abs();
    REQUIRE(std::abs(arg.to_double() - M_PI / 6) < 1e-30);
    REQUIRE(std::abs(mag.to_double() - std::pow(3.0, 1.0 / 6)) < 1e-12);
    // theta^6 = -3
    FieldElem t6 = theta * theta * theta * theta * theta * theta;
    REQUIRE(t6 == FieldElem::rational(F, -3));
    // X(omega/9) = 3 theta has x = 4X = 12 theta; Y(omega/9) = 3 sqrt(-3)
    Surd tau0 = Surd::from_omega_coords(0, mpq_class(1, 9));
    Ball X = mod_g(tau0, p) / pow_si(mod_f(tau0, p), 3);
    REQUIRE((X - (FieldElem::rational(F, 3) * theta).embed(p)).contains_zero());
    Ball Y = Ball::exact_q(1, 0, p) / pow_si(mod_f(tau0, p), 3);
    REQUIRE((Y - (FieldElem::rational(F, 3) * s3).embed(p)).contains_zero());
}

TEST_CASE("Kronecker congruences for p = 2") {
    for (auto t : {KroneckerTarget::F, KroneckerTarget::G, KroneckerTarget::X, KroneckerTarget::Y}) {
        KroneckerReport r = kronecker_check(2, t);
        INFO("target " << r.target << " norm valuation " << r.norm_valuation);
        REQUIRE(r.power_congruence);
        REQUIRE(r.residue_route);
        REQUIRE(r.routes_agree);
        if (t == KroneckerTarget::F || t == KroneckerTarget::G) REQUIRE(r.padic_unit);
        if (t == KroneckerTarget::X || t == KroneckerTarget::Y) REQUIRE(r.constant_target);
    }
}

TEST_CASE("Kronecker congruences for p = 5") {
    for (auto t : {KroneckerTarget::F, KroneckerTarget::G, KroneckerTarget::X, KroneckerTarget::Y}) {
        KroneckerReport r = kronecker_check(5, t);
        INFO("target " << r.target << " norm valuation " << r.norm_valuation);
        REQUIRE(r.power_congruence);
        REQUIRE(r.residue_route);
        REQUIRE(r.routes_agree);
        if (t == KroneckerTarget::F || t == KroneckerTarget::G) REQUIRE(r.padic_unit);
        if (t == KroneckerTarget::X || t == KroneckerTarget::Y) REQUIRE(r.constant_target);
    }
}
