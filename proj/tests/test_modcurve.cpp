#include <catch2/catch_amalgamated.hpp>

#include "sylvester/cmpoints.hpp"
#include "sylvester/numfield.hpp"

#include <random>

using namespace sylv;

namespace {
Ball ball_of(const FieldElem& e, Prec p) { return e.embed(p); }

bool pt_overlaps(const ECPoint<Ball>& P, const ECPoint<Ball>& Q) {
    if (P.inf || Q.inf) return P.inf == Q.inf;
    return (P.x - Q.x).contains_zero() && (P.y - Q.y).contains_zero();
}
}  // namespace

TEST_CASE("parametrization lands on E_1 and hits the cusp limits") {
    Prec p = 192;
    Ball k = Ball::exact_q(-432, 0, p);
    std::mt19937_64 gen(3);
    std::uniform_int_distribution<long> d(-20, 20), den(3, 17);
    SECTION("curve equation residual vanishes at 100 random tau") {
        for (int t = 0; t < 100; t++) {
            Surd tau(mpq_class(d(gen), den(gen)), mpq_class(std::abs(d(gen)) % 7 + 1, den(gen)), 3);
            auto P = param_point(tau, p);
            Ball resid = P.y * P.y - P.x * P.x * P.x - k;
            REQUIRE(resid.contains_zero());
        }
    }
    SECTION("z -> i infinity tends to O; z -> 0 tends to (12, 36)") {
        Surd high(0, 8, 1);  // 8i: x ~ q^(-2) explodes
        auto Ph = param_point(high, p);
        REQUIRE(Ph.x.mag_upper() > 64);
        Surd low(0, mpq_class(1, 999), 1);  // -> cusp [0]
        auto Pl = param_point(low, p);
        REQUIRE((Pl.x - Ball::exact_q(12, 0, p)).contains_zero());
        REQUIRE((Pl.y - Ball::exact_q(36, 0, p)).contains_zero());
    }
    SECTION("invariance under Gamma_0(27)") {
        for (int t = 0; t < 20; t++) {
            Surd tau(mpq_class(d(gen), den(gen)), mpq_class(std::abs(d(gen)) % 5 + 1, den(gen)), 3);
            // gamma = (a b; 27c d) with det 1
            long cc = (t % 3) - 1, bb = d(gen) % 4;
            long aa = 1 + 27 * cc * bb;  // makes det = a d - 27 c b = 1 with d = 1... pick structured
            Mat22 g{aa, bb, 27 * cc, 1};
            if (g.det() != 1) continue;
            Surd tg = g.apply(tau);
            REQUIRE(pt_overlaps(param_point(tau, p), param_point(tg, p)));
        }
    }
}

TEST_CASE("cusp table") {
    FieldPtr K = RadicalField::K();
    FieldElem k = FieldElem::rational(K, -432);
    Prec p = 160;
    auto all = {CuspLabel::Inf, CuspLabel::Zero, CuspLabel::OneThird, CuspLabel::MinusOneThird,
                CuspLabel::OneNinth, CuspLabel::MinusOneNinth};
    SECTION("every cusp satisfies the curve equation; they are the 3-torsion") {
        int affine = 0;
        for (auto c : all) {
            auto P = cusp_coords(c, K);
            if (P.inf) continue;
            affine++;
            REQUIRE(fe_is_zero(ec_curve_residual(k, P)));
            REQUIRE(ec_mul(k, 3, P).inf);
        }
        REQUIRE(affine == 5);
        // with negatives they give all nine 3-torsion points (E_1(K) = E[3])
        std::vector<std::pair<std::vector<mpq_class>, std::vector<mpq_class>>> seen;
        for (auto c : all) {
            auto P = cusp_coords(c, K);
            for (auto Q : {P, ec_neg(P)}) {
                if (Q.inf) continue;
                auto key = std::make_pair(Q.x.c, Q.y.c);
                bool dup = false;
                for (auto& s : seen) dup |= (s == key);
                if (!dup) seen.push_back(key);
            }
        }
        REQUIRE(seen.size() == 8);
    }
    SECTION("[1/9] + [-1/9] = O and [-1/3] = (12 w^2, 36)") {
        auto P = cusp_coords(CuspLabel::OneNinth, K), Q = cusp_coords(CuspLabel::MinusOneNinth, K);
        REQUIRE(ec_add(k, P, Q).inf);
        auto R = cusp_coords(CuspLabel::MinusOneThird, K);
        FieldElem w = FieldElem::omega(K);
        REQUIRE(R.x == FieldElem::rational(K, 12) * w * w);
    }
    (void)p;
}

TEST_CASE("normalizer automorphisms act as unit plus translation") {
    Prec p = 224;
    Ball k = Ball::exact_q(-432, 0, p);
    Real s3 = sqrt(Real(3L, p));
    Ball omega{Complex{Real(mpq_class(-1, 2), p), s3 / 2}, kExactRadius};
    FieldPtr K = RadicalField::K();
    Ball cusp0x = Ball::exact_q(12, 0, p), cusp0y = Ball::exact_q(36, 0, p);
    ECPoint<Ball> cusp0{cusp0x, cusp0y};
    ECPoint<Ball> cusp19{Ball::exact_q(0, 0, p), -ball_of(cusp_coords(CuspLabel::MinusOneNinth, K).y, p)};
    std::mt19937_64 gen(11);
    std::uniform_int_distribution<long> d(-12, 12), den(5, 13);
    int checked = 0;
    for (int t = 0; t < 24 && checked < 12; t++) {
        Surd tau(mpq_class(d(gen), den(gen)), mpq_class(std::abs(d(gen)) % 4 + 1, den(gen)), 3);
        auto P = param_point(tau, p);
        for (ModAut a : {ModAut::W, ModAut::A, ModAut::B, ModAut::C}) {
            Surd ta = mod_aut_apply_tau(a, tau);
            auto lhs = param_point(ta, p);
            auto rhs = mod_aut_on_curve(a, k, omega, P, cusp0, cusp19);
            REQUIRE(pt_overlaps(lhs, rhs));
        }
        checked++;
    }
    REQUIRE(checked >= 10);
}

TEST_CASE("CM conjugates via the class-group action") {
    Prec p = 256;
    SECTION("principal class returns param(p omega / 9)") {
        for (long pr : {2L, 5L}) {
            PicGroup G = PicGroup::build(9 * pr);
            FormClass e = principal_form(G.D);
            Surd t = cm_transport_tau(pr, 27, e, G.conductor);
            auto P = cm_conjugates(pr, {e}, G.conductor, p);
            Surd base = Surd::from_omega_coords(0, mpq_class(pr, 9));
            REQUIRE(pt_overlaps(P[0], param_point(base, p)));
            (void)t;
        }
    }
    SECTION("sigma_{1+3w} conjugate is [w^2] P_tau") {
        for (long pr : {2L, 5L}) {
            PicGroup G = PicGroup::build(9 * pr);
            FormClass s13 = pic_class_of_3unit(EisInt{1, 3}, pr, G);
            auto conj = cm_conjugates(pr, {s13}, G.conductor, p)[0];
            Surd base = Surd::from_omega_coords(0, mpq_class(pr, 9));
            auto P = param_point(base, p);
            Real s3 = sqrt(Real(3L, p));
            Ball omega{Complex{Real(mpq_class(-1, 2), p), s3 / 2}, kExactRadius};
            auto expect = ec_cm_omega(omega, P, 2);
            REQUIRE(pt_overlaps(conj, expect));
        }
    }
    SECTION("full-group trace lands in E_1(K) = E_1[3]") {
        long pr = 2;
        PicGroup G = PicGroup::build(9 * pr);
        auto pts = cm_conjugates(pr, G.classes, G.conductor, p);
        REQUIRE(pts.size() == 9);
        Ball k = Ball::exact_q(-432, 0, p);
        ECPoint<Ball> acc;
        for (auto& P : pts) acc = ec_add(k, acc, P);
        // the trace must overlap one of the nine exact 3-torsion points
        FieldPtr K = RadicalField::K();
        bool hit = acc.inf;
        for (auto c : {CuspLabel::Zero, CuspLabel::OneThird, CuspLabel::MinusOneThird,
                       CuspLabel::OneNinth, CuspLabel::MinusOneNinth}) {
            auto T = cusp_coords(c, K);
            for (auto Q : {T, ec_neg(T)}) {
                if (acc.inf) break;
                if ((acc.x - ball_of(Q.x, p)).contains_zero() &&
                    (acc.y - ball_of(Q.y, p)).contains_zero())
                    hit = true;
            }
        }
        REQUIRE(hit);
    }
    SECTION("trace transitivity over cosets") {
        long pr = 5;
        PicGroup G = PicGroup::build(9 * pr);
        CubicCharacter chi3{3, G.conductor}, chip{pr, G.conductor};
        auto ker = kernel_subgroup({chi3, chip}, G);  // size 2
        REQUIRE(ker.size() == 2);
        // sum over ker then over a 3-element set of coset reps covering ker(chi_3p)
        CubicCharacter chi3p{3 * pr, G.conductor};
        auto ker3p = kernel_subgroup({chi3p}, G);  // size 6
        REQUIRE(ker3p.size() == 6);
        Ball k = Ball::exact_q(-432, 0, p);
        auto pts_all = cm_conjugates(pr, ker3p, G.conductor, p);
        ECPoint<Ball> direct;
        for (auto& P : pts_all) direct = ec_add(k, direct, P);
        // group ker3p into cosets of ker
        std::vector<FormClass> used;
        ECPoint<Ball> nested;
        for (auto& f : ker3p) {
            bool seen = false;
            for (auto& u : used)
                for (auto& kf : ker)
                    if (form_compose(u, kf) == form_reduce(f)) seen = true;
            if (seen) continue;
            used.push_back(form_reduce(f));
            for (auto& kf : ker) {
                FormClass g = form_compose(f, kf);
                auto pp = cm_conjugates(pr, {g}, G.conductor, p);
                nested = ec_add(k, nested, pp[0]);
            }
        }
        REQUIRE(used.size() == 3);
        REQUIRE(pt_overlaps(direct, nested));
    }
}
