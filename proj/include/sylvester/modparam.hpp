// The modular parametrization X_0(27) -> E_1 : y^2 = x^3 - 432 through eta
// quotients, the cusp coordinate table, and the normalizer automorphisms
// W, A, B, C acting on E_1 as unit-plus-translation maps.
#pragma once

#include "sylvester/eta.hpp"
#include "sylvester/mordell.hpp"

namespace sylv {

// f = eta(27z)/eta(3z), g = (eta(9z)/eta(3z))^4; x = 4 g f^-3, y = 8 f^-3 + 36
inline Ball mod_f(const Surd& z, Prec prec) {
    return eta_anywhere(z.scaled(27), prec) / eta_anywhere(z.scaled(3), prec);
}
inline Ball mod_g(const Surd& z, Prec prec) {
    Ball r = eta_anywhere(z.scaled(9), prec) / eta_anywhere(z.scaled(3), prec);
    return pow_si(r, 4);
}

inline ECPoint<Ball> param_point(const Surd& z, Prec prec) {
    Ball f3 = pow_si(mod_f(z, prec), 3);
    Ball g = mod_g(z, prec);
    Ball four = Ball::exact_q(4, 0, prec);
    Ball x = four * g / f3;
    Ball y = Ball::exact_q(8, 0, prec) / f3 + Ball::exact_q(36, 0, prec);
    return {x, y};
}

enum class CuspLabel { Inf, Zero, OneThird, MinusOneThird, OneNinth, MinusOneNinth };

// cusp coordinates on E_1 over K
inline ECPoint<FieldElem> cusp_coords(CuspLabel c, const FieldPtr& F) {
    FieldElem w = FieldElem::omega(F);
    FieldElem s3 = FieldElem::from_eisq(F, EisQ(EisInt::sqrt_m3()));
    auto rat = [&](long v) { return FieldElem::rational(F, v); };
    switch (c) {
        case CuspLabel::Inf: return ECPoint<FieldElem>::O();
        case CuspLabel::Zero: return {rat(12), rat(36)};
        case CuspLabel::OneThird: return {rat(12) * w, rat(36)};
        case CuspLabel::MinusOneThird: return {rat(12) * w * w, rat(36)};
        case CuspLabel::OneNinth: return {rat(0), rat(-12) * s3};
        case CuspLabel::MinusOneNinth: return {rat(0), rat(12) * s3};
    }
    throw std::logic_error("cusp_coords: bad label");
}

enum class ModAut { W, A, B, C };

// rational matrix of the automorphism (entries times 3 to stay integral)
inline std::array<mpq_class, 4> mod_aut_matrix(ModAut a) {
    switch (a) {
        case ModAut::W: return {mpq_class(0), mpq_class(1), mpq_class(-27), mpq_class(0)};
        case ModAut::A: return {mpq_class(1), mpq_class(1, 3), mpq_class(0), mpq_class(1)};
        case ModAut::B: return {mpq_class(1), mpq_class(0), mpq_class(9), mpq_class(1)};
        case ModAut::C: return {mpq_class(4), mpq_class(1, 3), mpq_class(9), mpq_class(1)};
    }
    throw std::logic_error("mod_aut_matrix: bad symbol");
}

inline Surd mod_aut_apply_tau(ModAut a, const Surd& t) {
    auto m = mod_aut_matrix(a);
    Surd num{m[0] * t.x + m[1], m[0] * t.y, t.D};
    Surd den{m[2] * t.x + m[3], m[2] * t.y, t.D};
    return num / den;
}

// Phi(aut) on E_1 points: A -> [w], W -> [-1] + [0], B -> [w^2] + [1/9],
// C -> id + [1/9]
template <class T>
ECPoint<T> mod_aut_on_curve(ModAut a, const T& k, const T& omega, const ECPoint<T>& P,
                            const ECPoint<T>& cusp0, const ECPoint<T>& cusp19) {
    switch (a) {
        case ModAut::A: return ec_cm_omega(omega, P, 1);
        case ModAut::W: return ec_add(k, ec_neg(P), cusp0);
        case ModAut::B: return ec_add(k, ec_cm_omega(omega, P, 2), cusp19);
        case ModAut::C: return ec_add(k, P, cusp19);
    }
    throw std::logic_error("mod_aut_on_curve: bad symbol");
}

} // namespace sylv
