// Mordell curves y^2 = x^3 + k: the chord-tangent group law over any of the
// coordinate domains in play (exact radical fields, complex balls, finite
// fields, rationals), CM by omega, scaling isomorphisms, 3-torsion and the
// triplication fiber.
#pragma once

#include "sylvester/numfield.hpp"
#include "sylvester/finitefield.hpp"
#include "sylvester/qpoly.hpp"

namespace sylv {

// ---- field-element shims ---------------------------------------------------
inline bool fe_is_zero(const mpq_class& x) { return x == 0; }
inline bool fe_is_zero(const FieldElem& x) { return x.is_zero(); }
inline bool fe_is_zero(const EisQ& x) { return x.is_zero(); }
inline bool fe_is_zero(const Ball& x) { return x.contains_zero(); }
inline bool fe_is_zero(const FqEl& x) { return x.is_zero(); }
template <class T> bool fe_equal(const T& a, const T& b) { return fe_is_zero(a - b); }

template <class T>
struct ECPoint {
    bool inf = true;
    T x{}, y{};
    ECPoint() = default;
    ECPoint(T x_, T y_) : inf(false), x(std::move(x_)), y(std::move(y_)) {}
    static ECPoint O() { return ECPoint(); }
};

// y^2 - x^3 - k, for verification
template <class T>
T ec_curve_residual(const T& k, const ECPoint<T>& P) {
    return P.y * P.y - P.x * P.x * P.x - k;
}

template <class T>
ECPoint<T> ec_neg(const ECPoint<T>& P) {
    if (P.inf) return P;
    return {P.x, -P.y};
}

template <class T>
ECPoint<T> ec_add(const T& k, const ECPoint<T>& P, const ECPoint<T>& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    T lam;
    if (fe_equal(P.x, Q.x)) {
        if (fe_is_zero(P.y + Q.y)) return ECPoint<T>::O();
        // tangent: (3x^2)/(2y)
        T x2 = P.x * P.x;
        lam = (x2 + x2 + x2) / (P.y + P.y);
    } else {
        lam = (Q.y - P.y) / (Q.x - P.x);
    }
    T x3 = lam * lam - P.x - Q.x;
    T y3 = lam * (P.x - x3) - P.y;
    return {x3, y3};
}

template <class T>
ECPoint<T> ec_sub(const T& k, const ECPoint<T>& P, const ECPoint<T>& Q) {
    return ec_add(k, P, ec_neg(Q));
}

template <class T>
ECPoint<T> ec_mul(const T& k, mpz_class n, ECPoint<T> P) {
    if (n < 0) { n = -n; P = ec_neg(P); }
    ECPoint<T> R;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) R = ec_add(k, R, P);
        P = ec_add(k, P, P);
        n >>= 1;
    }
    return R;
}

// CM action [omega](x, y) = (omega x, y); requires omega in the coordinate
// domain, supplied by the caller.
template <class T>
ECPoint<T> ec_cm_omega(const T& omega, const ECPoint<T>& P, int power = 1) {
    if (P.inf) return P;
    T f = omega;
    if (power % 3 == 0) return P;
    if ((power % 3 + 3) % 3 == 2) f = omega * omega;
    return {f * P.x, P.y};
}
// [sqrt(-3)] = [omega] - [omega^2]
template <class T>
ECPoint<T> ec_cm_sqrtm3(const T& k, const T& omega, const ECPoint<T>& P) {
    return ec_sub(k, ec_cm_omega(omega, P, 1), ec_cm_omega(omega, P, 2));
}

// (x, y) -> (u^2 x, u^3 y) lands on y^2 = x^3 + u^6 k
template <class T>
ECPoint<T> ec_scale(const T& u, const ECPoint<T>& P) {
    if (P.inf) return P;
    T u2 = u * u;
    return {u2 * P.x, u2 * u * P.y};
}

// ---- division polynomials for y^2 = x^3 + k over Q -------------------------
// psi2^2 = 4(x^3 + k); psi3 = 3x^4 + 12kx; psi2*psi4 = 8(x^3+k)(x^6+20kx^3-8k^2)
inline QPoly tripling_numerator(const mpq_class& k) {
    // phi3 = x psi3^2 - psi2 psi4 = x^9 - 96k x^6 + 48 k^2 x^3 + 64 k^3
    QPoly f(10, mpq_class(0));
    f[9] = 1;
    f[6] = -96 * k;
    f[3] = 48 * k * k;
    f[0] = 64 * k * k * k;
    return f;
}
inline QPoly psi3_squared(const mpq_class& k) {
    // (3x^4 + 12kx)^2 = 9x^8 + 72k x^5 + 144 k^2 x^2
    QPoly f(9, mpq_class(0));
    f[8] = 9;
    f[5] = 72 * k;
    f[2] = 144 * k * k;
    return f;
}

// Monic degree-9 polynomial whose roots are the x-coordinates of the points A
// with [3]A = P, for P = (x0, y0) on y^2 = x^3 + k.
inline QPoly triplication_fiber(const mpq_class& k, const mpq_class& x0) {
    return qp_sub(tripling_numerator(k), qp_scale(psi3_squared(k), x0));
}

// ---- 3-torsion over an exact radical field ---------------------------------
// E_n: y^2 = x^3 - 432 n^2. Needs sqrt(-3) (always in K) and n^(2/3).
// `n23` must be an exact representation of n^(2/3) in F.
template <class TF>
std::vector<ECPoint<FieldElem>> torsion3(const FieldPtr& F, const mpq_class& n, const TF& n23) {
    std::vector<ECPoint<FieldElem>> out;
    out.push_back(ECPoint<FieldElem>::O());
    FieldElem sqrtm3 = FieldElem::from_eisq(F, EisQ(EisInt::sqrt_m3()));
    FieldElem w = FieldElem::omega(F);
    FieldElem y0 = FieldElem::rational(F, 12 * n) * sqrtm3;  // (0, +-12 n sqrt(-3))
    out.push_back({FieldElem::rational(F, 0), y0});
    out.push_back({FieldElem::rational(F, 0), -y0});
    FieldElem x0 = FieldElem::rational(F, 12) * n23;
    FieldElem y1 = FieldElem::rational(F, 36 * n);
    for (int i = 0; i < 3; i++) {
        FieldElem xi = x0;
        for (int t = 0; t < i; t++) xi = xi * w;
        out.push_back({xi, y1});
        out.push_back({xi, -y1});
    }
    return out;
}

// point counting over F_q (q prime, q = 1 mod 3 matters; else supersingular)
inline long ec_count_fp(long q, const mpz_class& k) {
    mpz_class km = k % q;
    if (km < 0) km += q;
    long kk = km.get_si();
    std::vector<uint8_t> issq(q, 0);
    for (long t = 0; t < q; t++) issq[(long)((__int128)t * t % q)] = 1;
    long count = 1;  // infinity
    for (long x = 0; x < q; x++) {
        long rhs = (long)(((__int128)x * x % q * x + kk) % q);
        if (rhs == 0) count += 1;
        else if (issq[rhs]) count += 2;
    }
    return count;
}

} // namespace sylv
