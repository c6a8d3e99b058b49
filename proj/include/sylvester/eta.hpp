// Dedekind eta: q-product evaluation, exact fundamental-domain reduction of
// imaginary quadratic points, and the full SL2(Z) multiplier system via
// Dedekind sums so eta quotients can be evaluated at conjugate CM points.
#pragma once

#include "sylvester/ball.hpp"
#include "sylvester/lll.hpp"
#include <gmpxx.h>
#include <array>

namespace sylv {

struct PrecisionOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact point x + y*sqrt(-D) of an imaginary quadratic field.
struct Surd {
    mpq_class x, y;
    mpz_class D;  // positive

    Surd() : D(1) {}
    Surd(mpq_class x_, mpq_class y_, mpz_class D_) : x(std::move(x_)), y(std::move(y_)), D(std::move(D_)) {
        x.canonicalize();
        y.canonicalize();
    }

    // tau = u + v*omega, omega = (-1+sqrt(-3))/2
    static Surd from_omega_coords(const mpq_class& u, const mpq_class& v) {
        return Surd(u - v / 2, v / 2, 3);
    }
    bool in_upper_half() const { return y > 0; }
    mpq_class norm() const { return x * x + y * y * mpq_class(D); }

    friend Surd operator+(const Surd& a, const Surd& b) { return {a.x + b.x, a.y + b.y, a.D}; }
    friend Surd operator-(const Surd& a, const Surd& b) { return {a.x - b.x, a.y - b.y, a.D}; }
    friend Surd operator*(const Surd& a, const Surd& b) {
        return {a.x * b.x - a.y * b.y * mpq_class(a.D), a.x * b.y + a.y * b.x, a.D};
    }
    Surd inv() const {
        mpq_class n = norm();
        if (n == 0) throw std::domain_error("Surd: inverse of zero");
        return {x / n, -y / n, D};
    }
    friend Surd operator/(const Surd& a, const Surd& b) { return a * b.inv(); }
    Surd scaled(const mpq_class& s) const { return {x * s, y * s, D}; }

    Complex embed(Prec p) const {
        Real sq = sqrt(Real(mpz_class(D), p));
        return {Real(x, p), Real(y, p) * sq};
    }
    bool operator==(const Surd& o) const { return x == o.x && y == o.y && D == o.D; }
};

struct Mat22 {
    mpz_class a = 1, b = 0, c = 0, d = 1;
    mpz_class det() const { return a * d - b * c; }
    friend Mat22 operator*(const Mat22& m, const Mat22& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
    Mat22 inv_unimodular() const {
        // valid for det = +-1
        mpz_class e = det();
        return {d * e, -b * e, -c * e, a * e};
    }
    Surd apply(const Surd& t) const {
        Surd num{mpq_class(a) * t.x + mpq_class(b), mpq_class(a) * t.y, t.D};
        Surd den{mpq_class(c) * t.x + mpq_class(d), mpq_class(c) * t.y, t.D};
        return num / den;
    }
};

inline mpz_class round_q(const mpq_class& q) {
    mpq_class t = q + mpq_class(1, 2);
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    return f;
}

// Gauss reduction into |Re| <= 1/2, |tau| >= 1. Returns (tau', gamma) with
// tau' = gamma(tau), det gamma = 1.
inline std::pair<Surd, Mat22> reduce_to_fundamental(const Surd& tau0) {
    if (!tau0.in_upper_half()) throw std::domain_error("reduce_to_fundamental: Im tau <= 0");
    Surd t = tau0;
    Mat22 g;
    for (int iter = 0; iter < 10000; iter++) {
        mpz_class n = round_q(t.x);
        if (n != 0) {
            t.x -= mpq_class(n);
            g = Mat22{1, -n, 0, 1} * g;
        }
        if (t.norm() < 1) {
            mpq_class nm = t.norm();
            t = Surd{-t.x / nm, t.y / nm, t.D};  // -1/t
            g = Mat22{0, -1, 1, 0} * g;
        } else {
            return {t, g};
        }
    }
    throw std::runtime_error("reduce_to_fundamental: did not terminate");
}

// Dedekind sum s(h, k) for k >= 1, gcd(h, k) = 1, via the reciprocity law.
inline mpq_class dedekind_s(mpz_class h, mpz_class k) {
    if (k <= 0) throw std::domain_error("dedekind_s: k must be positive");
    bool neg = false;
    h %= k;
    if (h < 0) h += k;
    mpq_class acc = 0;
    // s(h,k) + s(k,h) = -1/4 + (h/k + k/h + 1/(hk)) / 12
    int sign = 1;
    for (int iter = 0; iter < 100000; iter++) {
        if (k == 1) return neg ? -acc : acc;
        if (h == 0) throw std::domain_error("dedekind_s: gcd(h,k) != 1");
        mpq_class rec = mpq_class(-1, 4) +
                        (mpq_class(h) / mpq_class(k) + mpq_class(k) / mpq_class(h) +
                         mpq_class(1) / (mpq_class(h) * mpq_class(k))) / 12;
        acc += sign * rec;
        mpz_class h2 = k % h;
        k = h;
        h = h2;
        sign = -sign;
    }
    throw std::runtime_error("dedekind_s: did not terminate");
}

// eta(tau) by the raw q-product; requires Im(tau) large enough for the
// product to converge within budget.
inline Ball eta_q_product(const Surd& tau, Prec prec) {
    if (!tau.in_upper_half()) throw std::domain_error("eta: Im tau <= 0");
    if (prec < 64) throw std::invalid_argument("eta: prec >= 64 required");
    Complex t = tau.embed(prec + 32);
    Real im2pi = t.im * Real::pi(prec + 32) * 2;
    // terms until |q|^n < 2^-(prec+16)
    double im_log2 = im2pi.to_double() / std::log(2.0);
    double need = (double)(prec + 16) / im_log2;
    if (need > 4e6) throw PrecisionOverflow("eta: q-product needs too many terms; reduce tau first");
    long nmax = (long)need + 2;

    Complex two_pi_i_tau = Complex(Real(0L, prec + 32), Real(1L, prec + 32)) * t * (Real::pi(prec + 32) * 2);
    Ball q = Ball::from_rounded(exp(two_pi_i_tau));
    Ball q24 = Ball::from_rounded(exp(two_pi_i_tau / Real(24L, prec + 32)));

    Ball prod = Ball::exact(Complex(1, prec + 32));
    Ball qn = q;
    Ball one = Ball::exact(Complex(1, prec + 32));
    for (long n = 1; n <= nmax; n++) {
        prod *= (one - qn);
        if (qn.mag_upper() < -(double)(prec + 16)) break;
        qn *= q;
    }
    // tail: remaining factors differ from 1 by at most 2|q|^(nmax+1)
    prod.rad_l2 = mag_add(prod.rad_l2, prod.mag_upper() + qn.mag_upper() + 2);
    return q24 * prod;
}

// Multiplier eta(gamma tau) = eps(gamma) * (-i(c tau + d))^(1/2) * eta(tau),
// eps = exp(pi i ((a+d)/(12c) + s(-d,c))), for c > 0 (Apostol Thm 3.4).
// Handles c = 0 as a translation.
inline Ball eta_multiplier_times_sqrt(const Mat22& m, const Surd& tau, Prec prec) {
    mpz_class a = m.a, b = m.b, c = m.c, d = m.d;
    if (c == 0) {
        // a = d = +-1; eta(tau + b') with b' = b/d
        mpz_class shift = b * d;  // b/d since d = +-1
        mpq_class e = mpq_class(shift) / 12;
        Real ang = Real(e, prec) * Real::pi(prec);
        Real s(prec), co(prec);
        mpfr_sin_cos(s.get(), co.get(), ang.get(), MPFR_RNDN);
        return Ball::from_rounded(Complex(co, s));
    }
    if (c < 0) { a = -a; b = -b; c = -c; d = -d; }
    mpq_class arg = (mpq_class(a + d) / mpq_class(12 * c)) - dedekind_s(d, c);
    Real ang = Real(arg, prec) * Real::pi(prec);
    Real s(prec), co(prec);
    mpfr_sin_cos(s.get(), co.get(), ang.get(), MPFR_RNDN);
    Ball eps = Ball::from_rounded(Complex(co, s));
    // (-i (c tau + d))^(1/2)
    Complex ct = Surd{mpq_class(c) * tau.x + mpq_class(d), mpq_class(c) * tau.y, tau.D}.embed(prec);
    Complex mi_ct{ct.im, -ct.re};
    return eps * sqrt(Ball::from_rounded(mi_ct));
}

// eta at an arbitrary upper-half-plane point: reduce to the fundamental
// domain, evaluate the q-product there, and undo the transformation.
inline Ball eta_anywhere(const Surd& tau, Prec prec) {
    auto [taured, g] = reduce_to_fundamental(tau);
    Ball base = eta_q_product(taured, prec);
    // tau = g^{-1}(taured): eta(tau) = eps(g^{-1}) sqrt(-i(c taured + d)) eta(taured)
    Mat22 gi = g.inv_unimodular();
    Ball fac = eta_multiplier_times_sqrt(gi, taured, prec);
    return fac * base;
}

// Direct evaluation, reducing first only if clearly needed. Kept as the
// spec-facing primitive; the oracle tests compare it with eta_q_product.
inline Ball eta(const Surd& tau, Prec prec) { return eta_q_product(tau, prec); }

} // namespace sylv
