// Complex balls: a floating-point center plus an explicit radius bound kept
// as a base-2 logarithm. Radius propagation is first-order with two guard
// bits of slack per operation, which the soundness suite checks empirically.
#pragma once

#include "sylvester/mp_complex.hpp"
#include <algorithm>
#include <limits>

namespace sylv {

constexpr double kExactRadius = -1e300;  // log2 radius of an exact value

inline double mag_add(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b <= kExactRadius / 2) return a;
    return a + std::log2(1.0 + std::exp2(b - a));
}

class Ball {
public:
    Complex c;
    double rad_l2 = kExactRadius;

    Ball() = default;
    explicit Ball(Prec p) : c(p) {}
    Ball(Complex z, double r) : c(std::move(z)), rad_l2(r) {}
    // Center rounded from an exact quantity: radius one ulp.
    static Ball from_rounded(Complex z) {
        double r = (double)z.exponent() - (double)z.prec() + 1;
        return Ball(std::move(z), r);
    }
    static Ball exact(Complex z) { return Ball(std::move(z), kExactRadius); }
    static Ball exact_q(const mpq_class& re, const mpq_class& im, Prec p) {
        Ball b(Complex(Real(re, p), Real(im, p)), 0);
        b.rad_l2 = (double)b.c.exponent() - (double)p + 1;
        return b;
    }

    Prec prec() const { return c.prec(); }
    // log2 of an upper bound for |center|.
    double mag_upper() const { return (double)c.exponent(); }
    double ulp() const { return mag_upper() - (double)prec() + 2; }
    // True when 0 is contained in the ball.
    bool contains_zero() const { return mag_upper() - 1 <= rad_l2; }
    // Relative accuracy in bits (how many bits of the center are trustworthy).
    double accuracy_bits() const { return mag_upper() - rad_l2; }

    friend Ball operator+(const Ball& a, const Ball& b) {
        Ball r(a.c + b.c, 0);
        r.rad_l2 = mag_add(mag_add(a.rad_l2, b.rad_l2), r.ulp());
        return r;
    }
    friend Ball operator-(const Ball& a, const Ball& b) {
        Ball r(a.c - b.c, 0);
        r.rad_l2 = mag_add(mag_add(a.rad_l2, b.rad_l2), r.ulp());
        return r;
    }
    friend Ball operator-(const Ball& a) { return Ball(-a.c, a.rad_l2); }
    friend Ball operator*(const Ball& a, const Ball& b) {
        Ball r(a.c * b.c, 0);
        double cross = mag_add(a.mag_upper() + b.rad_l2, b.mag_upper() + a.rad_l2);
        r.rad_l2 = mag_add(mag_add(cross, a.rad_l2 + b.rad_l2), r.ulp());
        return r;
    }
    friend Ball operator/(const Ball& a, const Ball& b) {
        if (b.contains_zero()) throw std::domain_error("Ball division by ball containing zero");
        Ball r(a.c / b.c, 0);
        double binv = -(b.mag_upper() - 1);  // log2 upper bound of 1/|b|
        double rel = mag_add(a.rad_l2 + binv, a.mag_upper() + b.rad_l2 + 2 * binv);
        r.rad_l2 = mag_add(rel + 1, r.ulp());
        return r;
    }
    Ball& operator+=(const Ball& b) { *this = *this + b; return *this; }
    Ball& operator-=(const Ball& b) { *this = *this - b; return *this; }
    Ball& operator*=(const Ball& b) { *this = *this * b; return *this; }
    Ball& operator/=(const Ball& b) { *this = *this / b; return *this; }

    Ball conj() const { return Ball(c.conj(), rad_l2); }

    bool overlaps(const Ball& o) const {
        Ball d = *this - o;
        return d.contains_zero();
    }
};

inline Ball sqrt(const Ball& z) {
    if (z.contains_zero()) {
        Ball r(sqrt(z.c), 0);
        r.rad_l2 = mag_add(mag_add(z.rad_l2, z.mag_upper()) / 2 + 1, r.ulp());
        return r;
    }
    Ball r(sqrt(z.c), 0);
    // d sqrt = r / (2 sqrt|z|), |z| >= 2^(exp-1)
    r.rad_l2 = mag_add(z.rad_l2 - (z.mag_upper() - 1) / 2 - 1 + 1, r.ulp());
    return r;
}
inline Ball exp(const Ball& z) {
    Ball r(exp(z.c), 0);
    r.rad_l2 = mag_add(r.mag_upper() + z.rad_l2 + 1, r.ulp());
    return r;
}
inline Ball log(const Ball& z) {
    if (z.contains_zero()) throw std::domain_error("Ball log of ball containing zero");
    Ball r(log(z.c), 0);
    r.rad_l2 = mag_add(z.rad_l2 - (z.mag_upper() - 1) + 1, r.ulp());
    return r;
}
inline Ball pow_si(const Ball& z, long n) {
    if (n == 0) return Ball::exact(Complex(1, z.prec()));
    bool inv = n < 0;
    unsigned long e = inv ? -(unsigned long)n : (unsigned long)n;
    Ball acc = Ball::exact(Complex(1, z.prec()));
    Ball base = z;
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    if (inv) return Ball::exact(Complex(1, z.prec())) / acc;
    return acc;
}
inline Ball pow_frac(const Ball& z, long p, long q) {
    Ball l = log(z);
    Ball f = Ball::exact_q(mpq_class(p, q), 0, z.prec());
    return exp(l * f);
}

} // namespace sylv
