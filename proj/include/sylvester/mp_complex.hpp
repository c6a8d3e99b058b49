// Complex numbers over sylv::Real.
#pragma once

#include "sylvester/mp_real.hpp"

namespace sylv {

class Complex {
public:
    Real re, im;

    Complex() = default;
    explicit Complex(Prec p) : re(p), im(p) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(long r, Prec p) : re(r, p), im(0L, p) {}

    Prec prec() const { return std::max(re.prec(), im.prec()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    static Complex i(Prec p) { return Complex(Real(0L, p), Real(1L, p)); }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
    friend Complex operator*(const Real& s, const Complex& a) { return a * s; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    friend Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }
    Complex& operator+=(const Complex& b) { *this = *this + b; return *this; }
    Complex& operator-=(const Complex& b) { *this = *this - b; return *this; }
    Complex& operator*=(const Complex& b) { *this = *this * b; return *this; }
    Complex& operator/=(const Complex& b) { *this = *this / b; return *this; }

    Complex conj() const { return {re, -im}; }
    Real norm() const { return re * re + im * im; }
    Real abs() const { return hypot(re, im); }
    Real arg() const { return sylv::atan2(im, re); }
    long exponent() const { return std::max(re.exponent(), im.exponent()); }

    std::string str(size_t digits = 0) const {
        return re.str(digits) + (im.sign() < 0 ? " - " : " + ") + sylv::abs(im).str(digits) + "*I";
    }
};

inline Complex exp(const Complex& z) {
    Real m = exp(z.re);
    Real s(z.prec()), c(z.prec());
    mpfr_sin_cos(s.get(), c.get(), z.im.get(), MPFR_RNDN);
    return {m * c, m * s};
}
inline Complex log(const Complex& z) { return {log(z.abs()), z.arg()}; }
// Principal square root.
inline Complex sqrt(const Complex& z) {
    if (z.im.is_zero() && z.re.sign() >= 0) return {sqrt(z.re), Real(0L, z.prec())};
    Real r = z.abs();
    Real u = sqrt((r + z.re) / 2);
    Real v = sqrt((r - z.re) / 2);
    if (z.im.sign() < 0) v = -v;
    return {u, v};
}
// Principal power z^(p/q) via exp((p/q) log z).
inline Complex pow_frac(const Complex& z, long p, long q) {
    Complex l = log(z);
    Real f(l.prec());
    mpfr_set_si(f.get(), p, MPFR_RNDN);
    mpfr_div_si(f.get(), f.get(), q, MPFR_RNDN);
    return exp(Complex{l.re * f, l.im * f});
}
inline Complex pow_si(const Complex& z, long n) {
    if (n == 0) return Complex(1, z.prec());
    bool inv = n < 0;
    unsigned long e = inv ? -(unsigned long)n : (unsigned long)n;
    Complex acc(1, z.prec()), base = z;
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    if (inv) return Complex(1, z.prec()) / acc;
    return acc;
}

} // namespace sylv
