// Dense univariate polynomials over Q, plus a Durand-Kerner root finder for
// complex-embedded polynomials.
#pragma once

#include "sylvester/ball.hpp"
#include <gmpxx.h>
#include <vector>

namespace sylv {

// Coefficients low-to-high; invariant: no trailing zero (except the zero poly = empty).
using QPoly = std::vector<mpq_class>;

inline void qp_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
inline int qp_deg(const QPoly& p) { return (int)p.size() - 1; }

inline QPoly qp_add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), mpq_class(0));
    for (size_t i = 0; i < a.size(); i++) r[i] += a[i];
    for (size_t i = 0; i < b.size(); i++) r[i] += b[i];
    qp_trim(r);
    return r;
}
inline QPoly qp_neg(QPoly a) {
    for (auto& c : a) c = -c;
    return a;
}
inline QPoly qp_sub(const QPoly& a, const QPoly& b) { return qp_add(a, qp_neg(b)); }
inline QPoly qp_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); i++)
        for (size_t j = 0; j < b.size(); j++) r[i + j] += a[i] * b[j];
    qp_trim(r);
    return r;
}
inline QPoly qp_scale(QPoly a, const mpq_class& s) {
    for (auto& c : a) c *= s;
    qp_trim(a);
    return a;
}
inline mpq_class qp_eval(const QPoly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}
inline QPoly qp_derivative(const QPoly& p) {
    if (p.size() <= 1) return {};
    QPoly r(p.size() - 1);
    for (size_t i = 1; i < p.size(); i++) r[i - 1] = p[i] * (long)i;
    return r;
}
// Euclidean division, returns (quotient, remainder).
inline std::pair<QPoly, QPoly> qp_divmod(QPoly a, const QPoly& b) {
    if (b.empty()) throw std::domain_error("qp_divmod: division by zero poly");
    QPoly q;
    if (a.size() < b.size()) return {q, a};
    q.assign(a.size() - b.size() + 1, mpq_class(0));
    for (size_t i = a.size(); i-- >= b.size();) {
        if (i >= a.size()) continue;
        if (a[i] == 0) { if (i + 1 == b.size()) break; continue; }
        mpq_class f = a[i] / b.back();
        q[i - (b.size() - 1)] = f;
        for (size_t j = 0; j < b.size(); j++) a[i - (b.size() - 1) + j] -= f * b[j];
        if (i + 1 == b.size()) break;
    }
    qp_trim(a);
    qp_trim(q);
    return {q, a};
}
inline QPoly qp_gcd(QPoly a, QPoly b) {
    qp_trim(a); qp_trim(b);
    while (!b.empty()) {
        auto [q, r] = qp_divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        mpq_class lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

// Clear denominators and divide by integer content; sign normalized to
// positive leading coefficient. Returns integer coefficients.
inline std::vector<mpz_class> qp_primitive(const QPoly& p) {
    if (p.empty()) return {};
    mpz_class den = 1;
    for (const auto& c : p) {
        mpz_class d = c.get_den();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<mpz_class> z(p.size());
    mpz_class cont = 0;
    for (size_t i = 0; i < p.size(); i++) {
        mpq_class t = p[i] * den;
        z[i] = t.get_num();
        mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), z[i].get_mpz_t());
    }
    if (cont != 0)
        for (auto& c : z) c /= cont;
    if (!z.empty() && z.back() < 0)
        for (auto& c : z) c = -c;
    return z;
}

// ---------------------------------------------------------------------------
// Complex root finding (Durand-Kerner). Coefficients need not be monic.
// Returns all deg(p) roots at roughly the working precision of the input.
inline std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs_in) {
    int n = (int)coeffs_in.size() - 1;
    if (n < 1) return {};
    Prec p = 64;
    for (const auto& c : coeffs_in) p = std::max(p, c.prec());
    std::vector<Complex> a(coeffs_in);
    Complex lead = a[n];
    for (auto& c : a) c /= lead;

    auto eval = [&](const Complex& x) {
        Complex acc(0, p);
        for (int i = n; i >= 0; i--) acc = acc * x + a[i];
        return acc;
    };

    // Initial guesses on a circle of radius past the Cauchy bound, slightly
    // rotated so symmetric configurations do not stall.
    Real bound(1L, p);
    for (int i = 0; i < n; i++) bound = (a[i].abs() > bound) ? a[i].abs() : bound;
    bound = bound + 1;
    std::vector<Complex> z(n, Complex(p));
    Real two_pi = Real::pi(p) * 2;
    for (int i = 0; i < n; i++) {
        Real ang = two_pi * Real((double)i / n + 0.257, p);
        Real s(p), c(p);
        mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
        z[i] = Complex(bound * c, bound * s);
    }
    long target = -(long)p + 8;
    for (int iter = 0; iter < 500; iter++) {
        long worst = -(1L << 40);
        for (int i = 0; i < n; i++) {
            Complex num = eval(z[i]);
            Complex den(1, p);
            for (int j = 0; j < n; j++)
                if (j != i) den *= (z[i] - z[j]);
            if (den.is_zero()) den = Complex(Real(1e-30, p), Real(0L, p));
            Complex delta = num / den;
            z[i] -= delta;
            long de = delta.exponent() - std::max(z[i].exponent(), 0L);
            worst = std::max(worst, de);
        }
        if (worst < target) break;
    }
    return z;
}

inline std::vector<Complex> poly_roots_z(const std::vector<mpz_class>& zp, Prec p) {
    std::vector<Complex> c;
    c.reserve(zp.size());
    for (const auto& v : zp) c.emplace_back(Real(v, p), Real(0L, p));
    return poly_roots(c);
}

} // namespace sylv
