// Real periods and period lattices of Mordell curves y^2 = x^3 + k (k < 0):
// the cubic's roots are e1, e1 w, e1 w^2, so the real period reduces to a
// single AGM through Carlson's R_F(0, x, conj x) = pi / (2 M(sqrt x, sqrt y)).
// The lattice is hexagonal (CM by Z[omega]); its orientation is pinned by
// matching Delta(Lambda) against the model discriminant.
#pragma once

#include "sylvester/localmin.hpp"
#include "sylvester/qpoly.hpp"

namespace sylv {

struct PeriodData {
    Real omega1;     // real period of the given model
    Complex omega2;  // second basis period, Im > 0 orientation
    Prec prec;
};

// real AGM
inline Real agm_real(Real a, Real g) {
    Prec p = std::max(a.prec(), g.prec());
    Real eps = ldexp(Real(1L, p), -(long)p + 8);
    for (int i = 0; i < 10000; i++) {
        Real an = (a + g) / 2;
        Real gn = sqrt(a * g);
        if (abs(an - gn) < eps * abs(an)) return an;
        a = an;
        g = gn;
    }
    throw std::runtime_error("agm_real: no convergence");
}

// Delta(Lambda) = (2 pi / w1)^12 q prod (1-q^n)^24, q = e^(2 pi i w2/w1)
inline Complex lattice_delta(const Complex& w1, const Complex& w2, Prec p) {
    Complex tau = w2 / w1;
    if (tau.im.sign() < 0) tau = -tau;
    Complex q = exp(Complex(-tau.im, tau.re) * (Real::pi(p) * 2));  // e^{2 pi i tau}
    Complex prod(1, p);
    Complex qn = q;
    for (long n = 1; n <= 100000; n++) {
        Complex f = Complex(1, p) - qn;
        prod = prod * pow_si(f, 24);
        qn = qn * q;
        if (qn.exponent() < -(long)p - 16) break;
    }
    Complex c = pow_si(Complex(Real(2L, p) * Real::pi(p), Real(0L, p)) / w1, 12);
    return c * q * prod;
}

// Period of the model y^2 = x^3 + k, k < 0 integer (one real component).
inline PeriodData periods_pure_model(const mpz_class& k, Prec prec) {
    if (k >= 0) throw std::domain_error("periods_pure_model: expects k < 0");
    Prec p = prec + 32;
    Real e1 = root(Real(mpz_class(-k), p), 3);  // real root of x^3 + k
    // e1 - e1 w = e1 (1 - w) = e1 (3/2 - i sqrt(3)/2); conjugate pair
    Real s3 = sqrt(Real(3L, p));
    Complex z{e1 * Real(mpq_class(3, 2), p), -e1 * s3 / 2};
    Complex sz = sqrt(z);
    // M(sqrt z, conj sqrt z): after one step the AGM is real
    Real a1 = sz.re;
    Real g1 = sqrt(z.abs());
    Real M = agm_real(a1, g1);
    PeriodData out;
    out.prec = prec;
    // 2 pi / M is the integral of |dx/y|; the lattice of dx/2y is half that
    out.omega1 = Real::pi(p) / M;
    // hexagonal lattice: w2 = w1 (1 + sqrt(-3))/2 up to orientation
    Complex cand1{out.omega1 / 2, out.omega1 * s3 / 2};
    Complex model_delta{Real(mpz_class(mpz_class(-432) * k * k), p), Real(0L, p)};
    Complex d1 = lattice_delta(Complex(out.omega1, Real(0L, p)), cand1, p);
    Real err1 = (d1 - model_delta).abs();
    Complex cand2 = cand1.conj();
    Complex d2 = lattice_delta(Complex(out.omega1, Real(0L, p)), -cand2, p);
    Real err2 = (d2 - model_delta).abs();
    Real tol = ldexp(model_delta.abs(), -(long)prec / 2);
    if (err1 < tol) {
        out.omega2 = cand1;
    } else if (err2 < tol) {
        out.omega2 = -cand2;
    } else {
        throw std::runtime_error("periods_pure_model: lattice orientation mismatch");
    }
    return out;
}

// Minimal real period of E_n (periods of the global minimal model).
inline PeriodData real_period_en(const mpq_class& n, Prec prec) {
    mpq_class nn = n;
    nn.canonicalize();
    mpz_class a = nn.get_num(), b = nn.get_den();
    mpz_class kz = -432 * a * a * b * b * b * b;  // integral pure model
    MinimalModelQ mm = minimal_model_en(nn);
    PeriodData pd = periods_pure_model(kz, prec);
    // x = u^2 x' scaling multiplies dx/2y periods by u
    Real u(mm.u, prec + 32);
    pd.omega1 = pd.omega1 * u;
    pd.omega2 = pd.omega2 * u;
    return pd;
}

// Quadrature oracle for the real period of y^2 = x^3 + k (test support):
// 2 * int_{e1}^inf dx / sqrt(x^3 + k), split smoothly at 2 e1.
inline Real real_period_quadrature(const mpz_class& k, Prec prec, long panels = 1 << 12) {
    Prec p = prec + 16;
    Real e1 = root(Real(mpz_class(-k), p), 3);
    auto Q = [&](const Real& x) { return x * x + x * e1 + e1 * e1; };
    // near part: x = e1 + u^2, integrand 2/sqrt(Q(e1+u^2)), u in [0, sqrt(e1)]
    auto f1 = [&](const Real& u) { return Real(2L, p) / sqrt(Q(e1 + u * u)); };
    // tail: x = v^(-2), integrand 2/sqrt(1 + k v^6), v in (0, 1/sqrt(2 e1)]
    auto f2 = [&](const Real& v) {
        Real v6 = pow_si(v, 6);
        return Real(2L, p) / sqrt(Real(1L, p) + Real(k, p) * v6);
    };
    auto simpson = [&](auto&& f, const Real& lo, const Real& hi) {
        Real h = (hi - lo) / (2 * panels);
        Real acc = f(lo) + f(hi);
        for (long i = 1; i < 2 * panels; i++) acc += f(lo + h * i) * ((i % 2) ? 4 : 2);
        return acc * h / 3;
    };
    Real I1 = simpson(f1, Real(0L, p), sqrt(e1));
    Real I2 = simpson(f2, Real(0L, p), Real(1L, p) / sqrt(2 * e1));
    return (I1 + I2) * 2;
}

} // namespace sylv
