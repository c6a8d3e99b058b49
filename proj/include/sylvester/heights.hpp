// Neron-Tate heights on Mordell curves for points over Q and over K.
// Decomposition: one archimedean local height per infinite place (sigma
// function on the period lattice), the denominator-ideal part collected
// globally, and corrections at bad primes computed on local minimal models
// through the quasi-parallelogram law with division-polynomial values.
// Normalization: hhat(P) = (1/2) lim 4^(-n) h(x([2^n] P)).
#pragma once

#include "sylvester/periods.hpp"
#include "sylvester/mordell.hpp"
#include <optional>

namespace sylv {

// ---------------------------------------------------------------------------
// exact points on a general Weierstrass model, coordinates in T (mpq or EisQ)

template <class T>
struct WPt {
    bool inf = true;
    T x{}, y{};
    WPt() = default;
    WPt(T x_, T y_) : inf(false), x(std::move(x_)), y(std::move(y_)) {}
};

template <class T>
struct WCurveT {
    T a1, a2, a3, a4, a6;
    template <class E>
    static WCurveT from_model(const WModel<E>& m) {
        return {T(m.a1), T(m.a2), T(m.a3), T(m.a4), T(m.a6)};
    }
};

template <class T>
WPt<T> w_neg(const WCurveT<T>& E, const WPt<T>& P) {
    if (P.inf) return P;
    return {P.x, -P.y - E.a1 * P.x - E.a3};
}

template <class T>
WPt<T> w_add(const WCurveT<T>& E, const WPt<T>& P, const WPt<T>& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    T lam, nu;
    if (P.x == Q.x) {
        T negQy = -Q.y - E.a1 * Q.x - E.a3;
        if (P.y == negQy) return WPt<T>();
        T num = T(3) * P.x * P.x + T(2) * E.a2 * P.x + E.a4 - E.a1 * P.y;
        T den = T(2) * P.y + E.a1 * P.x + E.a3;
        lam = num / den;
    } else {
        lam = (Q.y - P.y) / (Q.x - P.x);
    }
    nu = P.y - lam * P.x;
    T x3 = lam * lam + E.a1 * lam - E.a2 - P.x - Q.x;
    T y3 = -(lam + E.a1) * x3 - nu - E.a3;
    return {x3, y3};
}

template <class T>
WPt<T> w_mul(const WCurveT<T>& E, long n, WPt<T> P) {
    if (n < 0) { n = -n; P = w_neg(E, P); }
    WPt<T> R;
    while (n > 0) {
        if (n & 1) R = w_add(E, R, P);
        P = w_add(E, P, P);
        n >>= 1;
    }
    return R;
}

// division polynomial values psi_m(P) up to m = 14
template <class T>
std::vector<T> psi_values(const WCurveT<T>& E, const WPt<T>& P, int mmax = 14) {
    T x = P.x, y = P.y;
    T b2 = E.a1 * E.a1 + T(4) * E.a2;
    T b4 = T(2) * E.a4 + E.a1 * E.a3;
    T b6 = E.a3 * E.a3 + T(4) * E.a6;
    T b8 = E.a1 * E.a1 * E.a6 + T(4) * E.a2 * E.a6 - E.a1 * E.a3 * E.a4 + E.a2 * E.a3 * E.a3 -
           E.a4 * E.a4;
    std::vector<T> psi(mmax + 1, T(0));
    psi[0] = T(0);
    psi[1] = T(1);
    psi[2] = T(2) * y + E.a1 * x + E.a3;
    psi[3] = T(3) * x * x * x * x + b2 * x * x * x + T(3) * b4 * x * x + T(3) * b6 * x + b8;
    T x6 = x * x * x * x * x * x, x5 = x * x * x * x * x, x4 = x * x * x * x, x3 = x * x * x,
      x2 = x * x;
    psi[4] = psi[2] * (T(2) * x6 + b2 * x5 + T(5) * b4 * x4 + T(10) * b6 * x3 + T(10) * b8 * x2 +
                       (b2 * b8 - b4 * b6) * x + (b4 * b8 - b6 * b6));
    for (int m = 2; 2 * m + 1 <= mmax || 2 * m <= mmax; m++) {
        if (2 * m + 1 <= mmax && m + 2 <= mmax)
            psi[2 * m + 1] = psi[m + 2] * psi[m] * psi[m] * psi[m] -
                             psi[m - 1] * psi[m + 1] * psi[m + 1] * psi[m + 1];
        if (2 * m <= mmax && m + 2 <= mmax && m >= 3)
            psi[2 * m] = psi[m] *
                         (psi[m + 2] * psi[m - 1] * psi[m - 1] - psi[m - 2] * psi[m + 1] * psi[m + 1]) /
                         psi[2];
    }
    return psi;
}

// ---------------------------------------------------------------------------
// valuations and residues of field elements

inline long val_q(const mpq_class& x, const mpz_class& p) {
    if (x == 0) return 1 << 20;
    ZLocal z{p};
    return z.val(x.get_num()) - z.val(x.get_den());
}
inline long val_eisq(const EisQ& x, const EisInt& pi) {
    if (x.is_zero()) return 1 << 20;
    mpz_class d = x.a.get_den();
    mpz_class l = x.b.get_den();
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), l.get_mpz_t());
    EisInt num{mpz_class(x.a.get_num() * (d / x.a.get_den())),
               mpz_class(x.b.get_num() * (d / x.b.get_den()))};
    return eis_valuation(num, pi) - eis_valuation(EisInt{d, 0}, pi);
}

// residue of a v-integral element
inline FqEl res_q(const mpq_class& x, const ZLocal& z) {
    mpz_class num = x.get_num(), den = x.get_den();
    long vd = z.val(den);
    if (vd > 0) {
        mpz_class pv = pow_pi(z.p, vd);
        if (z.val(num) < vd) throw std::domain_error("res_q: not integral");
        num = exact_div(num, pv);
        den = exact_div(den, pv);
    }
    return z.to_res(num) * z.to_res(den).inv();
}
inline FqEl res_eisq(const EisQ& x, const KLocal& kl) {
    mpz_class d = x.a.get_den();
    mpz_class l = x.b.get_den();
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), l.get_mpz_t());
    EisInt num{mpz_class(x.a.get_num() * (d / x.a.get_den())),
               mpz_class(x.b.get_num() * (d / x.b.get_den()))};
    EisInt den{d, 0};
    long vd = kl.val(den);
    if (vd > 0) {
        EisInt pv = pow_pi(kl.pi(), vd);
        if (kl.val(num) < vd) throw std::domain_error("res_eisq: not integral");
        num = exact_div(num, pv);
        den = exact_div(den, pv);
    }
    return kl.to_res(num) * kl.to_res(den).inv();
}

// ---------------------------------------------------------------------------
// archimedean local height

struct ArchLattice {
    Complex w1, w2;     // basis, Im(w2/w1) > 0
    Complex eta1, eta2; // quasi-periods
    Real abs_disc;      // |Delta| of the model (= |Delta(Lambda)|)
    Prec p;
};

// quasi-period eta1 = (pi^2 / (3 w1)) E_2(q), q = e^(2 pi i w2/w1);
// eta2 from the Legendre relation eta1 w2 - eta2 w1 = 2 pi i.
inline ArchLattice arch_lattice(const Complex& w1, const Complex& w2, const Real& abs_disc, Prec p) {
    ArchLattice L;
    L.w1 = w1; L.w2 = w2; L.abs_disc = abs_disc; L.p = p;
    Complex tau = w2 / w1;
    if (tau.im.sign() <= 0) throw std::domain_error("arch_lattice: need Im(w2/w1) > 0");
    Complex q = exp(Complex(-tau.im, tau.re) * (Real::pi(p) * 2));
    Complex e2(1, p);
    Complex qn = q;
    for (long n = 1; n < 100000; n++) {
        // -24 n q^n / (1 - q^n)
        e2 = e2 - Complex(Real(24L * n, p), Real(0L, p)) * qn / (Complex(1, p) - qn);
        qn = qn * q;
        if (qn.exponent() < -(long)p - 16) break;
    }
    Real pi = Real::pi(p);
    L.eta1 = Complex(pi * pi, Real(0L, p)) * e2 / (Complex(Real(3L, p), Real(0L, p)) * w1);
    // eta2 = (eta1 w2 - 2 pi i) / w1
    L.eta2 = (L.eta1 * w2 - Complex(Real(0L, p), 2 * pi)) / w1;
    return L;
}

// sigma(z; Lambda) by the q-product
inline Complex sigma_fn(const ArchLattice& L, const Complex& z) {
    Prec p = L.p;
    Real two_pi = Real::pi(p) * 2;
    Complex tau = L.w2 / L.w1;
    Complex q = exp(Complex(-tau.im, tau.re) * two_pi);
    Complex zw = z / L.w1;
    Complex u = exp(Complex(-zw.im, zw.re) * two_pi);
    Complex uh = exp(Complex(-zw.im, zw.re) * Real::pi(p));
    Complex pref = L.w1 / Complex(Real(0L, p), two_pi);  // w1 / (2 pi i)
    Complex quad = exp(L.eta1 * z * z / (L.w1 * Real(2L, p)));
    Complex prod = uh - Complex(1, p) / uh;
    Complex qn = q;
    Complex uinv = Complex(1, p) / u;
    for (long n = 1; n < 100000; n++) {
        Complex f = (Complex(1, p) - qn * u) * (Complex(1, p) - qn * uinv);
        Complex g = Complex(1, p) - qn;
        prod = prod * f / (g * g);
        qn = qn * q;
        if (qn.exponent() < -(long)p - 16) break;
    }
    return pref * quad * prod;
}

// lambda_inf(P) = -log | Delta^(1/12) e^(-z eta(z)/2) sigma(z) |, eta the
// real-linear quasi-period pairing; z reduced into the fundamental cell.
inline Real arch_local_height(const ArchLattice& L, Complex z) {
    Prec p = L.p;
    // solve z = s w1 + t w2 over R
    Real det = L.w1.re * L.w2.im - L.w1.im * L.w2.re;
    Real s = (z.re * L.w2.im - z.im * L.w2.re) / det;
    Real t = (L.w1.re * z.im - L.w1.im * z.re) / det;
    mpz_class sr = s.round_to_int(), tr = t.round_to_int();
    s = s - Real(sr, p);
    t = t - Real(tr, p);
    z = L.w1 * s + L.w2 * t;
    Complex etaz = L.eta1 * s + L.eta2 * t;
    Complex f = exp(-(z * etaz) / Real(2L, p)) * sigma_fn(L, z);
    Real d12 = exp(log(L.abs_disc) / 12);
    return -log(d12 * f.abs());
}

// elliptic logarithm by halving descent: returns z with weierstrass-x(z) = x.
inline Complex elliptic_log_x(const ArchLattice& L, const mpz_class& k, Complex x, Prec prec) {
    Prec p = prec + 96;
    long target_exp = (long)(p / 9) + 8;
    Complex kc{Real(k, p), Real(0L, p)};
    int halvings = 0;
    while (x.exponent() < target_exp && halvings < 2000) {
        // roots of T^4 - 4 x T^3 - 8 k T - 4 k x
        std::vector<Complex> coef{
            Complex(Real(-4L, p), Real(0L, p)) * kc * x,
            Complex(Real(-8L, p), Real(0L, p)) * kc,
            Complex(0, p),
            Complex(Real(-4L, p), Real(0L, p)) * x,
            Complex(1, p)};
        auto roots = poly_roots(coef);
        Complex best = roots[0];
        for (auto& r : roots)
            if (r.abs() > best.abs()) best = r;
        x = best;
        halvings++;
    }
    // z = x^(-1/2) (1 + a1 x^(-3) + a2 x^(-6)), a1 = -k/14, a2 = -61 k^2/5096
    Complex xi = Complex(1, p) / x;
    Complex xi3 = xi * xi * xi;
    Complex a1{Real(mpq_class(-k, 14), p), Real(0L, p)};
    Complex a2{Real(mpq_class(-61 * k * k, 5096), p), Real(0L, p)};
    Complex z = sqrt(xi) * (Complex(1, p) + a1 * xi3 + a2 * xi3 * xi3);
    for (int i = 0; i < halvings; i++) z = z + z;
    return z;
}

// ---------------------------------------------------------------------------
// finite local height at a bad prime (after moving to the local minimal model)

// local height in units of log(q_v), normalization with the v(Delta)/12 term
template <class Ctx, class T, class ValFn, class ResFn>
mpq_class local_height_units(const Ctx& cx, const WModel<typename Ctx::Elem>& minmodel,
                             const WPt<T>& P, ValFn val, ResFn res) {
    WCurveT<T> E = WCurveT<T>::template from_model<typename Ctx::Elem>(minmodel);
    long vD = cx.val(minmodel.disc());
    auto closed_form = [&](const WPt<T>& Q) -> std::optional<mpq_class> {
        if (Q.inf) return std::nullopt;
        long vx = val(Q.x);
        if (vx < 0) return mpq_class(-vx, 2) + mpq_class(vD, 12);
        // integral: singular iff both partials vanish at the reduction
        FqEl xr = res(Q.x), yr = res(Q.y);
        FqEl a1 = cx.to_res(minmodel.a1), a2 = cx.to_res(minmodel.a2), a3 = cx.to_res(minmodel.a3),
             a4 = cx.to_res(minmodel.a4);
        uint64_t rp = cx.res_p();
        FqEl Fy = FqEl(rp, 2) * yr + a1 * xr + a3;
        FqEl Fx = FqEl(rp, 3) * xr * xr + FqEl(rp, 2) * a2 * xr + a4 - a1 * yr;
        if (Fy.is_zero() && Fx.is_zero()) return std::nullopt;  // singular reduction
        return mpq_class(vD, 12);
    };
    if (auto l = closed_form(P)) return *l;
    auto psis = psi_values(E, P, 14);
    for (long m : {2L, 3L, 4L, 6L, 12L}) {
        WPt<T> Q = w_mul(E, m, P);
        if (Q.inf) continue;
        auto lq = closed_form(Q);
        if (!lq) continue;
        long vpsi = val(psis[m]);
        // l(P) = ( l(mP) - v(psi_m(P)) + ((m^2 - 1)/12) vD ) / m^2
        mpq_class num = *lq - mpq_class(vpsi) + mpq_class((m * m - 1) * vD, 12);
        return num / (m * m);
    }
    throw std::runtime_error("local_height_units: no nonsingular multiple found");
}

// ---------------------------------------------------------------------------
// global canonical heights

namespace detail {

// correction at one bad prime over Q
inline Real height_correction_q(const mpz_class& k, const WPt<mpq_class>& P, const mpz_class& p,
                                Prec prec) {
    ZLocal z{p};
    QModel pure;
    pure.a6 = k;
    QModel minm;
    WTransform<mpz_class> tr;
    tate_local(pure, z, &minm, &tr);
    // move the point
    mpq_class u2 = mpq_class(tr.u * tr.u);
    mpq_class xs = (P.x - tr.r) / u2;
    mpq_class ys = (P.y - tr.s * (P.x - mpq_class(tr.r)) - tr.t) / (u2 * mpq_class(tr.u));
    xs.canonicalize(); ys.canonicalize();
    WPt<mpq_class> Pm{xs, ys};
    mpq_class ltrue = local_height_units(
        z, minm, Pm, [&](const mpq_class& v) { return val_q(v, p); },
        [&](const mpq_class& v) { return res_q(v, z); });
    long vx = val_q(P.x, p);
    long vD = z.val(mpz_class(-432) * k * k);
    mpq_class base = mpq_class(std::max(0L, -vx), 2) + mpq_class(vD, 12);
    mpq_class corr = ltrue - base;
    return Real(corr, prec) * log(Real(p, prec));
}

inline Real height_correction_k(const mpz_class& k, const WPt<EisQ>& P, const EisInt& pi,
                                Prec prec) {
    KLocal kl = KLocal::at(pi);
    KModel pure;
    pure.a6 = EisInt{k, 0};
    KModel minm;
    WTransform<EisInt> tr;
    tate_local(pure, kl, &minm, &tr);
    EisQ u(tr.u), r(tr.r), s(tr.s), t(tr.t);
    EisQ u2 = u * u;
    EisQ xs = (P.x - r) / u2;
    EisQ ys = (P.y - s * (P.x - r) - t) / (u2 * u);
    WPt<EisQ> Pm{xs, ys};
    mpq_class ltrue = local_height_units(
        kl, minm, Pm, [&](const EisQ& v) { return val_eisq(v, pi); },
        [&](const EisQ& v) { return res_eisq(v, kl); });
    long vx = val_eisq(P.x, pi);
    long vD = kl.val(EisInt{mpz_class(-432) * k * k, 0});
    mpq_class base = mpq_class(std::max(0L, -vx), 2) + mpq_class(vD, 12);
    mpq_class corr = ltrue - base;
    Real logq = log(Real(mpz_class(kl.res_p()), prec)) * (kl.f);
    return Real(corr, prec) * logq;
}

inline Real arch_height_for(const mpz_class& k, const Complex& x_emb, Prec prec) {
    PeriodData pd = periods_pure_model(k, prec + 64);
    Prec p = prec + 64;
    Real absD = abs(Real(mpz_class(mpz_class(-432) * k * k), p));
    ArchLattice L = arch_lattice(Complex(pd.omega1, Real(0L, p)), pd.omega2, absD, p);
    Complex z = elliptic_log_x(L, k, x_emb, p);
    return arch_local_height(L, z);
}

}  // namespace detail

// hhat of a point of E: y^2 = x^3 + k (k nonzero integer) over Q, normalized
// absolutely (so it agrees with the same point viewed over any number field).
inline Real canonical_height_q(const mpz_class& k, const WPt<mpq_class>& P, Prec prec) {
    if (P.inf) return Real(0L, prec);
    WCurveT<mpq_class> E{0, 0, 0, 0, mpq_class(k)};
    for (long m = 1; m <= 12; m++)
        if (w_mul(E, m, P).inf) return Real(0L, prec);  // torsion
    Prec p = prec + 64;
    Real arch = detail::arch_height_for(k, Complex(Real(P.x, p), Real(0L, p)), prec);
    // finite main part: (1/2) log den(x)
    Real fin = log(Real(mpz_class(P.x.get_den()), p)) / 2;
    // Delta part
    Real dpart = log(abs(Real(mpz_class(mpz_class(-432) * k * k), p))) / 12;
    Real corr(0L, p);
    auto bad = factor_int(6 * k);
    for (auto& [q, e] : bad) corr += detail::height_correction_q(k, P, q, p);
    return arch + fin + dpart + corr;
}

// absolute hhat for a point with K-coordinates
inline Real canonical_height_k(const mpz_class& k, const WPt<EisQ>& P, Prec prec) {
    if (P.inf) return Real(0L, prec);
    WCurveT<EisQ> E{EisQ(0), EisQ(0), EisQ(0), EisQ(0), EisQ(mpq_class(k), 0)};
    for (long m = 1; m <= 12; m++)
        if (w_mul(E, m, P).inf) return Real(0L, prec);
    Prec p = prec + 64;
    Real arch = detail::arch_height_for(k, P.x.embed(p), prec);
    // denominator-ideal norm of x: x = (A + B w)/d -> d^2 / N(gcd(A + B w, d))
    mpz_class d = P.x.a.get_den();
    mpz_class l = P.x.b.get_den();
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), l.get_mpz_t());
    EisInt num{mpz_class(P.x.a.get_num() * (d / P.x.a.get_den())),
               mpz_class(P.x.b.get_num() * (d / P.x.b.get_den()))};
    EisInt g = eis_gcd(num, EisInt{d, 0});
    mpz_class dennorm = d * d / g.norm();
    Real fin = log(Real(dennorm, p)) / 2;
    Real dpart = log(abs(Real(mpz_class(mpz_class(-432) * k * k), p))) / 6;  // (2/12) log |Delta|
    Real corr(0L, p);
    auto bad = factor_int(6 * k);
    for (auto& [q, e] : bad) {
        if (q == 3) {
            corr += detail::height_correction_k(k, P, EisInt{1, -1}, p);
        } else if (q % 3 == 2) {
            corr += detail::height_correction_k(k, P, EisInt{q, 0}, p);
        } else {
            EisInt pi = eis_prime_above(q);
            corr += detail::height_correction_k(k, P, pi, p);
            corr += detail::height_correction_k(k, P, pi.conj(), p);
        }
    }
    return (arch * 2 + fin + dpart + corr) / 2;
}

// naive-height doubling-limit oracle over Q (test support)
inline double height_doubling_oracle(const mpz_class& k, WPt<mpq_class> P, int steps) {
    WCurveT<mpq_class> E{0, 0, 0, 0, mpq_class(k)};
    for (int i = 0; i < steps; i++) P = w_add(E, P, P);
    mpz_class num = abs(P.x.get_num()), den = P.x.get_den();
    mpz_class mx = std::max(num, den);
    long ex;
    double man = mpz_get_d_2exp(&ex, mx.get_mpz_t());
    double h = std::log(man) + (double)ex * std::log(2.0);
    return h / 2 / std::pow(4.0, steps);
}

} // namespace sylv
