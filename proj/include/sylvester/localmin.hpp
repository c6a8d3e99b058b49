// Weierstrass models, Laska-Kraus-Connell global minimalization over Q, and
// Tate's algorithm over Q_p and over the completions of K = Q(omega). The
// residue fields that occur are tiny, so residue computations are done by
// direct enumeration.
#pragma once

#include "sylvester/eisenstein.hpp"
#include "sylvester/finitefield.hpp"
#include <string>

namespace sylv {

template <class E>
struct WModel {
    E a1{}, a2{}, a3{}, a4{}, a6{};

    E b2() const { return a1 * a1 + E(4) * a2; }
    E b4() const { return E(2) * a4 + a1 * a3; }
    E b6() const { return a3 * a3 + E(4) * a6; }
    E b8() const {
        return a1 * a1 * a6 + E(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    }
    E c4() const { return b2() * b2() - E(24) * b4(); }
    E c6() const { return -(b2() * b2() * b2()) + E(36) * b2() * b4() - E(216) * b6(); }
    E disc() const {
        E B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -(B2 * B2) * B8 - E(8) * B4 * B4 * B4 - E(27) * B6 * B6 + E(9) * B2 * B4 * B6;
    }

    // substitute x = u^2 x' + r, y = u^3 y' + s u^2 x' + t; divisions must be exact
    template <class Div>
    WModel transform(const E& u, const E& r, const E& s, const E& t, Div div) const {
        WModel m;
        E u2 = u * u, u3 = u2 * u;
        m.a1 = div(a1 + E(2) * s, u);
        m.a2 = div(a2 - s * a1 + E(3) * r - s * s, u2);
        m.a3 = div(a3 + r * a1 + E(2) * t, u3);
        m.a4 = div(a4 - s * a3 + E(2) * r * a2 - (t + r * s) * a1 + E(3) * r * r - E(2) * s * t, u2 * u2);
        m.a6 = div(a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1, u3 * u3);
        return m;
    }
};

using QModel = WModel<mpz_class>;
using KModel = WModel<EisInt>;

// composite change of coordinates [u; r, s, t]
template <class E>
struct WTransform {
    E u{1}, r{0}, s{0}, t{0};
    WTransform compose(const WTransform& o) const {
        WTransform c;
        c.u = u * o.u;
        c.r = r + u * u * o.r;
        c.s = s + u * o.s;
        c.t = t + u * u * s * o.r + u * u * u * o.t;
        return c;
    }
};

inline mpz_class exact_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw std::runtime_error("exact_div: not divisible");
    return q;
}
inline EisInt exact_div(const EisInt& a, const EisInt& b) {
    auto [q, r] = eis_divmod(a, b);
    if (!r.is_zero()) throw std::runtime_error("exact_div: not divisible (Eisenstein)");
    return q;
}

template <class E>
E pow_pi(const E& pi, long k) {
    E r(1);
    for (long i = 0; i < k; i++) r = r * pi;
    return r;
}

// ---------------------------------------------------------------------------
// local contexts

struct ZLocal {
    using Elem = mpz_class;
    mpz_class p;
    uint64_t res_p() const { return p.get_ui(); }
    long val(const mpz_class& x) const {
        if (x == 0) return 1 << 20;
        long v = 0;
        mpz_class y = x;
        while (y % p == 0) { y /= p; v++; }
        return v;
    }
    mpz_class pi() const { return p; }
    FqEl to_res(const mpz_class& x) const { return FqEl::from_int(res_p(), x); }
    mpz_class lift(const FqEl& x) const { return mpz_class((unsigned long)x.a); }
    template <class Fn>
    void each_res(Fn fn) const {
        for (uint64_t a = 0; a < res_p(); a++) fn(FqEl(res_p(), a, 0));
    }
};

struct KLocal {
    using Elem = EisInt;
    EisInt pi_;
    uint64_t p;   // residue characteristic
    int f;        // residue degree
    static KLocal at(const EisInt& pi) {
        KLocal c;
        c.pi_ = pi;
        mpz_class n = pi.norm();
        if (n == 3) { c.p = 3; c.f = 1; }
        else if (mpz_perfect_square_p(n.get_mpz_t())) {
            mpz_class s;
            mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
            c.p = s.get_ui(); c.f = 2;
        } else { c.p = n.get_ui(); c.f = 1; }
        return c;
    }
    uint64_t res_p() const { return p; }
    long val(const EisInt& x) const {
        if (x.is_zero()) return 1 << 20;
        return eis_valuation(x, pi_);
    }
    EisInt pi() const { return pi_; }
    FqEl to_res(const EisInt& x) const {
        if (f == 2) {
            mpz_class am = x.a % p, bm = x.b % p;
            if (am < 0) am += p;
            if (bm < 0) bm += p;
            return FqEl(p, am.get_ui(), bm.get_ui());
        }
        if (p == 3) {
            // omega = 1 mod (1 - omega)
            mpz_class r = (x.a + x.b) % 3;
            if (r < 0) r += 3;
            return FqEl(3, r.get_ui(), 0);
        }
        // split prime pi = a + b omega: omega = -a/b mod p
        mpz_class bm = pi_.b % p, am = pi_.a % p;
        mpz_class binv;
        if (!mpz_invert(binv.get_mpz_t(), bm.get_mpz_t(), mpz_class(p).get_mpz_t()))
            throw std::runtime_error("KLocal: bad split prime");
        mpz_class wim = ((-am * binv) % p + p) % p;
        mpz_class r = (x.a + x.b * wim) % p;
        if (r < 0) r += p;
        return FqEl(p, r.get_ui(), 0);
    }
    EisInt lift(const FqEl& x) const {
        if (f == 2) return EisInt{mpz_class((unsigned long)x.a), mpz_class((unsigned long)x.b)};
        return EisInt{mpz_class((unsigned long)x.a), 0};
    }
    template <class Fn>
    void each_res(Fn fn) const {
        if (f == 2) {
            for (uint64_t a = 0; a < p; a++)
                for (uint64_t b = 0; b < p; b++) fn(FqEl(p, a, b));
        } else {
            for (uint64_t a = 0; a < p; a++) fn(FqEl(p, a, 0));
        }
    }
};

// ---------------------------------------------------------------------------
// Tate's algorithm

struct LocalReduction {
    std::string kodaira;   // "I0", "In", "II", ..., "In*", "IV*", ...
    long n = 0;            // subscript for I_n / I_n*
    long f = 0;            // conductor exponent
    long c = 1;            // Tamagawa number
    long v_disc_min = 0;   // valuation of the minimal discriminant
    long u_pow = 0;        // pi-power used to minimize
};

namespace detail {

// roots of A Y^2 + B Y + C over the residue field; cnt == 1 means double root
template <class Ctx>
int quad_roots(const Ctx& cx, const FqEl& A, const FqEl& B, const FqEl& C, FqEl* root) {
    int cnt = 0;
    cx.each_res([&](const FqEl& y) {
        if ((A * y * y + B * y + C).is_zero()) {
            if (cnt == 0 && root) *root = y;
            cnt++;
        }
    });
    return cnt;
}

}  // namespace detail

// Tate's algorithm at the prime of `cx`. On return, `m_out`/`tr_out` (when
// non-null) carry the final translated minimal model and the composite
// transform from the input model to it.
template <class Ctx>
LocalReduction tate_local(WModel<typename Ctx::Elem> m, const Ctx& cx,
                          WModel<typename Ctx::Elem>* m_out = nullptr,
                          WTransform<typename Ctx::Elem>* tr_out = nullptr) {
    using E = typename Ctx::Elem;
    LocalReduction out;
    WTransform<E> tr;
    auto div = [](const E& a, const E& b) { return exact_div(a, b); };
    E pi = cx.pi();
    uint64_t rp = cx.res_p();

    auto apply = [&](const E& u, const E& r, const E& s, const E& t) {
        m = m.transform(u, r, s, t, div);
        tr = tr.compose({u, r, s, t});
    };

    for (int restart = 0; restart < 64; restart++) {
        long n = cx.val(m.disc());
        if (n == 0) { out.kodaira = "I0"; out.f = 0; out.c = 1; break; }

        // move the singular point of the reduction to the origin
        {
            bool found = false;
            FqEl x0, y0;
            FqEl a1 = cx.to_res(m.a1), a2 = cx.to_res(m.a2), a3 = cx.to_res(m.a3),
                 a4 = cx.to_res(m.a4), a6 = cx.to_res(m.a6);
            cx.each_res([&](const FqEl& x) {
                if (found) return;
                cx.each_res([&](const FqEl& y) {
                    if (found) return;
                    FqEl Fv = y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6);
                    FqEl Fx = a1 * y - (FqEl(rp, 3) * x * x + FqEl(rp, 2) * a2 * x + a4);
                    FqEl Fy = FqEl(rp, 2) * y + a1 * x + a3;
                    if (Fv.is_zero() && Fx.is_zero() && Fy.is_zero()) { x0 = x; y0 = y; found = true; }
                });
            });
            if (!found) { out.kodaira = "I0"; out.f = 0; out.c = 1; break; }
            apply(E(1), cx.lift(x0), E(0), cx.lift(y0));
        }

        if (cx.val(m.c4()) == 0) {
            // multiplicative
            out.kodaira = "In"; out.n = n; out.f = 1;
            int roots = detail::quad_roots(cx, FqEl(rp, 1), cx.to_res(m.a1), -cx.to_res(m.a2), nullptr);
            out.c = (roots > 0) ? n : ((n % 2 == 0) ? 2 : 1);
            break;
        }
        if (cx.val(m.a6) < 2) { out.kodaira = "II"; out.f = n; out.c = 1; break; }
        if (cx.val(m.b8()) < 3) { out.kodaira = "III"; out.f = n - 1; out.c = 2; break; }
        if (cx.val(m.b6()) < 3) {
            out.kodaira = "IV"; out.f = n - 2;
            int cnt = detail::quad_roots(cx, FqEl(rp, 1), cx.to_res(div(m.a3, pi)),
                                         -cx.to_res(div(m.a6, pi * pi)), nullptr);
            out.c = (cnt == 2) ? 3 : 1;
            break;
        }
        // normalize: pi | a1, a2; pi^2 | a3, a4; pi^3 | a6 (search, char-free)
        {
            bool ok = false;
            cx.each_res([&](const FqEl& sr) {
                if (ok) return;
                E s = cx.lift(sr);
                E na1 = m.a1 + E(2) * s;
                E na2 = m.a2 - s * m.a1 - s * s;
                if (cx.val(na1) >= 1 && cx.val(na2) >= 1) {
                    apply(E(1), E(0), s, E(0));
                    ok = true;
                }
            });
            if (!ok) throw std::runtime_error("tate: s-normalization failed");
            ok = false;
            cx.each_res([&](const FqEl& tr0) {
                if (ok) return;
                E t = cx.lift(tr0) * pi;
                E na3 = m.a3 + E(2) * t;
                E na4 = m.a4 - t * m.a1;
                E na6 = m.a6 - t * m.a3 - t * t;
                if (cx.val(na3) >= 2 && cx.val(na4) >= 2 && cx.val(na6) >= 3) {
                    apply(E(1), E(0), E(0), t);
                    ok = true;
                }
            });
            if (!ok) throw std::runtime_error("tate: t-normalization failed");
        }
        // cubic P(T) = T^3 + (a2/pi) T^2 + (a4/pi^2) T + (a6/pi^3)
        {
            FqEl B = cx.to_res(div(m.a2, pi));
            FqEl C = cx.to_res(div(m.a4, pi * pi));
            FqEl D = cx.to_res(div(m.a6, pi * pi * pi));
            std::vector<FqEl> roots;
            cx.each_res([&](const FqEl& t) {
                if ((t * t * t + B * t * t + C * t + D).is_zero()) roots.push_back(t);
            });
            // multiplicity detection, characteristic-free
            FqEl mroot;
            int mult = 1;
            for (auto& r0 : roots) {
                // triple iff P = (T - r0)^3
                bool triple = (B == -(FqEl(rp, 3) * r0)) && (C == FqEl(rp, 3) * r0 * r0) &&
                              (D == -(r0 * r0 * r0));
                FqEl der = FqEl(rp, 3) * r0 * r0 + FqEl(rp, 2) * B * r0 + C;
                if (triple) { mult = 3; mroot = r0; break; }
                if (der.is_zero()) { mult = std::max(mult, 2); mroot = r0; }
            }
            if (mult == 1) {
                out.kodaira = "I0*"; out.f = n - 4;
                out.c = 1 + (int)roots.size();
                break;
            }
            if (mult == 2) {
                // I_nu*: translate the double root to the origin and iterate
                apply(E(1), cx.lift(mroot) * pi, E(0), E(0));
                long nu = 1, my = 2, mx = 2;
                for (;;) {
                    // Y^2 + (a3/pi^my) Y - (a6/pi^(2 my))
                    FqEl ry;
                    int cnt = detail::quad_roots(cx, FqEl(rp, 1), cx.to_res(div(m.a3, pow_pi(pi, my))),
                                                 -cx.to_res(div(m.a6, pow_pi(pi, 2 * my))), &ry);
                    if (cnt != 1) {
                        out.kodaira = "In*"; out.n = nu; out.f = n - 4 - nu;
                        out.c = (cnt == 2) ? 4 : 2;
                        break;
                    }
                    apply(E(1), E(0), E(0), cx.lift(ry) * pow_pi(pi, my));
                    nu++;
                    // (a2/pi) X^2 + (a4/pi^(mx+1)) X + (a6/pi^(2 mx + 1))
                    FqEl rx;
                    cnt = detail::quad_roots(cx, cx.to_res(div(m.a2, pi)),
                                             cx.to_res(div(m.a4, pow_pi(pi, mx + 1))),
                                             cx.to_res(div(m.a6, pow_pi(pi, 2 * mx + 1))), &rx);
                    if (cnt != 1) {
                        out.kodaira = "In*"; out.n = nu; out.f = n - 4 - nu;
                        out.c = (cnt == 2) ? 4 : 2;
                        break;
                    }
                    apply(E(1), cx.lift(rx) * pow_pi(pi, mx), E(0), E(0));
                    nu++; my++; mx++;
                }
                break;
            }
            // triple root to the origin
            apply(E(1), cx.lift(mroot) * pi, E(0), E(0));
        }
        // Y^2 + (a3/pi^2) Y - (a6/pi^4)
        {
            FqEl ry;
            int cnt = detail::quad_roots(cx, FqEl(rp, 1), cx.to_res(div(m.a3, pi * pi)),
                                         -cx.to_res(div(m.a6, pow_pi(pi, 4))), &ry);
            if (cnt != 1) {
                out.kodaira = "IV*"; out.f = n - 6;
                out.c = (cnt == 2) ? 3 : 1;
                break;
            }
            apply(E(1), E(0), E(0), cx.lift(ry) * pi * pi);
        }
        if (cx.val(m.a4) < 4) { out.kodaira = "III*"; out.f = n - 7; out.c = 2; break; }
        if (cx.val(m.a6) < 6) { out.kodaira = "II*"; out.f = n - 8; out.c = 1; break; }
        // non-minimal: rescale and restart
        apply(pi, E(0), E(0), E(0));
        out.u_pow++;
    }
    out.v_disc_min = cx.val(m.disc());
    if (m_out) *m_out = m;
    if (tr_out) *tr_out = tr;
    return out;
}

// ---------------------------------------------------------------------------
// global minimal model over Q (Laska-Kraus-Connell)

struct MinimalModelQ {
    QModel model;
    mpz_class u, r, s, t;  // original -> minimal: x = u^2 x' + r, ...
    mpz_class conductor;
    std::vector<std::pair<mpz_class, LocalReduction>> local;  // per bad prime
};

inline MinimalModelQ minimal_model_q(const QModel& in) {
    mpz_class c4 = in.c4(), c6 = in.c6(), disc = in.disc();
    if (disc == 0) throw std::domain_error("minimal_model_q: singular curve");
    mpz_class u = 1;
    auto fac = factor_int(disc);
    for (auto& [p, e] : fac) {
        ZLocal zl{p};
        long m = e / 12;
        if (c4 != 0) m = std::min(m, zl.val(c4) / 4);
        if (c6 != 0) m = std::min(m, zl.val(c6) / 6);
        for (long i = 0; i < m; i++) u *= p;
    }
    auto kraus3 = [&](const mpz_class& uu) {
        mpz_class C6 = c6 / pow_pi(uu, 6);
        if (C6 == 0) return true;
        ZLocal z3{3};
        return z3.val(C6) != 2;
    };
    auto kraus2 = [&](const mpz_class& uu) {
        mpz_class C4 = c4 / pow_pi(uu, 4), C6 = c6 / pow_pi(uu, 6);
        mpz_class c6m4 = ((C6 % 4) + 4) % 4;
        if (c6m4 == 3) return true;
        mpz_class c4m16 = ((C4 % 16) + 16) % 16;
        mpz_class c6m32 = ((C6 % 32) + 32) % 32;
        return (c4m16 == 0 && (c6m32 == 0 || c6m32 == 8));
    };
    for (;;) {
        if (u % 3 == 0 && !kraus3(u)) { u /= 3; continue; }
        if (!kraus2(u)) {
            if (u % 2 != 0) throw std::runtime_error("minimal_model_q: Kraus failed at u = 1");
            u /= 2;
            continue;
        }
        break;
    }
    mpz_class C4 = c4 / pow_pi(u, 4), C6 = c6 / pow_pi(u, 6);
    // Connell's reconstruction
    mpz_class b2 = ((-C6) % 12 + 12) % 12;
    if (b2 > 6) b2 -= 12;
    mpz_class b4 = exact_div(b2 * b2 - C4, 24);
    mpz_class b6 = exact_div(-b2 * b2 * b2 + 36 * b2 * b4 - C6, 216);
    MinimalModelQ out;
    out.model.a1 = ((b2 % 2) + 2) % 2;
    out.model.a3 = ((b6 % 2) + 2) % 2;
    out.model.a2 = exact_div(b2 - out.model.a1, 4);
    out.model.a4 = exact_div(b4 - out.model.a1 * out.model.a3, 2);
    out.model.a6 = exact_div(b6 - out.model.a3, 4);
    if (out.model.c4() != C4 || out.model.c6() != C6)
        throw std::runtime_error("minimal_model_q: reconstruction failed");
    out.u = u;
    out.s = exact_div(u * out.model.a1 - in.a1, 2);
    out.r = exact_div(u * u * out.model.b2() - in.b2(), 12);
    out.t = exact_div(u * u * u * out.model.a3 - in.a3 - out.r * in.a1, 2);
    mpz_class N = 1;
    auto fac2 = factor_int(out.model.disc());
    for (auto& [p, e] : fac2) {
        ZLocal zl{p};
        LocalReduction red = tate_local(out.model, zl);
        if (red.u_pow != 0) throw std::runtime_error("minimal_model_q: LKC output not minimal");
        for (long i = 0; i < red.f; i++) N *= p;
        out.local.push_back({p, red});
    }
    out.conductor = N;
    return out;
}

// minimal model of E_n : y^2 = x^3 - 432 n^2 for nonzero rational n = a/b
// (the input model is scaled by b^6 to clear denominators)
inline MinimalModelQ minimal_model_en(const mpq_class& n) {
    mpq_class nn = n;
    nn.canonicalize();
    if (nn == 0) throw std::domain_error("minimal_model_en: n must be nonzero");
    mpz_class a = nn.get_num(), b = nn.get_den();
    QModel m;
    m.a6 = -432 * a * a * b * b * b * b;
    return minimal_model_q(m);
}

// map a point (x, y) on the original model to the [u;r,s,t]-transformed one
inline std::pair<mpq_class, mpq_class> wtransform_point(const mpz_class& u, const mpz_class& r,
                                                        const mpz_class& s, const mpz_class& t,
                                                        const mpq_class& x, const mpq_class& y) {
    mpq_class u2 = mpq_class(u * u);
    mpq_class xp = (x - r) / u2;
    mpq_class yp = (y - s * (x - mpq_class(r)) - t) / (u2 * u);
    xp.canonicalize();
    yp.canonicalize();
    return {xp, yp};
}

} // namespace sylv
