// Class groups Pic(O_c) of orders in K = Q(sqrt(-3)) through primitive
// reduced binary quadratic forms of discriminant -3c^2, together with the
// cubic characters chi_n evaluated through the Artin map.
#pragma once

#include "sylvester/eisenstein.hpp"
#include <algorithm>
#include <optional>

namespace sylv {

struct FormClass {
    mpz_class A, B, C;
    mpz_class disc() const { return B * B - 4 * A * C; }
    bool operator==(const FormClass& o) const { return A == o.A && B == o.B && C == o.C; }
    bool operator<(const FormClass& o) const {
        if (A != o.A) return A < o.A;
        if (B != o.B) return B < o.B;
        return C < o.C;
    }
};

inline FormClass form_reduce(FormClass f) {
    for (int it = 0; it < 100000; it++) {
        // normalize B into (-A, A]
        mpz_class D = f.disc();
        mpz_class twoA = 2 * f.A;
        mpz_class r = f.B % twoA;
        if (r < 0) r += twoA;
        if (r > f.A) r -= twoA;  // now r in (-A, A]
        f.B = r;
        f.C = (f.B * f.B - D) / (4 * f.A);
        if (f.A > f.C) {
            f = FormClass{f.C, -f.B, f.A};
            continue;
        }
        if (f.A == f.C && f.B < 0) f.B = -f.B;
        return f;
    }
    throw std::runtime_error("form_reduce: did not terminate");
}

inline FormClass principal_form(const mpz_class& D) {
    if (D % 4 == 0) return {1, 0, -D / 4};
    return {1, 1, (1 - D) / 4};
}
inline FormClass form_inverse(const FormClass& f) { return form_reduce({f.A, -f.B, f.C}); }

// Equivalent form whose leading coefficient is coprime to M.
inline FormClass form_with_coprime_A(const FormClass& f, const mpz_class& M) {
    for (long x = 0; x <= 60; x++) {
        for (long y = -60; y <= 60; y++) {
            if (x == 0 && y != 1) continue;
            mpz_class g;
            mpz_class gx = x, gy = y;
            mpz_gcd(g.get_mpz_t(), gx.get_mpz_t(), gy.get_mpz_t());
            if (g != 1) continue;
            mpz_class val = f.A * x * x + f.B * x * y + f.C * y * y;
            mpz_class d;
            mpz_gcd(d.get_mpz_t(), val.get_mpz_t(), M.get_mpz_t());
            if (d != 1) continue;
            // complete (x, y) to a unimodular matrix (x r; y s)
            mpz_class r, s;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), r.get_mpz_t(), gx.get_mpz_t(), gy.get_mpz_t());
            r = -r;  // x*s - y*r = 1
            FormClass out;
            out.A = val;
            out.B = 2 * f.A * x * r + f.B * (x * s + y * r) + 2 * f.C * y * s;
            out.C = f.A * r * r + f.B * r * s + f.C * s * s;
            return out;
        }
    }
    throw std::runtime_error("form_with_coprime_A: no representative found");
}

// Dirichlet composition after arranging gcd(A1, A2) = 1.
inline FormClass form_compose(const FormClass& f_, const FormClass& g_) {
    if (f_.disc() != g_.disc()) throw std::domain_error("form_compose: discriminant mismatch");
    FormClass f = form_reduce(f_);
    FormClass g = form_with_coprime_A(g_, f.A);
    mpz_class D = f.disc();
    // B = B1 mod 2A1, B = B2 mod 2A2 (moduli have gcd 2, B1 = B2 = D mod 2)
    mpz_class m1 = 2 * f.A, m2 = 2 * g.A;
    mpz_class gg, u, v;
    mpz_gcdext(gg.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
    mpz_class diff = g.B - f.B;
    if (diff % gg != 0) throw std::runtime_error("form_compose: CRT failure");
    mpz_class lcm = m1 / gg * m2;
    mpz_class B = f.B + m1 * (u % (m2 / gg)) * (diff / gg);
    B %= lcm;
    mpz_class A = f.A * g.A;
    mpz_class num = B * B - D;
    if (num % (4 * A) != 0) throw std::runtime_error("form_compose: composition failure");
    return form_reduce({A, B, num / (4 * A)});
}

inline FormClass form_pow(const FormClass& f, mpz_class e) {
    FormClass acc = principal_form(f.disc());
    FormClass base = form_reduce(f);
    bool inv = e < 0;
    if (inv) e = -e;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = form_compose(acc, base);
        base = form_compose(base, base);
        e >>= 1;
    }
    return inv ? form_inverse(acc) : acc;
}

// All primitive reduced forms of discriminant -3c^2: one per class of Pic(O_c).
inline std::vector<FormClass> pic_enumerate(const mpz_class& c) {
    if (c < 1) throw std::domain_error("pic_enumerate: conductor must be >= 1");
    mpz_class D = -3 * c * c;
    std::vector<FormClass> out;
    for (mpz_class A = 1; 3 * A * A <= -D; A++) {
        for (mpz_class B = -A + 1; B <= A; B++) {
            mpz_class num = B * B - D;
            if (num % (4 * A) != 0) continue;
            mpz_class C = num / (4 * A);
            if (C < A) continue;
            if (A == C && B < 0) continue;
            mpz_class g1, g2;
            mpz_gcd(g1.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
            mpz_gcd(g2.get_mpz_t(), g1.get_mpz_t(), C.get_mpz_t());
            if (g2 != 1) continue;
            out.push_back({A, B, C});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct PicGroup {
    mpz_class conductor;
    mpz_class D;
    std::vector<FormClass> classes;

    static PicGroup build(const mpz_class& c) {
        PicGroup g;
        g.conductor = c;
        g.D = -3 * c * c;
        g.classes = pic_enumerate(c);
        return g;
    }
    size_t size() const { return classes.size(); }
    size_t index_of(const FormClass& f) const {
        FormClass r = form_reduce(f);
        auto it = std::lower_bound(classes.begin(), classes.end(), r);
        if (it == classes.end() || !(*it == r)) throw std::runtime_error("PicGroup: class not found");
        return (size_t)(it - classes.begin());
    }
};

// Ideal attached to a form: a = [A, (-B + c sqrt(-3))/2] as a Z[w]-submodule,
// written over the basis (1, w): sqrt(-3) = 1 + 2w.
struct EisIdeal {
    EisInt g1, g2;  // Z-module generators
    mpz_class norm;
};
inline EisIdeal form_to_ideal(const FormClass& f, const mpz_class& c) {
    EisIdeal id;
    id.g1 = EisInt{f.A, 0};
    id.g2 = EisInt{(c - f.B) / 2, c};
    id.norm = f.A;
    return id;
}

// order of the class of f in Pic
inline long form_order(const FormClass& f) {
    FormClass e = principal_form(f.disc());
    FormClass acc = form_reduce(f);
    for (long k = 1; k <= 100000; k++) {
        if (acc == e) return k;
        acc = form_compose(acc, f);
    }
    throw std::runtime_error("form_order: unbounded");
}

// ---------------------------------------------------------------------------
// cubic characters chi_n on Pic(O_c), n supported on {3, p}

// v_pi(ideal) for the 2-generated module
inline long ideal_valuation(const EisIdeal& id, const EisInt& pi) {
    return std::min(eis_valuation(id.g1, pi), eis_valuation(id.g2, pi));
}

// chi_n(class of f) as k with value omega^k, evaluated by moving the class to
// an ideal of norm coprime to 6 n c and taking cubic residue symbols.
inline int chi_eval(const mpz_class& n, const FormClass& cls, const mpz_class& c) {
    FormClass rep = form_with_coprime_A(cls, 6 * n * c);
    EisIdeal id = form_to_ideal(rep, c);
    auto fac = factor_int(rep.A);
    long total = 0;
    mpz_class check = 1;
    for (auto& [ell, e] : fac) {
        if (ell % 3 != 1) {
            // inert or ramified primes cannot divide a primitive ideal with
            // norm coprime to 3: treat via direct valuation for safety
            EisInt pi = eis_prime_above(ell);
            long v = ideal_valuation(id, pi);
            if (v > 0) throw std::runtime_error("chi_eval: unexpected non-split divisor");
            continue;
        }
        EisInt pi = eis_prime_above(ell);
        for (EisInt cand : {pi, pi.conj()}) {
            long v = ideal_valuation(id, cand);
            if (v == 0) continue;
            int s = cubic_residue_symbol(EisInt{n, 0}, cand);
            if (s < 0) throw std::domain_error("chi_eval: n not coprime to ideal");
            total += (long)s * v;
            for (long i = 0; i < v; i++) check *= ell;
        }
    }
    if (check != rep.A) throw std::runtime_error("chi_eval: ideal factorization incomplete");
    return (int)(total % 3);
}

struct CubicCharacter {
    mpz_class n;          // radicand
    mpz_class conductor;  // of the order (9p here)
    int eval(const FormClass& cls) const { return chi_eval(n, cls, conductor); }
};

inline std::vector<FormClass> kernel_subgroup(const std::vector<CubicCharacter>& chars,
                                              const PicGroup& G) {
    std::vector<FormClass> out;
    for (const auto& cls : G.classes) {
        bool ok = true;
        for (const auto& ch : chars)
            if (ch.eval(cls) != 0) { ok = false; break; }
        if (ok) out.push_back(cls);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Artin map bookkeeping: the class in Pic(O_{9p}) of an idelic unit supported
// at 3 (like 1+3w_3 or w_3). beta solves beta = u mod 9, beta = 1 mod p; the
// idele class of u is [(beta)]^(-1).
inline FormClass pic_class_of_3unit(const EisInt& u, const mpz_class& p, const PicGroup& G) {
    mpz_class m1 = 9, m2 = p, g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
    if (g != 1) throw std::domain_error("pic_class_of_3unit: p must be coprime to 9");
    // beta = u * (p*y) + 1 * (9*x) coordinatewise
    mpz_class w9 = p * y, wp = 9 * x;  // w9 = 1 mod 9, 0 mod p; wp = 0 mod 9, 1 mod p
    EisInt beta{u.a * w9 + wp, u.b * w9};
    mpz_class mod = 9 * p;
    beta.a %= mod; beta.b %= mod;
    if (beta.a < 0) beta.a += mod;
    if (beta.b < 0) beta.b += mod;
    // O_K-ideal (beta) contracted to the order: (beta O_K) intersect O_c
    mpz_class c = G.conductor;
    EisInt b1 = beta, b2 = beta * EisInt::omega();
    mpz_class a11 = b1.a, a12 = b1.b, a21 = b2.a, a22 = b2.b;
    // column echelon: gcd of the omega-coordinates into a12
    while (a22 != 0) {
        mpz_class q = a12 / a22;
        a12 -= q * a22; a11 -= q * a21;
        std::swap(a11, a21); std::swap(a12, a22);
    }
    mpz_class A = abs(a21);
    if (a12 < 0) { a11 = -a11; a12 = -a12; }
    // intersect with O_c = Z + c w Z: multiples m(a11 + a12 w) need c | m a12
    mpz_class gc;
    mpz_gcd(gc.get_mpz_t(), c.get_mpz_t(), a12.get_mpz_t());
    mpz_class mfac = c / gc;
    EisInt alpha2{mfac * a11, mfac * a12};
    mpz_class nrm = A * a12 / gc;  // [O_c : ideal] = |det(basis over (1, c w))|
    if (nrm == 0) throw std::runtime_error("pic_class_of_3unit: degenerate ideal");
    FormClass f;
    f.A = A * A / nrm;
    f.C = alpha2.norm() / nrm;
    f.B = -A * (2 * alpha2.a - alpha2.b) / nrm;  // -Tr(conj(alpha1) alpha2)/nrm
    if (f.disc() != G.D) throw std::runtime_error("pic_class_of_3unit: wrong discriminant");
    return form_inverse(form_reduce(f));
}

} // namespace sylv
