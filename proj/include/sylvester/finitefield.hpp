// F_p and F_{p^2} = F_p[w]/(w^2+w+1) arithmetic (p = 2 mod 3 inert case),
// plus reduction of radical-field elements at a prime above p.
#pragma once

#include "sylvester/numfield.hpp"
#include <cstdint>

namespace sylv {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return (uint64_t)((__uint128_t)a * b % m);
}
inline uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}
inline uint64_t invmod_u64(uint64_t a, uint64_t m) {
    int64_t t = 0, nt = 1;
    int64_t r = (int64_t)m, nr = (int64_t)(a % m);
    while (nr != 0) {
        int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw std::domain_error("invmod: not invertible");
    return (uint64_t)(t < 0 ? t + (int64_t)m : t);
}

// element a + b w of F_{p^2}, w^2 + w + 1 = 0; b = 0 covers F_p
struct FqEl {
    uint64_t p = 0;
    uint64_t a = 0, b = 0;

    FqEl() = default;
    FqEl(uint64_t p_, uint64_t a_, uint64_t b_ = 0) : p(p_), a(a_ % p_), b(b_ % p_) {}
    static FqEl from_int(uint64_t p, const mpz_class& z) {
        mpz_class r = z % p;
        if (r < 0) r += p;
        return FqEl(p, r.get_ui(), 0);
    }
    static FqEl omega(uint64_t p) { return FqEl(p, 0, 1); }

    bool is_zero() const { return a == 0 && b == 0; }
    friend FqEl operator+(const FqEl& x, const FqEl& y) {
        return FqEl(x.p, (x.a + y.a) % x.p, (x.b + y.b) % x.p);
    }
    friend FqEl operator-(const FqEl& x, const FqEl& y) {
        return FqEl(x.p, (x.a + x.p - y.a) % x.p, (x.b + x.p - y.b) % x.p);
    }
    friend FqEl operator-(const FqEl& x) { return FqEl(x.p, (x.p - x.a) % x.p, (x.p - x.b) % x.p); }
    friend FqEl operator*(const FqEl& x, const FqEl& y) {
        // (a+bw)(c+dw) = ac - bd + (ad + bc - bd) w
        uint64_t ac = mulmod_u64(x.a, y.a, x.p), bd = mulmod_u64(x.b, y.b, x.p);
        uint64_t ad = mulmod_u64(x.a, y.b, x.p), bc = mulmod_u64(x.b, y.a, x.p);
        return FqEl(x.p, (ac + x.p - bd) % x.p, ((ad + bc) % x.p + x.p - bd) % x.p);
    }
    FqEl conj() const { return FqEl(p, (a + p - b) % p, (p - b) % p); }
    FqEl inv() const {
        if (is_zero()) throw std::domain_error("FqEl: inverse of zero");
        // N = a^2 - ab + b^2 in F_p
        uint64_t n = ((mulmod_u64(a, a, p) + mulmod_u64(b, b, p)) % p + p - mulmod_u64(a, b, p)) % p;
        FqEl c = conj();
        uint64_t ni = invmod_u64(n, p);
        return FqEl(p, mulmod_u64(c.a, ni, p), mulmod_u64(c.b, ni, p));
    }
    friend FqEl operator/(const FqEl& x, const FqEl& y) { return x * y.inv(); }
    friend bool operator==(const FqEl& x, const FqEl& y) { return x.a == y.a && x.b == y.b; }

    FqEl pow(mpz_class e) const {
        FqEl r(p, 1), base = *this;
        if (e < 0) { base = inv(); e = -e; }
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }
};

// all cube roots of x in F_{p^2} (brute force; used only for small p)
inline std::vector<FqEl> cube_roots_fq(const FqEl& x) {
    std::vector<FqEl> out;
    for (uint64_t a = 0; a < x.p; a++)
        for (uint64_t b = 0; b < x.p; b++) {
            FqEl c(x.p, a, b);
            if (c * c * c == x) out.push_back(c);
        }
    return out;
}

// Reduction data for a prime above p in K(3^(1/3), p^(1/3))-style fields:
// omega -> w, rad_a^(1/3) -> a fixed cube root, rad_b = p -> 0 (ramified).
struct ResidueMap {
    uint64_t p;
    FqEl cbrt_a;  // image of rad_a^(1/3)

    // reduce a field element; throws when a coefficient is not p-integral in
    // the conservative monomial-wise sense
    FqEl reduce(const FieldElem& x) const {
        const auto& F = *x.F;
        bool b_is_p = (F.rad_b != 1 && mpz_class(F.rad_b % p) == 0);
        FqEl acc(p, 0);
        for (int idx = 0; idx < F.dim; idx++) {
            if (x.c[idx] == 0) continue;
            auto [e, i, j] = F.decode(idx);
            mpq_class q = x.c[idx];
            // p-adic valuation of the coefficient
            long vp = 0;
            mpz_class num = q.get_num(), den = q.get_den();
            while (num % p == 0) { vp++; num /= p; }
            while (den % p == 0) { vp--; den /= p; }
            if (F.rad_b != 1 && b_is_p && j > 0) {
                // term valuation 3 vp + j in thirds
                if (3 * vp + j < 0) throw std::domain_error("reduce: pole at the prime above p");
                continue;  // strictly positive valuation: reduces to 0
            }
            if (vp < 0) throw std::domain_error("reduce: pole at the prime above p");
            if (vp > 0) continue;
            FqEl t = FqEl::from_int(p, num) * FqEl::from_int(p, den).inv();
            if (e) t = t * FqEl::omega(p);
            for (int r = 0; r < i; r++) t = t * cbrt_a;
            acc = acc + t;
        }
        return acc;
    }
};

} // namespace sylv
