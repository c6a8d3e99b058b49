// Exact arithmetic in K = Q(omega), omega = (-1+sqrt(-3))/2: Eisenstein
// integers, Euclidean division, prime factorization of small elements, and
// the cubic residue symbol computed from its definition.
#pragma once

#include "sylvester/ball.hpp"
#include "sylvester/eta.hpp"
#include <gmpxx.h>
#include <vector>
#include <map>
#include <stdexcept>

namespace sylv {

// a + b*omega with integer a, b
struct EisInt {
    mpz_class a, b;
    EisInt() : a(0), b(0) {}
    EisInt(mpz_class a_, mpz_class b_) : a(std::move(a_)), b(std::move(b_)) {}
    EisInt(long n) : a(n), b(0) {}

    bool is_zero() const { return a == 0 && b == 0; }
    mpz_class norm() const { return a * a - a * b + b * b; }
    EisInt conj() const { return {a - b, -b}; }

    friend EisInt operator+(const EisInt& x, const EisInt& y) { return {x.a + y.a, x.b + y.b}; }
    friend EisInt operator-(const EisInt& x, const EisInt& y) { return {x.a - y.a, x.b - y.b}; }
    friend EisInt operator-(const EisInt& x) { return {-x.a, -x.b}; }
    friend EisInt operator*(const EisInt& x, const EisInt& y) {
        // (a+b w)(c+d w), w^2 = -1-w
        return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
    }
    friend bool operator==(const EisInt& x, const EisInt& y) { return x.a == y.a && x.b == y.b; }

    static EisInt omega() { return {0, 1}; }
    static EisInt sqrt_m3() { return {1, 2}; }  // 1 + 2w = sqrt(-3)
};

// the six units 1, w, w^2, -1, -w, -w^2
inline std::vector<EisInt> eis_units() {
    return {{1, 0}, {0, 1}, {-1, -1}, {-1, 0}, {0, -1}, {1, 1}};
}

inline mpz_class round_div(const mpz_class& n, const mpz_class& d) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    if (2 * r > d) q += 1;
    return q;
}

// Euclidean division: q = round(x/y), r = x - qy with N(r) < N(y).
inline std::pair<EisInt, EisInt> eis_divmod(const EisInt& x, const EisInt& y) {
    if (y.is_zero()) throw std::domain_error("eis_divmod: division by zero");
    mpz_class n = y.norm();
    EisInt t = x * y.conj();  // exact numerator of x/y over n
    EisInt q{round_div(t.a, n), round_div(t.b, n)};
    return {q, x - q * y};
}
inline bool eis_divides(const EisInt& d, const EisInt& x) {
    if (d.is_zero()) return x.is_zero();
    return eis_divmod(x, d).second.is_zero();
}
inline EisInt eis_gcd(EisInt x, EisInt y) {
    while (!y.is_zero()) {
        auto [q, r] = eis_divmod(x, y);
        x = y;
        y = r;
    }
    return x;
}

// valuation of x at the prime pi (pi not a unit)
inline long eis_valuation(EisInt x, const EisInt& pi) {
    if (x.is_zero()) throw std::domain_error("eis_valuation of zero");
    long v = 0;
    for (;;) {
        auto [q, r] = eis_divmod(x, pi);
        if (!r.is_zero()) return v;
        x = q;
        v++;
    }
}

// alpha is primary when alpha = +-1 mod 3  (b = 0, a = +-1 mod 3)
inline bool eis_is_primary(const EisInt& x) {
    mpz_class am = x.a % 3, bm = x.b % 3;
    if (am < 0) am += 3;
    if (bm < 0) bm += 3;
    return bm == 0 && (am == 1 || am == 2);
}
// associate of x that is primary; requires gcd(x, 3) = 1
inline EisInt eis_make_primary(const EisInt& x) {
    for (const auto& u : eis_units()) {
        EisInt c = x * u;
        if (eis_is_primary(c)) return c;
    }
    throw std::domain_error("eis_make_primary: element not coprime to 3");
}

// ---------------------------------------------------------------------------
// factorization helpers (norms in this artifact stay small)

inline std::map<mpz_class, long> factor_int(mpz_class n) {
    std::map<mpz_class, long> f;
    if (n < 0) n = -n;
    if (n == 0) throw std::domain_error("factor_int(0)");
    for (mpz_class p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) { f[p]++; n /= p; }
        if (p > 3000000) throw std::runtime_error("factor_int: operand too large for trial division");
    }
    if (n > 1) f[n]++;
    return f;
}

// A prime of Z[w] above the rational prime ell; primary representative for
// split primes.
inline EisInt eis_prime_above(const mpz_class& ell) {
    if (ell == 3) return EisInt{1, -1};  // 1 - omega, ramified
    if (ell % 3 == 2) return EisInt{ell, 0};  // inert
    // split: find a^2 - ab + b^2 = ell
    for (mpz_class b = 1; b * b <= 2 * ell; b++) {
        mpz_class disc = 4 * ell - 3 * b * b;
        if (disc < 0) break;
        mpz_class s;
        mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
        if (s * s != disc) continue;
        if ((s + b) % 2 != 0) continue;
        EisInt pi{(s + b) / 2, b};
        if (pi.norm() == ell) return eis_make_primary(pi);
    }
    throw std::runtime_error("eis_prime_above: no representation found");
}

struct EisFactorization {
    std::vector<std::pair<EisInt, long>> primes;  // (pi, exponent)
    EisInt unit;                                  // leftover unit
};

inline EisFactorization eis_factor(EisInt x) {
    if (x.is_zero()) throw std::domain_error("eis_factor(0)");
    EisFactorization out;
    auto nf = factor_int(x.norm());
    for (auto& [ell, e] : nf) {
        if (ell == 3) {
            EisInt pi{1, -1};
            long v = eis_valuation(x, pi);
            if (v) {
                out.primes.push_back({pi, v});
                for (long i = 0; i < v; i++) x = eis_divmod(x, pi).first;
            }
        } else if (ell % 3 == 2) {
            EisInt pi{ell, 0};
            long v = eis_valuation(x, pi);
            if (v) {
                out.primes.push_back({pi, v});
                for (long i = 0; i < v; i++) x = eis_divmod(x, pi).first;
            }
        } else {
            EisInt pi = eis_prime_above(ell);
            for (EisInt cand : {pi, pi.conj()}) {
                long v = eis_valuation(x, cand);
                if (v) {
                    out.primes.push_back({cand, v});
                    for (long i = 0; i < v; i++) x = eis_divmod(x, cand).first;
                }
            }
        }
    }
    if (x.norm() != 1) throw std::runtime_error("eis_factor: incomplete factorization");
    out.unit = x;
    return out;
}

// ---------------------------------------------------------------------------
// cubic residue symbol

// (alpha/pi)_3 for a prime pi with N(pi) != 3: alpha^((N(pi)-1)/3) mod pi,
// returned as k in {0,1,2} meaning omega^k, or -1 when pi | alpha.
inline int cubic_residue_symbol(const EisInt& alpha, const EisInt& pi) {
    mpz_class q = pi.norm();
    if (q == 3) throw std::domain_error("cubic_residue_symbol: modulus is the prime above 3");
    if (eis_divides(pi, alpha)) return -1;
    mpz_class e = (q - 1) / 3;

    auto mod_pi = [&](const EisInt& x) { return eis_divmod(x, pi).second; };
    EisInt base = mod_pi(alpha);
    EisInt acc{1, 0};
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = mod_pi(acc * base);
        base = mod_pi(base * base);
        k >>= 1;
    }
    // identify acc with a cube root of unity mod pi
    for (int j = 0; j < 3; j++) {
        EisInt w = (j == 0) ? EisInt{1, 0} : (j == 1 ? EisInt{0, 1} : EisInt{-1, -1});
        if (eis_divides(pi, acc - w)) return j;
    }
    throw std::runtime_error("cubic_residue_symbol: power is not a cube root of unity");
}

// (alpha/a)_3 extended multiplicatively over a factored integral element a;
// requires gcd(alpha, a) = 1 and gcd(a, 3) = 1.
inline int cubic_residue_symbol_composite(const EisInt& alpha, const EisInt& modulus) {
    auto f = eis_factor(modulus);
    long total = 0;
    for (auto& [pi, e] : f.primes) {
        if (pi.norm() == 3) throw std::domain_error("cubic symbol: modulus divisible by prime above 3");
        int s = cubic_residue_symbol(alpha, pi);
        if (s < 0) throw std::domain_error("cubic symbol: arguments not coprime");
        total += (long)s * e;
    }
    return (int)(total % 3);
}

// K = Q(omega) elements with rational coordinates
struct EisQ {
    mpq_class a, b;  // a + b*omega
    EisQ() = default;
    EisQ(mpq_class a_, mpq_class b_) : a(std::move(a_)), b(std::move(b_)) {
        a.canonicalize();
        b.canonicalize();
    }
    EisQ(const EisInt& z) : a(z.a), b(z.b) {}
    bool is_zero() const { return a == 0 && b == 0; }
    EisQ conj() const { return {a - b, -b}; }
    mpq_class norm() const { return a * a - a * b + b * b; }
    friend EisQ operator+(const EisQ& x, const EisQ& y) { return {x.a + y.a, x.b + y.b}; }
    friend EisQ operator-(const EisQ& x, const EisQ& y) { return {x.a - y.a, x.b - y.b}; }
    friend EisQ operator-(const EisQ& x) { return {-x.a, -x.b}; }
    friend EisQ operator*(const EisQ& x, const EisQ& y) {
        return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
    }
    EisQ inv() const {
        mpq_class n = norm();
        if (n == 0) throw std::domain_error("EisQ: inverse of zero");
        EisQ c = conj();
        return {c.a / n, c.b / n};
    }
    friend EisQ operator/(const EisQ& x, const EisQ& y) { return x * y.inv(); }
    friend bool operator==(const EisQ& x, const EisQ& y) { return x.a == y.a && x.b == y.b; }

    Complex embed(Prec p) const {
        // omega = -1/2 + sqrt(3)/2 i
        Real s3 = sqrt(Real(3L, p));
        return {Real(a, p) - Real(b, p) / 2, Real(b, p) * s3 / 2};
    }
    // as upper-half-plane surd x + y sqrt(-3)
    Surd to_surd() const { return Surd(a - b / 2, b / 2, 3); }
};

} // namespace sylv
