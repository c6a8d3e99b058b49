// All-integer LLL reduction and integer-relation detection, used to lift
// floating-point values to exact algebraic numbers.
#pragma once

#include "sylvester/ball.hpp"
#include <gmpxx.h>
#include <functional>
#include <optional>
#include <vector>

namespace sylv {

// Lenstra-Lenstra-Lovasz with the all-integer Gram bookkeeping (d_i, lambda_ij).
// Rows of `b` are the basis vectors; reduced in place.
inline void lll_reduce(std::vector<std::vector<mpz_class>>& b) {
    int n = (int)b.size();
    if (n <= 1) return;
    std::vector<std::vector<mpz_class>> lam(n + 1, std::vector<mpz_class>(n + 1));
    std::vector<mpz_class> d(n + 1);
    d[0] = 1;

    auto dot = [&](int i, int j) {
        mpz_class s = 0;
        for (size_t t = 0; t < b[i - 1].size(); t++) s += b[i - 1][t] * b[j - 1][t];
        return s;
    };
    auto red = [&](int k, int l) {
        if (2 * abs(lam[k][l]) <= d[l]) return;
        mpz_class q, r2;
        mpz_fdiv_qr(q.get_mpz_t(), r2.get_mpz_t(), lam[k][l].get_mpz_t(), d[l].get_mpz_t());
        if (2 * r2 > d[l]) q += 1;
        for (size_t t = 0; t < b[k - 1].size(); t++) b[k - 1][t] -= q * b[l - 1][t];
        lam[k][l] -= q * d[l];
        for (int i = 1; i < l; i++) lam[k][i] -= q * lam[l][i];
    };

    int kmax = 1;
    d[1] = dot(1, 1);
    int k = 2;
    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            for (int j = 1; j <= k; j++) {
                mpz_class u = dot(k, j);
                for (int i = 1; i < j; i++) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
                if (j < k) lam[k][j] = u;
                else d[k] = u;
            }
            if (d[k] == 0) throw std::domain_error("lll_reduce: dependent input rows");
        }
        for (;;) {
            red(k, k - 1);
            if (4 * (d[k] * d[k - 2] + lam[k][k - 1] * lam[k][k - 1]) < 3 * d[k - 1] * d[k - 1]) {
                // swap b_k, b_{k-1}
                std::swap(b[k - 1], b[k - 2]);
                for (int j = 1; j <= k - 2; j++) std::swap(lam[k][j], lam[k - 1][j]);
                mpz_class l0 = lam[k][k - 1];
                mpz_class B = (d[k - 2] * d[k] + l0 * l0) / d[k - 1];
                for (int i = k + 1; i <= kmax; i++) {
                    mpz_class t = lam[i][k];
                    lam[i][k] = (d[k] * lam[i][k - 1] - l0 * t) / d[k - 1];
                    lam[i][k - 1] = (B * t + l0 * lam[i][k]) / d[k];
                }
                d[k - 1] = B;
                k = std::max(2, k - 1);
            } else {
                for (int l = k - 2; l >= 1; l--) red(k, l);
                k++;
                break;
            }
        }
    }
}

// Look for a small integer vector (c_0..c_{m-1}) with sum c_i v_i ~ 0.
// Rows are [ e_i | S Re(v_i) | S Im(v_i) ] with S = 2^scale_bits.
inline std::optional<std::vector<mpz_class>> integer_relation(const std::vector<Ball>& v,
                                                              long scale_bits,
                                                              long max_coeff_bits) {
    int m = (int)v.size();
    if (m < 2) return std::nullopt;
    std::vector<std::vector<mpz_class>> rows(m, std::vector<mpz_class>(m + 2));
    Prec p = 64;
    for (auto& x : v) p = std::max(p, x.prec());
    for (int i = 0; i < m; i++) {
        rows[i][i] = 1;
        rows[i][m] = ldexp(v[i].c.re, scale_bits).round_to_int();
        rows[i][m + 1] = ldexp(v[i].c.im, scale_bits).round_to_int();
    }
    lll_reduce(rows);

    // pick the best candidate among the reduced rows
    const std::vector<mpz_class>* best = nullptr;
    double best_score = 0;
    for (const auto& r : rows) {
        mpz_class cmax = 0;
        bool nonzero = false;
        for (int i = 0; i < m; i++) {
            mpz_class t = abs(r[i]);
            if (t > cmax) cmax = t;
            if (r[i] != 0) nonzero = true;
        }
        if (!nonzero) continue;
        long hb = (long)mpz_sizeinbase(cmax.get_mpz_t(), 2);
        if (hb > max_coeff_bits) continue;
        long rb = (long)std::max(mpz_sizeinbase(r[m].get_mpz_t(), 2),
                                 mpz_sizeinbase(r[m + 1].get_mpz_t(), 2));
        // residual must be far smaller than a random lattice point would give
        if (rb > scale_bits / 4 || rb + 30 > scale_bits - hb * (m + 1)) continue;
        double score = (double)rb + hb;
        if (!best || score < best_score) { best = &r; best_score = score; }
    }
    if (!best) return std::nullopt;
    std::vector<mpz_class> c(best->begin(), best->begin() + m);
    return c;
}

struct RecognitionResult {
    std::vector<mpz_class> minpoly;  // integer coefficients, low to high
    bool certified = false;
    double residual_l2 = 0;  // log2 bound on |P(x)| at the certifying precision
};

namespace detail {
inline Ball eval_zpoly(const std::vector<mpz_class>& P, const Ball& x) {
    Ball acc = Ball::exact(Complex(0, x.prec()));
    for (size_t i = P.size(); i-- > 0;) {
        acc = acc * x;
        acc += Ball::exact_q(mpq_class(P[i]), 0, x.prec());
    }
    return acc;
}
}  // namespace detail

// Find the minimal-degree integer polynomial with P(x) = 0, where `x_at`
// recomputes x at any requested precision. Tries degrees from 1 upward so
// that the certified result is the minimal polynomial. Certification
// re-evaluates at doubled precision and demands the residual ball contain 0
// while shrinking in proportion.
inline std::optional<RecognitionResult> recognize(const std::function<Ball(Prec)>& x_at,
                                                  Prec prec, int max_degree,
                                                  long max_coeff_bits) {
    Ball x = x_at(prec);
    double acc_bits = std::min((double)prec, -x.rad_l2 + x.mag_upper());
    if (acc_bits < 2.0 * max_coeff_bits)
        throw std::invalid_argument("recognize: ball radius too large for requested coefficient size");
    long scale = (long)acc_bits - 16;

    std::vector<Ball> powers{Ball::exact(Complex(1, prec))};
    for (int i = 1; i <= max_degree; i++) powers.push_back(powers.back() * x);

    for (int deg = 1; deg <= max_degree; deg++) {
        std::vector<Ball> v(powers.begin(), powers.begin() + deg + 1);
        auto rel = integer_relation(v, scale, max_coeff_bits);
        if (!rel) continue;
        std::vector<mpz_class> P = *rel;
        while (!P.empty() && P.back() == 0) P.pop_back();
        if ((int)P.size() < 2) continue;
        if (P.back() < 0)
            for (auto& c : P) c = -c;

        Ball r1 = detail::eval_zpoly(P, x);
        if (!r1.contains_zero()) continue;

        Ball x2 = x_at(2 * prec);
        Ball r2 = detail::eval_zpoly(P, x2);
        double resid = mag_add(r2.c.exponent(), r2.rad_l2);
        // residual at doubled precision must beat the first one by a clear margin
        bool ok = r2.contains_zero() && resid < -acc_bits - std::max(32.0, acc_bits / 8);
        RecognitionResult out;
        out.minpoly = std::move(P);
        out.certified = ok;
        out.residual_l2 = resid;
        if (ok) return out;
    }
    return std::nullopt;
}

// Rational reconstruction of a real number by continued fractions.
// A convergent is accepted only when it matches x essentially to the full
// claimed accuracy (min_match_bits, defaulting to prec - 48), relative to
// the magnitude of x. This rejects convergents that merely fit the noise.
inline std::optional<mpq_class> recognize_rational(const Real& x, long max_den_bits,
                                                   long min_match_bits = 0) {
    Prec p = x.prec();
    if (min_match_bits <= 0) min_match_bits = (long)p - 48;
    if (min_match_bits < 16) return std::nullopt;
    mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;  // convergents
    Real t = x;
    long xmag = std::max(x.exponent(), 0L);
    for (int it = 0; it < 400; it++) {
        mpz_class a = t.floor_to_int();
        mpz_class h2 = a * h0 + h1, k2 = a * k0 + k1;
        if (mpz_sizeinbase(k2.get_mpz_t(), 2) > (size_t)max_den_bits) break;
        h1 = h0; h0 = h2; k1 = k0; k0 = k2;
        Real err = abs(x - Real(mpq_class(h0, k0), p));
        if (err.is_zero() || err.exponent() - xmag < -min_match_bits) {
            mpq_class q(h0, k0);
            q.canonicalize();
            return q;
        }
        Real frac = t - Real(a, p);
        if (frac.is_zero()) break;
        t = Real(1L, p) / frac;
    }
    return std::nullopt;
}

} // namespace sylv
