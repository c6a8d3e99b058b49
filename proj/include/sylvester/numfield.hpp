// The fields this construction lives in: composita K(a^(1/3), b^(1/3)) with
// K = Q(omega), represented on the monomial basis omega^e a^(i/3) b^(j/3).
// Galois action and complex embedding are exact on monomials, which keeps
// coordinate recognition and eigenspace projection straightforward.
#pragma once

#include "sylvester/eisenstein.hpp"
#include "sylvester/lll.hpp"
#include <memory>
#include <functional>

namespace sylv {

class RadicalField;
using FieldPtr = std::shared_ptr<const RadicalField>;

class RadicalField : public std::enable_shared_from_this<RadicalField> {
public:
    mpz_class rad_a, rad_b;  // cube-free positive radicands; 1 disables the slot
    int na, nb;              // 3 when the radical is present, else 1
    int dim;

    static FieldPtr create(const mpz_class& a, const mpz_class& b) {
        auto f = std::make_shared<RadicalField>();
        f->rad_a = a;
        f->rad_b = b;
        f->na = (a == 1) ? 1 : 3;
        f->nb = (b == 1) ? 1 : 3;
        f->dim = 2 * f->na * f->nb;
        return f;
    }
    static FieldPtr K() { return create(1, 1); }

    int index(int e, int i, int j) const { return (e * na + i) * nb + j; }
    std::array<int, 3> decode(int idx) const {
        int j = idx % nb;
        int i = (idx / nb) % na;
        int e = idx / (na * nb);
        return {e, i, j};
    }

    // complex embedding of basis monomial idx (principal real cube roots)
    Complex embed_basis(int idx, Prec p) const {
        auto [e, i, j] = decode(idx);
        Real s3 = sqrt(Real(3L, p));
        Complex w{Real(mpq_class(-1, 2), p), s3 / 2};
        Complex v = (e == 0) ? Complex(1, p) : w;
        if (i) v = v * Complex(root(Real(rad_a, p), 3), Real(0L, p)) * (i == 2 ? Complex(root(Real(rad_a, p), 3), Real(0L, p)) : Complex(1, p));
        if (j) v = v * Complex(root(Real(rad_b, p), 3), Real(0L, p)) * (j == 2 ? Complex(root(Real(rad_b, p), 3), Real(0L, p)) : Complex(1, p));
        return v;
    }
};

class FieldElem {
public:
    FieldPtr F;
    std::vector<mpq_class> c;

    FieldElem() = default;
    explicit FieldElem(FieldPtr f) : F(std::move(f)), c(F->dim, mpq_class(0)) {}
    static FieldElem rational(FieldPtr f, const mpq_class& q) {
        FieldElem x(std::move(f));
        x.c[0] = q;
        x.c[0].canonicalize();
        return x;
    }
    static FieldElem omega(FieldPtr f) {
        FieldElem x(std::move(f));
        x.c[x.F->index(1, 0, 0)] = 1;
        return x;
    }
    static FieldElem monomial(FieldPtr f, int e, int i, int j, const mpq_class& q = 1) {
        FieldElem x(std::move(f));
        x.c[x.F->index(e, i, j)] = q;
        return x;
    }
    static FieldElem from_eisq(FieldPtr f, const EisQ& z) {
        FieldElem x(std::move(f));
        x.c[0] = z.a;
        x.c[x.F->index(1, 0, 0)] = z.b;
        return x;
    }

    bool is_zero() const {
        for (const auto& q : c)
            if (q != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c.size(); i++)
            if (c[i] != 0) return false;
        return true;
    }
    // supported on the K-part (no radical monomials)?
    bool in_K() const {
        for (int idx = 0; idx < F->dim; idx++) {
            auto [e, i, j] = F->decode(idx);
            if ((i || j) && c[idx] != 0) return false;
        }
        return true;
    }
    EisQ to_eisq() const {
        if (!in_K()) throw std::domain_error("FieldElem: not in K");
        return EisQ(c[0], c[F->index(1, 0, 0)]);
    }
    mpq_class to_rational() const {
        if (!is_rational()) throw std::domain_error("FieldElem: not rational");
        return c[0];
    }

    friend FieldElem operator+(const FieldElem& x, const FieldElem& y) {
        FieldElem r = x;
        for (int i = 0; i < r.F->dim; i++) r.c[i] += y.c[i];
        return r;
    }
    friend FieldElem operator-(const FieldElem& x, const FieldElem& y) {
        FieldElem r = x;
        for (int i = 0; i < r.F->dim; i++) r.c[i] -= y.c[i];
        return r;
    }
    friend FieldElem operator-(const FieldElem& x) {
        FieldElem r = x;
        for (auto& q : r.c) q = -q;
        return r;
    }

    friend FieldElem operator*(const FieldElem& x, const FieldElem& y) {
        const auto& F = *x.F;
        FieldElem r(x.F);
        for (int u = 0; u < F.dim; u++) {
            if (x.c[u] == 0) continue;
            auto [e1, i1, j1] = F.decode(u);
            for (int v = 0; v < F.dim; v++) {
                if (y.c[v] == 0) continue;
                auto [e2, i2, j2] = F.decode(v);
                mpq_class coef = x.c[u] * y.c[v];
                int ii = i1 + i2, jj = j1 + j2;
                if (ii >= 3) { ii -= 3; coef *= F.rad_a; }
                if (jj >= 3) { jj -= 3; coef *= F.rad_b; }
                int ee = e1 + e2;
                if (ee < 2) {
                    r.c[F.index(ee, ii, jj)] += coef;
                } else {  // omega^2 = -1 - omega
                    r.c[F.index(0, ii, jj)] -= coef;
                    r.c[F.index(1, ii, jj)] -= coef;
                }
            }
        }
        return r;
    }
    friend FieldElem operator*(const FieldElem& x, const mpq_class& s) {
        FieldElem r = x;
        for (auto& q : r.c) q *= s;
        return r;
    }
    friend FieldElem operator*(const mpq_class& s, const FieldElem& x) { return x * s; }

    FieldElem inv() const {
        // solve (mult-by-this) v = 1 by Gaussian elimination over Q
        const auto& F = *this->F;
        int n = F.dim;
        // columns of M are this * basis_j
        std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n + 1, mpq_class(0)));
        for (int j = 0; j < n; j++) {
            FieldElem bj(this->F);
            bj.c[j] = 1;
            FieldElem col = (*this) * bj;
            for (int i = 0; i < n; i++) M[i][j] = col.c[i];
        }
        M[0][n] = 1;
        // elimination
        for (int col = 0, row = 0; col < n && row < n; col++) {
            int piv = -1;
            for (int r2 = row; r2 < n; r2++)
                if (M[r2][col] != 0) { piv = r2; break; }
            if (piv < 0) throw std::domain_error("FieldElem::inv: singular (zero divisor?)");
            std::swap(M[piv], M[row]);
            mpq_class p = M[row][col];
            for (int k = col; k <= n; k++) M[row][k] /= p;
            for (int r2 = 0; r2 < n; r2++) {
                if (r2 == row || M[r2][col] == 0) continue;
                mpq_class f = M[r2][col];
                for (int k = col; k <= n; k++) M[r2][k] -= f * M[row][k];
            }
            row++;
        }
        FieldElem out(this->F);
        for (int i = 0; i < n; i++) out.c[i] = M[i][n];
        return out;
    }
    friend FieldElem operator/(const FieldElem& x, const FieldElem& y) { return x * y.inv(); }
    friend bool operator==(const FieldElem& x, const FieldElem& y) { return x.c == y.c; }

    // Galois over K: a^(1/3) -> omega^s a^(1/3), b^(1/3) -> omega^t b^(1/3)
    FieldElem galois(int s, int t) const {
        const auto& F = *this->F;
        FieldElem r(this->F);
        for (int idx = 0; idx < F.dim; idx++) {
            if (c[idx] == 0) continue;
            auto [e, i, j] = F.decode(idx);
            int ee = (s * i + t * j) % 3;
            // omega^e * omega^ee with total reduced mod the relation w^2 = -1-w
            int tot = e + ee;
            // w^0,w^1 direct; w^2 = -1-w; w^3 = 1 cycles
            tot %= 3;
            if (tot < 2) {
                r.c[F.index(tot, i, j)] += c[idx];
            } else {
                r.c[F.index(0, i, j)] -= c[idx];
                r.c[F.index(1, i, j)] -= c[idx];
            }
        }
        return r;
    }
    // complex conjugation: omega -> omega^2, real radicals fixed
    FieldElem conjugate() const {
        const auto& F = *this->F;
        FieldElem r(this->F);
        for (int idx = 0; idx < F.dim; idx++) {
            if (c[idx] == 0) continue;
            auto [e, i, j] = F.decode(idx);
            if (e == 0) {
                r.c[idx] += c[idx];
            } else {
                r.c[F.index(0, i, j)] -= c[idx];
                r.c[F.index(1, i, j)] -= c[idx];
            }
        }
        return r;
    }

    Ball embed(Prec p) const {
        Ball acc = Ball::exact(Complex(0, p));
        for (int idx = 0; idx < F->dim; idx++) {
            if (c[idx] == 0) continue;
            Ball coef = Ball::exact_q(c[idx], 0, p);
            acc += coef * Ball::from_rounded(F->embed_basis(idx, p));
        }
        return acc;
    }
};

// Recognize a complex value as an element of F: integer relation between the
// basis embeddings and the value. Certified by re-evaluation at doubled
// precision.
inline std::optional<FieldElem> recognize_in_field(const std::function<Ball(Prec)>& x_at,
                                                   const FieldPtr& F, Prec prec,
                                                   long max_coeff_bits) {
    auto attempt = [&](Prec p) -> std::optional<FieldElem> {
        Ball x = x_at(p);
        double acc_bits = std::min((double)p, x.accuracy_bits());
        long scale = (long)acc_bits - 16;
        if (scale < 4 * max_coeff_bits) return std::nullopt;
        std::vector<Ball> v;
        v.reserve(F->dim + 1);
        for (int i = 0; i < F->dim; i++) v.push_back(Ball::from_rounded(F->embed_basis(i, p + 64)));
        v.push_back(x);
        auto rel = integer_relation(v, scale, max_coeff_bits);
        if (!rel) return std::nullopt;
        mpz_class m = (*rel)[F->dim];
        if (m == 0) return std::nullopt;
        FieldElem out(F);
        for (int i = 0; i < F->dim; i++) {
            out.c[i] = mpq_class((*rel)[i], -m);
            out.c[i].canonicalize();
        }
        return out;
    };
    auto cand = attempt(prec);
    if (!cand) return std::nullopt;
    // certify against a doubled-precision evaluation
    Ball x2 = x_at(2 * prec);
    Ball diff = cand->embed(2 * prec) - x2;
    double acc = std::min((double)prec, x_at(prec).accuracy_bits());
    if (!diff.contains_zero()) return std::nullopt;
    if (mag_add(diff.c.exponent(), diff.rad_l2) > -acc - std::max(32.0, acc / 8)) return std::nullopt;
    return cand;
}

} // namespace sylv
