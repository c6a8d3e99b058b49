// CM points on X_0(27) at tau = p omega / 9 and their Galois conjugates: the
// class group Pic(O_9p) acts on the lattice pair (Z tau + Z, Z tau + Z/N)
// through inverse proper ideals; a Smith-form computation recovers the
// transported point in the upper half plane.
#pragma once

#include "sylvester/classgroup.hpp"
#include "sylvester/modparam.hpp"

namespace sylv {

// lattice in K with Q-basis pair
struct KLattice {
    EisQ g1, g2;
};

// Hermite basis of the Z-span of the given generators
inline KLattice lattice_from_gens(std::vector<EisQ> gens) {
    mpz_class den = 1;
    for (auto& g : gens) {
        mpz_class d1 = g.a.get_den(), d2 = g.b.get_den();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d1.get_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d2.get_mpz_t());
    }
    std::vector<std::array<mpz_class, 2>> rows;  // (rational, omega) coords
    for (auto& g : gens) {
        mpq_class a = g.a * den, b = g.b * den;
        a.canonicalize(); b.canonicalize();
        rows.push_back({mpz_class(a.get_num()), mpz_class(b.get_num())});
    }
    size_t n = rows.size();
    // single pivot in the omega-column
    for (;;) {
        int i1 = -1, i2 = -1;
        for (size_t i = 0; i < n; i++) {
            if (rows[i][1] == 0) continue;
            if (i1 < 0) i1 = (int)i;
            else { i2 = (int)i; break; }
        }
        if (i2 < 0) break;
        if (abs(rows[i1][1]) > abs(rows[i2][1])) std::swap(i1, i2);
        mpz_class q = rows[i2][1] / rows[i1][1];
        rows[i2][0] -= q * rows[i1][0];
        rows[i2][1] -= q * rows[i1][1];
    }
    int piv = -1;
    for (size_t i = 0; i < n; i++)
        if (rows[i][1] != 0) piv = (int)i;
    if (piv < 0) throw std::runtime_error("lattice_from_gens: rank < 2");
    mpz_class g0 = 0;
    for (size_t i = 0; i < n; i++) {
        if ((int)i == piv) continue;
        mpz_gcd(g0.get_mpz_t(), g0.get_mpz_t(), rows[i][0].get_mpz_t());
    }
    if (g0 == 0) throw std::runtime_error("lattice_from_gens: rank < 2 (rational part)");
    // clear the rational coordinate of the pivot row modulo g0 (cosmetic)
    mpz_class q = rows[piv][0] / g0;
    rows[piv][0] -= q * g0;
    KLattice L;
    L.g1 = EisQ(mpq_class(rows[piv][0], den), mpq_class(rows[piv][1], den));
    L.g2 = EisQ(mpq_class(g0, den), 0);
    return L;
}

inline KLattice lattice_scale(const KLattice& L, const EisQ& s) {
    return {L.g1 * s, L.g2 * s};
}

// integer coordinates of v over the basis of L; throws when not contained
inline std::array<mpz_class, 2> lattice_coords(const KLattice& L, const EisQ& v, bool* ok = nullptr) {
    mpq_class a11 = L.g1.a, a12 = L.g2.a, a21 = L.g1.b, a22 = L.g2.b;
    mpq_class det = a11 * a22 - a12 * a21;
    if (det == 0) throw std::runtime_error("lattice_coords: degenerate");
    mpq_class m1 = (v.a * a22 - v.b * a12) / det;
    mpq_class m2 = (v.b * a11 - v.a * a21) / det;
    m1.canonicalize(); m2.canonicalize();
    if (m1.get_den() != 1 || m2.get_den() != 1) {
        if (ok) { *ok = false; return {0, 0}; }
        throw std::runtime_error("lattice_coords: not in the lattice");
    }
    if (ok) *ok = true;
    return {mpz_class(m1.get_num()), mpz_class(m2.get_num())};
}

// Smith-adapted basis: w1, w2 with sup = Z w1 + Z w2 and sub = Z d1 w1 + Z d2 w2
struct Snf2 {
    mpz_class d1, d2;
    EisQ w1, w2;
};

inline Snf2 adapted_basis(const KLattice& sub, const KLattice& sup) {
    auto r1 = lattice_coords(sup, sub.g1);
    auto r2 = lattice_coords(sup, sub.g2);
    mpz_class M[2][2] = {{r1[0], r1[1]}, {r2[0], r2[1]}};
    mpz_class V[2][2] = {{1, 0}, {0, 1}};  // accumulated column operations
    auto col_op = [&](int dst, int src, const mpz_class& q) {
        for (int i = 0; i < 2; i++) {
            M[i][dst] -= q * M[i][src];
            V[i][dst] -= q * V[i][src];
        }
    };
    auto col_swap = [&]() {
        for (int i = 0; i < 2; i++) {
            std::swap(M[i][0], M[i][1]);
            std::swap(V[i][0], V[i][1]);
        }
    };
    for (int iter = 0; iter < 100000; iter++) {
        if (M[0][0] == 0) {
            if (M[0][1] != 0) { col_swap(); continue; }
            std::swap(M[0][0], M[1][0]);
            std::swap(M[0][1], M[1][1]);
            continue;
        }
        if (M[0][1] != 0) {
            mpz_class q = M[0][1] / M[0][0];
            col_op(1, 0, q);
            if (M[0][1] != 0) { col_swap(); continue; }
            continue;
        }
        if (M[1][0] != 0) {
            mpz_class q = M[1][0] / M[0][0];
            M[1][0] -= q * M[0][0];
            M[1][1] -= q * M[0][1];
            if (M[1][0] != 0) {
                std::swap(M[0][0], M[1][0]);
                std::swap(M[0][1], M[1][1]);
            }
            continue;
        }
        if (M[1][1] % M[0][0] != 0) { col_op(0, 1, -1); continue; }
        break;
    }
    Snf2 out;
    out.d1 = abs(M[0][0]);
    out.d2 = abs(M[1][1]);
    // sup' = V^{-1} sup (row convention); det V = +-1
    mpz_class det = V[0][0] * V[1][1] - V[0][1] * V[1][0];
    mpz_class vi[2][2] = {{V[1][1] * det, -V[0][1] * det}, {-V[1][0] * det, V[0][0] * det}};
    out.w1 = EisQ(mpq_class(vi[0][0]), 0) * sup.g1 + EisQ(mpq_class(vi[0][1]), 0) * sup.g2;
    out.w2 = EisQ(mpq_class(vi[1][0]), 0) * sup.g1 + EisQ(mpq_class(vi[1][1]), 0) * sup.g2;
    // verify the adapted-chain property on both generators
    KLattice subchk{out.w1 * EisQ(mpq_class(out.d1), 0), out.w2 * EisQ(mpq_class(out.d2), 0)};
    bool ok = true;
    lattice_coords(subchk, sub.g1, &ok);
    if (ok) lattice_coords(subchk, sub.g2, &ok);
    if (ok) lattice_coords(sub, subchk.g1, &ok);
    if (ok) lattice_coords(sub, subchk.g2, &ok);
    if (!ok) throw std::runtime_error("adapted_basis: verification failed");
    return out;
}

// transported upper-half-plane representative of the conjugate of the CM
// point tau = p omega/9 (with cyclic `level` structure) by the class `cls`
inline Surd cm_transport_tau(long p, long level, const FormClass& cls, const mpz_class& conductor) {
    EisQ tau(0, mpq_class(p, 9));
    KLattice lam{tau, EisQ(mpq_class(1), 0)};
    KLattice lamC{tau, EisQ(mpq_class(1, level), 0)};
    mpz_class c = conductor;
    EisQ a1(mpq_class(cls.A), 0);
    EisQ a2(mpq_class((c - cls.B) / 2), mpq_class(c));
    EisQ a2c = a2.conj();
    auto act = [&](const KLattice& L) {
        std::vector<EisQ> gens{L.g1 * a1, L.g2 * a1, L.g1 * a2c, L.g2 * a2c};
        KLattice P = lattice_from_gens(gens);
        return lattice_scale(P, EisQ(mpq_class(1, mpz_class(cls.A)), 0));
    };
    KLattice L1 = act(lam), L1C = act(lamC);
    Snf2 s = adapted_basis(L1, L1C);
    if (!(s.d1 == 1 && s.d2 == level))
        throw std::runtime_error("cm_transport_tau: level structure did not transport cyclically");
    // L1 = Z w1 + Z (level w2): tau' = w1 / (level w2), up to sign
    EisQ t = s.w1 / (s.w2 * EisQ(mpq_class(level), 0));
    Surd ts = t.to_surd();
    if (!ts.in_upper_half()) ts = Surd(-ts.x, -ts.y, ts.D);
    if (!ts.in_upper_half()) throw std::runtime_error("cm_transport_tau: orientation failure");
    return ts;
}

// one conjugate point per class in `subgroup`, evaluated through param
inline std::vector<ECPoint<Ball>> cm_conjugates(long p, const std::vector<FormClass>& subgroup,
                                                const mpz_class& conductor, Prec prec) {
    std::vector<ECPoint<Ball>> out;
    out.reserve(subgroup.size());
    for (const auto& cls : subgroup)
        out.push_back(param_point(cm_transport_tau(p, 27, cls, conductor), prec));
    return out;
}

} // namespace sylv
