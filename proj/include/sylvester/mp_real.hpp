// Arbitrary-precision real numbers on top of MPFR, with value semantics.
// Each Real carries its own precision; binary operations allocate the result
// at the larger of the two operand precisions.
#pragma once

#include <mpfr.h>
#include <gmpxx.h>
#include <string>
#include <stdexcept>
#include <utility>
#include <cmath>

namespace sylv {

using Prec = mpfr_prec_t;

class Real {
public:
    Real() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
    explicit Real(Prec prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(long n, Prec prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, n, MPFR_RNDN); }
    Real(double d, Prec prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, d, MPFR_RNDN); }
    Real(const mpz_class& z, Prec prec) { mpfr_init2(v_, prec); mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }
    Real(const mpq_class& q, Prec prec) { mpfr_init2(v_, prec); mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
    Real(const std::string& s, Prec prec) {
        mpfr_init2(v_, prec);
        if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("Real: bad decimal literal: " + s);
    }

    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, 64); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    Prec prec() const { return mpfr_get_prec(v_); }

    static Real pi(Prec p) { Real r(p); mpfr_const_pi(r.v_, MPFR_RNDN); return r; }
    static Real euler_gamma(Prec p) { Real r(p); mpfr_const_euler(r.v_, MPFR_RNDN); return r; }

    bool is_zero() const { return mpfr_zero_p(v_); }
    bool is_finite() const { return mpfr_number_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    // Binary exponent e with |x| < 2^e; very negative for zero.
    long exponent() const { return mpfr_zero_p(v_) ? -(1L << 40) : mpfr_get_exp(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    mpz_class round_to_int() const {
        mpz_class z;
        mpfr_t t; mpfr_init2(t, prec());
        mpfr_round(t, v_);
        mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDZ);
        mpfr_clear(t);
        return z;
    }
    mpz_class floor_to_int() const {
        mpz_class z;
        mpfr_t t; mpfr_init2(t, prec());
        mpfr_floor(t, v_);
        mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDZ);
        mpfr_clear(t);
        return z;
    }

    std::string str(size_t digits = 0) const {
        if (digits == 0) digits = (size_t)(prec() * 0.30103) + 2;
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", (int)digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

#define SYLV_REAL_BINOP(op, fn)                                             \
    friend Real operator op(const Real& a, const Real& b) {                 \
        Real r(std::max(a.prec(), b.prec()));                               \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                    \
        return r;                                                           \
    }
    SYLV_REAL_BINOP(+, mpfr_add)
    SYLV_REAL_BINOP(-, mpfr_sub)
    SYLV_REAL_BINOP(*, mpfr_mul)
    SYLV_REAL_BINOP(/, mpfr_div)
#undef SYLV_REAL_BINOP

    friend Real operator-(const Real& a) { Real r(a.prec()); mpfr_neg(r.v_, a.v_, MPFR_RNDN); return r; }
    Real& operator+=(const Real& b) { *this = *this + b; return *this; }
    Real& operator-=(const Real& b) { *this = *this - b; return *this; }
    Real& operator*=(const Real& b) { *this = *this * b; return *this; }
    Real& operator/=(const Real& b) { *this = *this / b; return *this; }

    friend Real operator*(const Real& a, long n) { Real r(a.prec()); mpfr_mul_si(r.v_, a.v_, n, MPFR_RNDN); return r; }
    friend Real operator*(long n, const Real& a) { return a * n; }
    friend Real operator/(const Real& a, long n) { Real r(a.prec()); mpfr_div_si(r.v_, a.v_, n, MPFR_RNDN); return r; }
    friend Real operator+(const Real& a, long n) { Real r(a.prec()); mpfr_add_si(r.v_, a.v_, n, MPFR_RNDN); return r; }
    friend Real operator-(const Real& a, long n) { Real r(a.prec()); mpfr_sub_si(r.v_, a.v_, n, MPFR_RNDN); return r; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }

private:
    mpfr_t v_;
};

#define SYLV_REAL_FN1(name, fn)                                             \
    inline Real name(const Real& a) {                                       \
        Real r(a.prec());                                                   \
        fn(r.get(), a.get(), MPFR_RNDN);                                    \
        return r;                                                           \
    }
SYLV_REAL_FN1(sqrt, mpfr_sqrt)
SYLV_REAL_FN1(exp, mpfr_exp)
SYLV_REAL_FN1(log, mpfr_log)
SYLV_REAL_FN1(sin, mpfr_sin)
SYLV_REAL_FN1(cos, mpfr_cos)
SYLV_REAL_FN1(abs, mpfr_abs)
SYLV_REAL_FN1(expint_ei, mpfr_eint)
#undef SYLV_REAL_FN1

// E1(x) = -Ei(-x) for x > 0.
inline Real expint_e1(const Real& x) { return -expint_ei(-x); }

inline Real atan2(const Real& y, const Real& x) {
    Real r(std::max(y.prec(), x.prec()));
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}
inline Real pow(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_pow(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
inline Real pow_si(const Real& a, long n) {
    Real r(a.prec());
    mpfr_pow_si(r.get(), a.get(), n, MPFR_RNDN);
    return r;
}
// Real n-th root of a nonnegative real.
inline Real root(const Real& a, unsigned long n) {
    Real r(a.prec());
    mpfr_rootn_ui(r.get(), a.get(), n, MPFR_RNDN);
    return r;
}
inline Real ldexp(const Real& a, long e) {
    Real r(a.prec());
    mpfr_mul_2si(r.get(), a.get(), e, MPFR_RNDN);
    return r;
}
inline Real hypot(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
inline Real gamma_upper(const Real& a, const Real& x) {
    Real r(std::max(a.prec(), x.prec()));
    mpfr_gamma_inc(r.get(), a.get(), x.get(), MPFR_RNDN);
    return r;
}

} // namespace sylv
