#pragma once

#include "qcm/integers.hpp"

#include <mpfr.h>
#include <string>
#include <utility>

namespace qcm {

// Value-semantic wrapper over mpfr_t with explicit per-value precision.
// Binary operations compute at the larger operand precision.
class Real {
  public:
    explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
    Real(double v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_d(x_, v, MPFR_RNDN); }
    Real(long v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_si(x_, v, MPFR_RNDN); }
    Real(const Int& v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_z(x_, v.get_mpz_t(), MPFR_RNDN); }
    Real(const Rat& v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_q(x_, v.get_mpq_t(), MPFR_RNDN); }

    Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(x_, 2); mpfr_swap(x_, o.x_); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(x_, o.x_); return *this; }
    ~Real() { mpfr_clear(x_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }
    mpfr_ptr raw() { return x_; }
    mpfr_srcptr raw() const { return x_; }

    static Real pi(mpfr_prec_t prec) { Real r(prec); mpfr_const_pi(r.x_, MPFR_RNDN); return r; }
    static Real pow2(long e, mpfr_prec_t prec) { Real r(prec); mpfr_set_ui_2exp(r.x_, 1, e, MPFR_RNDN); return r; }

    friend Real operator+(const Real& a, const Real& b) { return bin(a, b, mpfr_add); }
    friend Real operator-(const Real& a, const Real& b) { return bin(a, b, mpfr_sub); }
    friend Real operator*(const Real& a, const Real& b) { return bin(a, b, mpfr_mul); }
    friend Real operator/(const Real& a, const Real& b) { return bin(a, b, mpfr_div); }
    Real operator-() const { Real r(prec()); mpfr_neg(r.x_, x_, MPFR_RNDN); return r; }
    Real& operator+=(const Real& o) { *this = *this + o; return *this; }
    Real& operator-=(const Real& o) { *this = *this - o; return *this; }
    Real& operator*=(const Real& o) { *this = *this * o; return *this; }

    Real abs() const { Real r(prec()); mpfr_abs(r.x_, x_, MPFR_RNDN); return r; }
    Real sqrt() const { Real r(prec()); mpfr_sqrt(r.x_, x_, MPFR_RNDN); return r; }
    Real exp() const { Real r(prec()); mpfr_exp(r.x_, x_, MPFR_RNDN); return r; }
    Real log() const { Real r(prec()); mpfr_log(r.x_, x_, MPFR_RNDN); return r; }
    void sin_cos(Real& s, Real& c) const {
        mpfr_set_prec(s.x_, prec());
        mpfr_set_prec(c.x_, prec());
        mpfr_sin_cos(s.x_, c.x_, x_, MPFR_RNDN);
    }

    int sign() const { return mpfr_sgn(x_); }
    bool is_zero() const { return mpfr_zero_p(x_); }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    Int round() const {
        mpfr_t t; mpfr_init2(t, prec());
        mpfr_round(t, x_);
        Int z; mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDZ);
        mpfr_clear(t);
        return z;
    }
    Int floor() const {
        mpfr_t t; mpfr_init2(t, prec());
        mpfr_floor(t, x_);
        Int z; mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDZ);
        mpfr_clear(t);
        return z;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) >= 0; }

    std::string str(std::size_t digits = 20) const;

  private:
    using mpfr_fun = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    static Real bin(const Real& a, const Real& b, mpfr_fun f) {
        Real r(std::max(a.prec(), b.prec()));
        f(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    mpfr_t x_;
};

struct Complex {
    Real re, im;

    explicit Complex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(double r, double i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Complex operator-() const { return {-re, -im}; }
    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }

    Complex conj() const { return {re, -im}; }
    Real abs() const { return (re * re + im * im).sqrt(); }
    Real abs2() const { return re * re + im * im; }

    // exp(re) * (cos im + i sin im)
    Complex exp() const {
        Real m = re.exp(), s(prec()), c(prec());
        im.sin_cos(s, c);
        return {m * c, m * s};
    }
    Complex sqrt() const;  // principal branch

    std::string str(std::size_t digits = 20) const;
};

Complex pow_complex(Complex base, unsigned long e);

}  // namespace qcm
