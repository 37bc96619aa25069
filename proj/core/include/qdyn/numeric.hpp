#pragma once

#include <mpfr.h>

#include <map>
#include <string>

#include "qdyn/rat.hpp"

namespace qdyn {

// Arbitrary-precision real, a thin RAII wrapper over mpfr_t.  The precision
// is fixed per value at construction; arithmetic results take the maximum
// precision of their operands.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 256) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
  Real(double d, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_d(x_, d, MPFR_RNDN); }
  Real(const char* s, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_str(x_, s, 10, MPFR_RNDN); }
  Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_swap(x_, o.x_); }
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept { mpfr_swap(x_, o.x_); return *this; }
  ~Real() { mpfr_clear(x_); }

  mpfr_prec_t prec() const { return mpfr_get_prec(x_); }
  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(x_); }
  int sign() const { return mpfr_sgn(x_); }

  Real operator-() const;
  Real operator+(const Real& o) const;
  Real operator-(const Real& o) const;
  Real operator*(const Real& o) const;
  Real operator/(const Real& o) const;
  bool operator<(const Real& o) const { return mpfr_cmp(x_, o.x_) < 0; }
  bool operator>(const Real& o) const { return mpfr_cmp(x_, o.x_) > 0; }

  static Real from_mpz(const mpz_class& z, mpfr_prec_t prec);
  Real sqrt() const;
  Real abs() const;
  Real pow(const Real& e) const;  // this > 0
  Real pow_si(long k) const;
  Real log() const;
  Real exp() const;

  std::string str(int digits = 20) const;

 private:
  mpfr_t x_;
  friend class Complex;
};

struct Complex {
  Real re, im;

  explicit Complex(mpfr_prec_t prec = 256) : re(prec), im(prec) {}
  Complex(const Real& r, const Real& i) : re(r), im(i) {}
  Complex(double r, double i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}

  mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
  Complex operator-() const { return {-re, -im}; }
  Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
  Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
  Complex operator*(const Complex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Complex operator/(const Complex& o) const;
  Complex& operator+=(const Complex& o) { return *this = *this + o; }
  Complex& operator-=(const Complex& o) { return *this = *this - o; }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  Complex& operator/=(const Complex& o) { return *this = *this / o; }

  Real abs() const { return (re * re + im * im).sqrt(); }
  Complex pow_si(long k) const;

  static Complex of(double r, mpfr_prec_t prec) { return Complex(r, 0.0, prec); }
  static Complex one(mpfr_prec_t prec) { return of(1.0, prec); }

  std::string str(int digits = 20) const { return re.str(digits) + (im.sign() < 0 ? "" : "+") + im.str(digits) + "i"; }
};

// Generator assignment for numeric evaluation: values for s, z1.., al, be, pi, g..
using Assignment = std::map<int, Complex>;

struct PoleError {
  std::string factor;     // the vanishing denominator factor
  std::string assignment; // witness
};

// Evaluates an exact expression at a generator assignment.  Throws
// std::domain_error with the offending factor when a denominator factor
// vanishes (|value| below 2^-(prec/2)).
Complex eval_poly(const Poly& p, const Assignment& a, mpfr_prec_t prec);
Complex eval_rat(const Rat& r, const Assignment& a, mpfr_prec_t prec);

}  // namespace qdyn
