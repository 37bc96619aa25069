#pragma once

#include <map>
#include <string>

#include "qdyn/rat.hpp"

namespace qdyn {

// Additive exponent form  x = c0 + sum_v c_v * v  with half-integer
// coefficients (stored as integer counts of halves).  The variables v range
// over the same table as the multiplicative generators: VAR_Z1 stands for u1
// (so q^{u1} = z1), VAR_AL for a, VAR_PI for P, and so on.
//
// These are the affine arguments of the bracket [x] = q^{-x} - q^{x} and of
// eta(x) = 1 - q^{2x} everywhere in the construction.
class Exponent {
 public:
  Exponent() = default;
  // whole + half/2 constant term
  static Exponent constant(long whole, long halves = 0);
  static Exponent var(int v, long coeff_halves = 2);  // coeff = halves/2

  Exponent operator+(const Exponent& o) const;
  Exponent operator-(const Exponent& o) const;
  Exponent operator-() const;
  Exponent operator+(long c) const { return *this + constant(c); }
  Exponent operator-(long c) const { return *this - constant(c); }
  Exponent scaled(long num_halves) const;  // multiply by num_halves/2

  bool operator==(const Exponent& o) const { return halves_ == o.halves_ && c_ == o.c_; }

  long const_halves() const { return c_; }
  const std::map<int, long>& var_halves() const { return halves_; }

  // q^{x} = s^{s_exp} * monomial-in-generators
  struct MonoS {
    Monomial m;
    long s = 0;
  };

  // q^{2x}; always exact (2x has integer coefficients whenever the
  // per-variable coefficients are half-integers).
  MonoS q2x() const;
  // q^{x}; requires integer variable coefficients, throws otherwise.
  MonoS qx() const;

  std::string str() const;

 private:
  std::map<int, long> halves_;  // var -> 2*coefficient, zero entries absent
  long c_ = 0;                  // 2*constant
};

// Poly term  c * q^{x}  from a MonoS.
inline Poly poly_qx(const Exponent::MonoS& ms, long c = 1) {
  return Poly::monomial(ms.m, SPoly::term(c, ms.s));
}

// Convenience constructors for the standard symbols.
inline Exponent e_const(long w, long h = 0) { return Exponent::constant(w, h); }
inline Exponent e_u(int zvar = VAR_Z1) { return Exponent::var(zvar); }
inline Exponent e_a() { return Exponent::var(VAR_AL); }
inline Exponent e_b() { return Exponent::var(VAR_BE); }
inline Exponent e_P() { return Exponent::var(VAR_PI); }
inline Exponent e_halves(long h) { return Exponent::constant(0, h); }

// [x] = q^{-x} - q^{x}
Rat bracket(const Exponent& x);
// eta(x) = 1 - q^{2x}
Rat eta(const Exponent& x);
// ascending shifted factorial [x]_m = [x][x+1]...[x+m-1]; [x]_0 = 1
Rat shifted_factorial(const Exponent& x, int m);
// (q^{2x}; q^2)_k as a Rat (finite eta-product)
Rat eta_factorial(const Exponent& x, int k);
// 1/[x] and 1/eta(x) as single-factor denominators (keeps bags splittable)
Rat bracket_inv(const Exponent& x);
Rat eta_inv(const Exponent& x);

}  // namespace qdyn
