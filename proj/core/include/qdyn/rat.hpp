#pragma once

#include <string>
#include <vector>

#include "qdyn/poly.hpp"

namespace qdyn {

// Exact element of the fraction field, kept as an expanded numerator over a
// bag of denominator factors.  Denominators in this artifact are (almost
// always) products of bracket binomials, so the bag form keeps the chains of
// ratios that arise from operator composition from ever being expanded.
//
// Equality is decided by cross multiplication after cancelling syntactically
// common factors; no polynomial GCDs are taken.  try_divide-based reduction of
// the numerator against single factors is used opportunistically to keep
// representations small.
class Rat {
 public:
  struct Factor {
    Poly p;  // canonical: monomial content stripped, leading coefficient > 0
    int e;   // > 0
  };

  Rat() = default;  // zero
  Rat(const Poly& p) : num_(p) {}
  Rat(long c) : num_(Poly::constant(c)) {}

  static Rat frac(const Poly& num, const Poly& den);

  const Poly& num() const { return num_; }
  const std::vector<Factor>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  Rat operator-() const;
  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const { return *this + (-o); }
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  Rat inverse() const;

  bool operator==(const Rat& o) const { return equal(*this, o); }
  bool operator!=(const Rat& o) const { return !equal(*this, o); }
  static bool equal(const Rat& a, const Rat& b);

  // Substitute var -> sign * s^{s_shift} * repl in numerator and all factors.
  Rat subst(int var, const Monomial& repl, long s_shift = 0, int sign = +1) const;
  // q^P -> q^{P+k}: the shift operators e^{kQ} act on coefficients this way.
  Rat shift_p(int k) const { return subst(VAR_PI, Monomial::gen(VAR_PI), 2 * k); }

  bool depends_on(int var) const;
  Poly den_expanded() const;

  // Cancel numerator against denominator factors by exact division.
  void reduce();

  std::string str() const;

 private:
  Poly num_;
  std::vector<Factor> den_;

  void push_den(const Poly& f, int e);  // canonicalizes, folds unit into num_
  static void sort_bag(std::vector<Factor>& b);
};

}  // namespace qdyn
