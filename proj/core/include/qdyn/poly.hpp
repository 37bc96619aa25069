#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdyn/spoly.hpp"
#include "qdyn/vars.hpp"

namespace qdyn {

// Sparse multivariate Laurent polynomial in the parameter generators
// (z1..z4, al, be, pi, g1..g4) with coefficients in Z[s, 1/s].  Keeping the
// q-powers in the coefficient ring instead of the monomial keeps term counts
// small under the long operator products this engine runs.
//
// Terms are sorted in descending graded-lex order; no zero coefficients are
// stored.  The VAR_S slot of every monomial is zero by construction.
class Poly {
 public:
  using Term = std::pair<Monomial, SPoly>;

  Poly() = default;

  static Poly zero() { return Poly(); }
  static Poly one() { return coeff(SPoly::one()); }
  static Poly constant(long c) { return coeff(SPoly::si(c)); }
  static Poly coeff(const SPoly& c);
  static Poly s_pow(long k) { return coeff(SPoly::s_power(k)); }
  static Poly monomial(const Monomial& m, const SPoly& c = SPoly::one());
  static Poly gen(int var, int k = 1) { return monomial(Monomial::gen(var, k)); }

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first.is_one()); }
  bool is_single_term() const { return t_.size() == 1; }
  size_t term_count() const { return t_.size(); }
  const std::vector<Term>& terms() const { return t_; }
  const Term& leading() const { return t_.front(); }

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly mul_mono(const Monomial& m, const SPoly& c) const;
  Poly pow(int k) const;  // k >= 0

  // var -> sign * s^{s_shift} * repl (repl a monomial); covers the P-shifts,
  // delta-support substitutions, u -> u+const and evaluation-point constraints
  Poly subst(int var, const Monomial& repl, long s_shift = 0, int sign = +1) const;

  bool depends_on(int var) const;
  int min_exp(int var) const;  // 0 when the variable is absent
  long s_lo() const;           // min s-exponent over all coefficients

  static std::optional<Poly> try_divide(const Poly& num, const Poly& den);
  static int cmp(const Poly& a, const Poly& b);

  std::string str() const;

 private:
  std::vector<Term> t_;
  void normalize();
  friend class PolyBuilder;
};

class PolyBuilder {
 public:
  void add(const Monomial& m, const SPoly& c);
  void add(const Poly& p, const Monomial& shift, const SPoly& scale);
  Poly take();

 private:
  std::map<Monomial, SPoly> acc_;
};

}  // namespace qdyn
