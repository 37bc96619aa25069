#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace qdyn {

// Fixed generator table for the coefficient field Q(s; z1..z4, al, be, pi, g1..g4).
//
// Everything is multiplicative: s = q^{1/2}, zi = q^{u_i} for the spectral
// parameters, al = q^{a} and be = q^{b} for evaluation points, pi = q^{P} for
// the dynamical parameter, g1..g4 are free slots for generic series
// parameters.  With these generators every bracket [x] = q^{-x} - q^{x} whose
// argument has integer coefficients on the continuous variables and a
// half-integer constant is a Laurent binomial with integer exponents.
//
// The enum order is the canonical generator order used by the graded
// lexicographic monomial order and by all serialization.
enum Var : int {
  VAR_S = 0,
  VAR_Z1,
  VAR_Z2,
  VAR_Z3,
  VAR_Z4,
  VAR_AL,
  VAR_BE,
  VAR_PI,
  VAR_G1,
  VAR_G2,
  VAR_G3,
  VAR_G4,
  VAR_COUNT
};

const char* var_name(int v);

// Dense exponent vector over the fixed generator table.
struct Monomial {
  std::array<int16_t, VAR_COUNT> e{};

  static Monomial one() { return Monomial{}; }
  static Monomial gen(int v, int k = 1) {
    Monomial m;
    m.e[v] = static_cast<int16_t>(k);
    return m;
  }

  bool is_one() const {
    for (auto x : e)
      if (x != 0) return false;
    return true;
  }
  int degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < VAR_COUNT; ++i) r.e[i] = static_cast<int16_t>(e[i] + o.e[i]);
    return r;
  }
  Monomial pow(int k) const {
    Monomial r;
    for (int i = 0; i < VAR_COUNT; ++i) r.e[i] = static_cast<int16_t>(e[i] * k);
    return r;
  }
  Monomial inv() const { return pow(-1); }
  bool operator==(const Monomial& o) const { return e == o.e; }

  // Graded lex: higher total degree first, ties broken by the canonical
  // generator order.  Returns <0, 0, >0 like memcmp.
  static int cmp(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    for (int i = 0; i < VAR_COUNT; ++i)
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
    return 0;
  }
  bool operator<(const Monomial& o) const { return cmp(*this, o) < 0; }

  std::string str() const;
};

}  // namespace qdyn
