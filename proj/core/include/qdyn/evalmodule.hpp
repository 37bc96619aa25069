#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdyn/exponent.hpp"
#include "qdyn/rat.hpp"

namespace qdyn::modules {

// ---------------------------------------------------------------------------
// The (l+1)-dimensional evaluation module V^(l)(q^{2a}) with weight basis
// v_0..v_l, q^h v_i = q^{l-2i} v_i.  Operators act with exact rational
// coefficients in (s; z.., al/be, pi) together with an integer e^Q charge per
// entry: an entry (c(P), k) maps f(P) v_src to c(P) f(P+k) v_dst.
// ---------------------------------------------------------------------------

inline int hwt(int l, int i) { return l - 2 * i; }

struct EvalModuleSpec {
  int l = 1;
  int sign = +1;           // L^+ (Thm-rep form) or L^- (its mirror)
  int eval_var = VAR_AL;   // generator carrying the evaluation point
  bool phi_free = false;   // true: drop the 1/phi prefactor from L entries
};

// Opaque scalar phi_l^sign(u_spec - evalpoint + offset).  The only rewrite
// rule is phi(x) phi(x-1) = [x-(l+1)/2][x+(l+1)/2].
struct PhiKey {
  int sign;
  int level;
  int eval_var;
  int spec_var;
  int offset;
  auto operator<=>(const PhiKey&) const = default;
};
using PhiBag = std::map<PhiKey, int>;  // key -> exponent, no zero entries

PhiBag phi_mul(const PhiBag& a, const PhiBag& b);
PhiBag phi_neg(const PhiBag& a);
std::string phi_str(const PhiBag& b);
// Reduce a bag to the empty bag using the phi relation where possible.
// Returns the rational multiplier (product of the bracket pairs) and whether
// the bag emptied completely.
std::pair<Rat, bool> phi_reduce(const PhiBag& bag);

struct Component {
  Rat c;
  PhiBag phi;
  int qshift = 0;
};

// One matrix entry is a formal sum of components (distinct e^Q charges or phi
// monomials are kept apart; equal keys merge).
using Entry = std::vector<Component>;

struct ModuleOperator {
  int dim = 0;
  // ent[dst][src]
  std::vector<std::vector<Entry>> ent;

  explicit ModuleOperator(int d = 0) : dim(d), ent(d, std::vector<Entry>(d)) {}
  static ModuleOperator identity(int d);

  void add_component(int dst, int src, Component comp);
  void canonicalize();  // merge components with equal (qshift, phi)

  ModuleOperator operator+(const ModuleOperator& o) const;
  ModuleOperator operator-(const ModuleOperator& o) const;
  ModuleOperator scaled(const Rat& f) const;
  // operator product: (A*B) v = A (B v); B's coefficients get A's e^Q shifts
  ModuleOperator operator*(const ModuleOperator& o) const;
  // inverse for operators that are diagonal with single components
  ModuleOperator inverse_diagonal() const;

  bool is_zero() const;
};

struct VecEntry {
  Rat c;
  PhiBag phi;
};
using ModuleVec = std::vector<VecEntry>;  // index = basis index, zero c = absent

ModuleVec basis_vec(int dim, int i);
ModuleVec apply(const ModuleOperator& op, const ModuleVec& v);
bool vec_is_zero(const ModuleVec& v);

// Equality of operators / vectors up to the phi relation; returns a witness
// string on failure.
std::optional<std::string> op_diff_witness(const ModuleOperator& a, const ModuleOperator& b);
inline bool op_equal(const ModuleOperator& a, const ModuleOperator& b) {
  return !op_diff_witness(a, b).has_value();
}

// multiplication operator by a coefficient f(P, z..) (qshift 0); and the
// variant with P replaced by P+h (h read on the basis vector the coefficient
// multiplies)
ModuleOperator mult_op(int dim, const Rat& f);
ModuleOperator mult_op_ph(int l, const Rat& f);

// ---------------------------------------------------------------------------
// Operator builders.  All spectral arguments are u = (additive var of zvar) +
// off; on V^(l)(q^{2a}) with a the additive var of spec.eval_var.
// ---------------------------------------------------------------------------

// L^{sign}_{row col}(u) per the evaluation-module action (and its sign mirror)
ModuleOperator L_op(const EvalModuleSpec& spec, int row, int col, int zvar, int off = 0);

// Gauss components: K1, K2, E^{sign}, F^{sign} as rational operators.  K's
// carry a single phi power; E and F are phi-free.
ModuleOperator K1_op(const EvalModuleSpec& spec, int zvar, int off = 0);
ModuleOperator K2_op(const EvalModuleSpec& spec, int zvar, int off = 0);
ModuleOperator E_half_op(const EvalModuleSpec& spec, int zvar, int off = 0);
ModuleOperator F_half_op(const EvalModuleSpec& spec, int zvar, int off = 0);
// H = K1 * K2^{-1}
ModuleOperator H_op(const EvalModuleSpec& spec, int zvar, int off = 0);

// the non-dynamical loop-algebra action (used as oracle): returns the matrix
// of x^+_n, x^-_n, a_n, q^{h} on V_l(w) with w = q^{2a}
struct LoopAction {
  int l;
  int eval_var;
  Rat qh(int i) const;                 // eigenvalue of q^h on v_i
  Rat a_n(int n, int i) const;         // eigenvalue of a_n on v_i (n != 0)
  Rat xplus_n(int n, int i) const;     // coefficient of v_{i-1}
  Rat xminus_n(int n, int i) const;    // coefficient of v_{i+1}
};

}  // namespace qdyn::modules
