#pragma once

#include "qdyn/evalmodule.hpp"
#include "qdyn/report.hpp"

namespace qdyn::modules {

// Formal delta calculus for the total currents.  delta(z/z0) is the bilateral
// series sum_n (z/z0)^n, represented purely by its support; the only
// evaluation rule is f(z) delta(z/z0) = f(z0) delta(z/z0).  Supports are
// signed monomials sgn * s^{s} * m.
struct Support {
  Monomial m;
  long s = 0;
  int sgn = +1;

  static int cmp(const Support& a, const Support& b) {
    int c = Monomial::cmp(a.m, b.m);
    if (c != 0) return c;
    if (a.s != b.s) return a.s < b.s ? -1 : 1;
    if (a.sgn != b.sgn) return a.sgn < b.sgn ? -1 : 1;
    return 0;
  }
  bool operator==(const Support& o) const { return cmp(*this, o) == 0; }
  bool operator!=(const Support& o) const { return cmp(*this, o) != 0; }
  bool operator<(const Support& o) const { return cmp(*this, o) < 0; }
};

struct DTerm {
  Rat coef;      // rational in P (and possibly the other spectral variable)
  Support sup;   // delta(zvar^2 / sup): supports live in q^{2u} units
  int qshift = 0;
  PhiBag phi;    // opaque phi factors picked up from sandwiching operators
};

// One-variable delta current on V^(l): ent[dst][src] is a list of terms.
struct DeltaCurrent {
  int dim = 0;
  int zvar = VAR_Z1;
  std::vector<std::vector<std::vector<DTerm>>> ent;

  explicit DeltaCurrent(int d = 0, int z = VAR_Z1)
      : dim(d), zvar(z), ent(d, std::vector<std::vector<DTerm>>(d)) {}
};

// total currents E(u) and F(u) on the module (central charge zero)
DeltaCurrent E_current(const EvalModuleSpec& spec, int zvar);
DeltaCurrent F_current(const EvalModuleSpec& spec, int zvar);

// substitute zvar^2 -> support monomial into a rational (all occurrences of
// zvar must have even exponent)
Rat delta_substitute(const Rat& r, int zvar, const Support& sup);

// difference of the two Laurent expansions (around infinity and around 0) of a
// rational operator in zvar; every pole must be simple with monomial support
DeltaCurrent expansion_difference(const ModuleOperator& op, int zvar);

// A * D and D * A for a rational operator A and a delta current D in an
// unrelated variable (no substitution) or the same variable (substituted).
DeltaCurrent compose(const ModuleOperator& a, const DeltaCurrent& d);
DeltaCurrent compose(const DeltaCurrent& d, const ModuleOperator& a);
DeltaCurrent dc_scale(const DeltaCurrent& d, const Rat& f);
DeltaCurrent dc_sub(const DeltaCurrent& a, const DeltaCurrent& b);
bool dc_is_zero(const DeltaCurrent& d);
// canonical comparison
std::optional<std::string> dc_diff_witness(const DeltaCurrent& a, const DeltaCurrent& b);

// Two-variable delta products (compositions of two total currents).
struct DTerm2 {
  Rat coef;
  Support sup_z;  // delta(z^2/sup_z)
  Support sup_w;  // delta(w^2/sup_w)
  int qshift = 0;
};
struct DeltaCurrent2 {
  int dim = 0;
  int zvar = VAR_Z1, wvar = VAR_Z2;
  std::vector<std::vector<std::vector<DTerm2>>> ent;
  explicit DeltaCurrent2(int d = 0) : dim(d), ent(d, std::vector<std::vector<DTerm2>>(d)) {}
};

// compose two one-variable currents: (first current in zvar) after (second in wvar)
DeltaCurrent2 compose2(const DeltaCurrent& a, const DeltaCurrent& b);
std::optional<std::string> dc2_diff_witness(const DeltaCurrent2& a, const DeltaCurrent2& b);

}  // namespace qdyn::modules
