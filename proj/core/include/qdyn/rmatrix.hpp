#pragma once

#include <array>

#include "qdyn/exponent.hpp"
#include "qdyn/numeric.hpp"
#include "qdyn/rat.hpp"
#include "qdyn/report.hpp"

namespace qdyn::rmatrix {

// The trigonometric dynamical R-matrix.  Rows and columns run over the
// weight basis (11,12,21,22) of C^2 x C^2; only the middle 2x2 block is
// nontrivial and the corners are 1.  The scalar prefactor rho^{\pm} is kept
// as a tag, never expanded.
struct DynRMatrix {
  std::array<std::array<Rat, 4>, 4> e;
  int sign = +1;
  enum class Pref { None, RhoPlus, RhoMinus } pref = Pref::None;
};

// matrix part of the R-matrix, entries rational in (q, q^{2u}, q^{2P});
// u is an additive exponent (e.g. u1 - u2)
DynRMatrix build_r(int sign, const Exponent& u, bool with_prefactor = false);

// the four named middle entries as functions of (u, P)
Rat r_entry(int row, int col, const Exponent& u);  // row,col in {2,3}

// Labels of the middle entries used by the expanded RLL relations.  The
// assignment is determined by requiring the whole same-sign catalog to hold
// on V^(1); see relations.cpp.
struct EntryLabels {
  std::pair<int, int> b, bbar, c0, cbar0;  // positions in the 4x4 matrix
};
const EntryLabels& entry_labels();

// named-entry accessors through the determined labels
Rat coeff_b(const Exponent& u);
Rat coeff_bbar(const Exponent& u);
Rat coeff_c0(const Exponent& u);
Rat coeff_cbar0(const Exponent& u);

// ---- numerics ---------------------------------------------------------------

// rho^+(z) = q^{1/2} (z^{-1};q^4)(q^4 z^{-1};q^4) / (q^2 z^{-1};q^4)^2, truncated
Complex rho_plus(const Real& q, const Complex& z, int N);
Complex rho_minus(const Real& q, const Complex& z, int N);
// module-level prefactors rho_l^{\pm}
Complex rho_l_plus(int l, const Real& q, const Complex& z, int N);
Complex rho_l_minus(int l, const Real& q, const Complex& z, int N);

// elliptic matrix part of the R-matrix at real (u,P); the trigonometric
// matrix part evaluated numerically; and the entrywise degeneration check
std::array<std::array<Real, 4>, 4> elliptic_r_num(const Real& u, const Real& P, const Real& q,
                                                  const Real& p, int N);
std::array<std::array<Real, 4>, 4> trig_r_num(const Real& u, const Real& P, const Real& q);
CheckReport degeneration_check(double q, double u, double P, const std::vector<double>& p_seq,
                               double tol_at_last, int N, mpfr_prec_t prec);

}  // namespace qdyn::rmatrix
