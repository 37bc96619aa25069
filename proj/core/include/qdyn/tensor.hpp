#pragma once

#include "qdyn/evalmodule.hpp"
#include "qdyn/report.hpp"

namespace qdyn::tensor {

using modules::EvalModuleSpec;
using modules::ModuleOperator;
using modules::ModuleVec;

// Tensor product V^(l1)(q^{2a}) (x)~ V^(l2)(q^{2b}) with the joint basis
// v_i (x) v_j flattened as i*(l2+1)+j.  Coefficients live canonically on the
// right slot; a first-slot operator acts with its dynamical argument shifted
// by the weight of the final second-slot vector, and the joint e^Q charge of
// a graded product X (x)~ Y is Y's charge (the right slot carries the global
// coefficient).
struct JointContext {
  int l1 = 1, l2 = 1;
  int sign = +1;
  // when constrained, be has been eliminated through b = a + offset_halves/2
  bool constrained = false;
  long offset_halves = 0;

  int dim() const { return (l1 + 1) * (l2 + 1); }
  int idx(int i, int j) const { return i * (l2 + 1) + j; }
  EvalModuleSpec spec1() const { return {l1, sign, VAR_AL, false}; }
  EvalModuleSpec spec2() const { return {l2, sign, VAR_BE, false}; }

  // substitute be -> al * q^{offset_halves/2} everywhere when constrained
  Rat pin(const Rat& r) const;
};

JointContext make_joint(int l1, int l2, int s, int sign = +1, bool constrained = true);

// X (x)~ Y for single-module operators (grading-matched pairs only, which is
// all the comultiplication ever produces)
ModuleOperator dyn_tensor(const ModuleOperator& X, const ModuleOperator& Y,
                          const JointContext& ctx);

// Delta(L_{row col}(u+off)) = sum_k L_{row k} (x)~ L_{k col}, pinned to the
// constraint when the context is constrained
ModuleOperator comultiply_L(const JointContext& ctx, int row, int col, int zvar, int off = 0);

// Delta(e^Q): the joint coefficient shift
ModuleOperator joint_eq_shift(const JointContext& ctx);

// ---------------------------------------------------------------------------
// pseudo-highest-weight vectors
// ---------------------------------------------------------------------------

struct Omega {
  int s = 0;
  std::vector<Rat> coeff;  // C~_m(P), m = 0..s, right-canonical coefficients
  ModuleVec vec;           // assembled joint vector
};

// printed closed form C_m^s read in right-canonical coordinates
// (P shifted by the weight of the second-slot vector it multiplies)
Rat closed_form_C(const JointContext& ctx, int s, int m);

// solve the annihilation condition Delta(L21(u)) Omega = 0; reports the
// u-dependence witness when the evaluation points are off the constraint
struct OmegaResult {
  std::optional<Omega> omega;
  CheckReport report;
};
OmegaResult omega_s(const JointContext& ctx, int s);

// pseudo-highest weight data: eigen ratios of Delta(L11), Delta(L22) on
// Omega^(s), checked component-uniform, compared to the closed formulas and
// to A(u)D(u-1) = 1 through twist-free combinations
CheckReport weight_check(const JointContext& ctx, int s);

// Drinfeld polynomial multiplicativity on the tensor module
CheckReport ddp_product_check(int l1, int l2, int s);

// q^h eigenvalue of Omega^(s) is q^{l1+l2-2s}
CheckReport qh_check(const JointContext& ctx, int s);

}  // namespace qdyn::tensor
