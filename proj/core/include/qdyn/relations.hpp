#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qdyn/delta.hpp"
#include "qdyn/numeric.hpp"
#include "qdyn/evalmodule.hpp"
#include "qdyn/report.hpp"

namespace qdyn::modules {

// Relation catalog over the evaluation modules.  Every displayed equation of
// the expanded RLL relations (A.01..A.14 same sign, A.15..A.30 mixed at
// central charge zero), the positive half-current relations, and the total
// current relations has exactly one stable id here.
struct CatalogEntry {
  std::string id;
  std::string description;
  // runs the relation on V^(l); sign = +-1 selects L^+/L^- where applicable
  std::function<CheckReport(int l, int sign)> run;
};

const std::vector<CatalogEntry>& relation_catalog();
std::vector<std::string> catalog_ids(const std::string& prefix);

// individual relation families (exposed for tests)
CheckReport check_appendix_same_sign(int idx, int l, int sign);   // idx 1..14
CheckReport check_appendix_mixed(int idx, int l, int sign);       // idx 1..16
CheckReport check_plusrel(const std::string& which, int l);       // kk,ek1,fk1,ek2,fk2,ee,ff,ef
CheckReport check_defrel(const std::string& which, int l);        // hE,hF,kk,k1E,k1F,k2E,k2F,EE,FF,EF

// structural checks of the evaluation-module construction
CheckReport check_gauss(int l, int sign);
CheckReport check_determinant(int l, int sign);
CheckReport check_shift_table(int l, int sign);
CheckReport check_total_decomposition(int l);
CheckReport check_h_from_k(int l, int sign);
CheckReport check_qem_drinfeld_relations(int l);  // loop-algebra oracle
// Drinfeld polynomial: returns the bracket factors and verifies the
// eigenvalue condition, solving for the constant C_V
struct DrinfeldData {
  std::vector<Exponent> factors;
  std::string c_v;
  CheckReport report;
};
DrinfeldData ddp_check(int l, int sign);

// Heisenberg reconstruction of K^+ (numeric)
CheckReport check_heisenberg(int l, double q, double u_minus_a, int terms, mpfr_prec_t prec,
                             double tol);

// fused R-matrix read off the evaluation module (Prop LandR direction);
// returns the 2(l+1) x 2(l+1) array of phi-stripped entries
std::vector<std::vector<Rat>> fused_r_matrix(int l, int sign, const Exponent& u);
CheckReport check_fused_r(int l, int sign);

}  // namespace qdyn::modules
