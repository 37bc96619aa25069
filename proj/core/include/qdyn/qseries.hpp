#pragma once

#include <json.hpp>

#include <optional>
#include <vector>

#include "qdyn/exponent.hpp"
#include "qdyn/numeric.hpp"
#include "qdyn/report.hpp"

namespace qdyn::series {

// Basic, very-well-poised and theta hypergeometric series, all in base q^2.
//
// Parameters are stored multiplicatively as sign * q^{2x} with x an additive
// Exponent; numeric instances carry Complex values instead.  A series is
// terminating when some numerator parameter is q^{-2k} with k >= 0.

struct SParam {
  Exponent x;
  int sign = +1;  // parameter value is sign * q^{2x}

  bool operator==(const SParam& o) const { return sign == o.sign && x == o.x; }
};

enum class Kind { Phi, W, VMult, VAdd };

struct SeriesSpec {
  Kind kind = Kind::Phi;
  std::optional<SParam> a;          // leading parameter (W, V)
  std::vector<SParam> num_params;   // phi: a_i; W/V: b_i
  std::vector<SParam> den_params;   // phi only; W/V derive them
  std::optional<double> nome_p;     // V only
  int truncation = -1;              // -1: must terminate

  nlohmann::json to_json() const;
  static SeriesSpec from_json(const nlohmann::json& j);
};

// ---- exact (symbolic) backend ----------------------------------------------

// (sign*q^{2x}; q^2)_k
Rat qpoch(const SParam& p, int k);
// 1/(sign*q^{2x}; q^2)_k, factors kept separate in the denominator bag
Rat qpoch_inv(const SParam& p, int k);
// smallest n such that all terms with index > n vanish; nullopt if none
std::optional<int> termination_index(const std::vector<SParam>& num_params);

// sum_k  prod(a_i;q^2)_k / ((q^2;q^2)_k prod(b_j;q^2)_k) q^{2k}
Rat phi_sum(const SeriesSpec& spec);
// r+1_W_r(a; b_1..b_{r-2}; q^2, q^2), the explicit (1-aq^{4k})/(1-a) form
Rat wilson_w(const SParam& a, const std::vector<SParam>& bs);
// the same series through phi_sum with the very-well-poised parameter pattern
Rat wilson_w_as_phi(const SParam& a, const std::vector<SParam>& bs);
// turns a W spec into its phi spec (exposed for the predicate tests)
SeriesSpec w_to_phi(const SParam& a, const std::vector<SParam>& bs);

bool well_poised(const SeriesSpec& phi_spec);
bool very_well_poised(const SeriesSpec& phi_spec);
// (b_1...b_{r-2}) q^2 = (a^{1/2} q)^{r-3} up to the +- ambiguity of a^{1/2}
bool vwp_balanced_w(const SParam& a, const std::vector<SParam>& bs);

// Jackson's terminating 8phi7 summation; exact when the inputs are exact.
// a,b,c,d are free additive exponents and e is derived from the balancing
// condition a^2 q^{2(k+1)} = bcde.
CheckReport jackson_symbolic(const Exponent& a, const Exponent& b, const Exponent& c,
                             const Exponent& d, int k);

// ---- numeric backend --------------------------------------------------------

Complex qpoch_num(const Complex& a, const Complex& base, int k);
// (a; base)_inf truncated at N factors; tail estimate reported through *tail
Complex qpoch_inf(const Complex& a, const Complex& base, int N, Real* tail = nullptr);
Complex phi_sum_num(const std::vector<Complex>& nums, const std::vector<Complex>& dens,
                    const Complex& q2, int terms);
Complex wilson_w_num(const Complex& a, const std::vector<Complex>& bs, const Complex& q2,
                     int terms);
CheckReport jackson_numeric(const Complex& q2, const Complex& a, const Complex& b,
                            const Complex& c, const Complex& d, int k, mpfr_prec_t prec,
                            double tol);

}  // namespace qdyn::series
