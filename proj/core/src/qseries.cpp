#include "qdyn/qseries.hpp"

#include <stdexcept>

namespace qdyn::series {

nlohmann::json SeriesSpec::to_json() const {
  nlohmann::json j;
  const char* kinds[] = {"phi", "W", "V_mult", "v_add"};
  j["kind"] = kinds[static_cast<int>(kind)];
  j["base"] = "q^2";
  auto par = [](const SParam& p) {
    nlohmann::json q;
    q["exp"] = p.x.str();
    if (p.sign < 0) q["sign"] = -1;
    return q;
  };
  if (a) j["a"] = par(*a);
  j["numerator_params"] = nlohmann::json::array();
  for (const auto& p : num_params) j["numerator_params"].push_back(par(p));
  j["denominator_params"] = nlohmann::json::array();
  for (const auto& p : den_params) j["denominator_params"].push_back(par(p));
  if (nome_p) j["nome_p"] = *nome_p;
  j["truncation"] = truncation < 0 ? nlohmann::json("terminating") : nlohmann::json(truncation);
  return j;
}

Rat qpoch(const SParam& p, int k) {
  if (k < 0) throw std::invalid_argument("qpoch: negative length");
  Rat r(1);
  for (int j = 0; j < k; ++j) {
    // 1 - sign * q^{2(x+j)}
    Poly f = Poly::one() - poly_qx((p.x + j).q2x(), p.sign);
    r *= Rat(f);
  }
  return r;
}

// 1/(sign*q^{2x}; q^2)_k with every factor kept separate in the bag, so
// common factors cancel syntactically across sums of terms
Rat qpoch_inv(const SParam& p, int k) {
  if (k < 0) throw std::invalid_argument("qpoch_inv: negative length");
  Rat r(1);
  for (int j = 0; j < k; ++j) {
    Poly f = Poly::one() - poly_qx((p.x + j).q2x(), p.sign);
    if (f.is_zero()) throw std::domain_error("qpoch_inv: denominator Pochhammer vanishes");
    r *= Rat::frac(Poly::one(), f);
  }
  return r;
}

std::optional<int> termination_index(const std::vector<SParam>& num_params) {
  std::optional<int> best;
  for (const auto& p : num_params) {
    if (p.sign != 1) continue;
    if (!p.x.var_halves().empty()) continue;
    long h = p.x.const_halves();  // parameter is q^{2*(h/2)} = q^{h}
    if (h > 0 || h % 2 != 0) continue;
    int k = static_cast<int>(-h / 2);
    if (!best || k < *best) best = k;
  }
  return best;
}

Rat phi_sum(const SeriesSpec& spec) {
  auto term_at = termination_index(spec.num_params);
  int N;
  if (term_at)
    N = *term_at;
  else if (spec.truncation >= 0)
    throw std::invalid_argument("phi_sum: exact backend needs a terminating series");
  else
    throw std::invalid_argument("phi_sum: series does not terminate");

  Rat sum(0);
  Rat term(1);
  SParam q2{e_const(1), +1};  // (q^2; q^2)_n factor
  for (int n = 0; n <= N; ++n) {
    if (n > 0) {
      // incremental factor: prod_i (1 - a_i q^{2(n-1)}) / ((1-q^{2n}) prod_j (1 - b_j q^{2(n-1)})) * q^2
      Rat step(Poly::s_pow(2));
      for (const auto& p : spec.num_params)
        step *= Rat(Poly::one() - poly_qx((p.x + (n - 1)).q2x(), p.sign));
      Poly qf = Poly::one() - poly_qx(e_const(n).q2x());
      step *= Rat::frac(Poly::one(), qf);
      for (const auto& p : spec.den_params) {
        Poly f = Poly::one() - poly_qx((p.x + (n - 1)).q2x(), p.sign);
        if (f.is_zero()) throw std::domain_error("phi_sum: denominator Pochhammer vanishes before termination");
        step *= Rat::frac(Poly::one(), f);
      }
      term *= step;
    }
    sum += term;
  }
  return sum;
}

SeriesSpec w_to_phi(const SParam& a, const std::vector<SParam>& bs) {
  // numerator: a, q^2 a^{1/2}, -q^2 a^{1/2}, b_1..b_{r-2}
  // denominator: a^{1/2}, -a^{1/2}, aq^2/b_1, .., aq^2/b_{r-2}
  SeriesSpec s;
  s.kind = Kind::Phi;
  Exponent half_a = a.x.scaled(1);  // a^{1/2} = q^{2*(x/2)}
  if (a.sign != 1) throw std::invalid_argument("w_to_phi: leading parameter must be +q^{2x}");
  s.num_params.push_back(a);
  s.num_params.push_back({half_a + 1, +1});
  s.num_params.push_back({half_a + 1, -1});
  for (const auto& b : bs) s.num_params.push_back(b);
  s.den_params.push_back({half_a, +1});
  s.den_params.push_back({half_a, -1});
  for (const auto& b : bs) s.den_params.push_back({a.x + 1 - b.x, b.sign});
  return s;
}

Rat wilson_w(const SParam& a, const std::vector<SParam>& bs) {
  if (a.sign != 1) throw std::invalid_argument("wilson_w: leading parameter must be +q^{2x}");
  std::vector<SParam> nums = bs;
  nums.push_back(a);
  auto term_at = termination_index(nums);
  if (!term_at) throw std::invalid_argument("wilson_w: series does not terminate");
  int N = *term_at;

  Rat one_minus_a(Poly::one() - poly_qx(a.x.q2x()));
  if (one_minus_a.is_zero()) throw std::domain_error("wilson_w: a = 1");
  Rat sum(0);
  for (int n = 0; n <= N; ++n) {
    // (1 - a q^{4n}) / (1 - a)
    Rat t = Rat(Poly::one() - poly_qx((a.x + 2 * n).q2x())) / one_minus_a;
    t *= qpoch(a, n);
    for (const auto& b : bs) t *= qpoch(b, n);
    t *= qpoch_inv({e_const(1), +1}, n);
    for (const auto& b : bs) t *= qpoch_inv({a.x + 1 - b.x, b.sign}, n);
    t *= Rat(Poly::s_pow(4 * n));  // q^{2n}
    sum += t;
  }
  return sum;
}

Rat wilson_w_as_phi(const SParam& a, const std::vector<SParam>& bs) {
  return phi_sum(w_to_phi(a, bs));
}

bool well_poised(const SeriesSpec& s) {
  // q^2 a_1 = a_2 b_1 = ... = a_{r+1} b_r
  if (s.num_params.size() != s.den_params.size() + 1) return false;
  if (s.num_params.empty()) return false;
  const SParam& a1 = s.num_params[0];
  Exponent target = a1.x + 1;
  for (size_t i = 0; i + 1 < s.num_params.size(); ++i) {
    const SParam& ai = s.num_params[i + 1];
    const SParam& bi = s.den_params[i];
    if (!(ai.x + bi.x == target)) return false;
    if (ai.sign * bi.sign != a1.sign) return false;
  }
  return true;
}

bool very_well_poised(const SeriesSpec& s) {
  if (!well_poised(s)) return false;
  if (s.num_params.size() < 3) return false;
  Exponent half_a = s.num_params[0].x.scaled(1);
  const SParam& a2 = s.num_params[1];
  const SParam& a3 = s.num_params[2];
  bool plus = a2.x == half_a + 1 && a2.sign == +1;
  bool minus = a3.x == half_a + 1 && a3.sign == -1;
  return plus && minus;
}

bool vwp_balanced_w(const SParam& a, const std::vector<SParam>& bs) {
  // (b_1...b_{r-2}) q^2 = (+-a^{1/2} q)^{r-3}; the +- absorbs any sign, so the
  // condition is on exponents only
  int r = static_cast<int>(bs.size()) + 2;
  Exponent lhs = e_const(1);
  for (const auto& b : bs) lhs = lhs + b.x;
  Exponent rhs = (a.x + 1).scaled(r - 3);  // (r-3)/2 * (x + 1), in q^{2*...} units
  return lhs == rhs;
}

CheckReport jackson_symbolic(const Exponent& a, const Exponent& b, const Exponent& c,
                             const Exponent& d, int k) {
  // e from the balancing condition a^2 q^{2(k+1)} = bcde
  Exponent e = a.scaled(4) + (k + 1) - b - c - d;  // 2a + (k+1) - b - c - d
  SParam pa{a, +1};
  std::vector<SParam> bs = {{b, +1}, {c, +1}, {d, +1}, {e, +1}, {e_const(-k), +1}};
  Rat lhs = wilson_w(pa, bs);
  // (aq^2, aq^2/bc, aq^2/bd, aq^2/cd; q^2)_k / (aq^2/b, aq^2/c, aq^2/d, aq^2/bcd; q^2)_k
  Rat rhs = qpoch({a + 1, +1}, k) * qpoch({a + 1 - b - c, +1}, k) * qpoch({a + 1 - b - d, +1}, k) *
            qpoch({a + 1 - c - d, +1}, k) * qpoch_inv({a + 1 - b, +1}, k) *
            qpoch_inv({a + 1 - c, +1}, k) * qpoch_inv({a + 1 - d, +1}, k) *
            qpoch_inv({a + 1 - b - c - d, +1}, k);
  CheckReport r;
  r.id = "jackson.k" + std::to_string(k);
  r.backend = "exact";
  r.parameters["k"] = k;
  if (lhs != rhs) {
    r.status = "fail";
    r.witness = "8phi7 sum differs from the Pochhammer-ratio side";
  }
  return r;
}

Complex qpoch_num(const Complex& a, const Complex& base, int k) {
  mpfr_prec_t prec = std::max(a.prec(), base.prec());
  Complex r = Complex::one(prec);
  Complex f = a;
  for (int j = 0; j < k; ++j) {
    r *= Complex::one(prec) - f;
    f *= base;
  }
  return r;
}

Complex qpoch_inf(const Complex& a, const Complex& base, int N, Real* tail) {
  mpfr_prec_t prec = std::max(a.prec(), base.prec());
  if (!(base.abs() < Real(1.0, prec)))
    throw std::domain_error("qpoch_inf: |base| >= 1");
  Complex r = qpoch_num(a, base, N);
  if (tail) {
    // |log prod_{k>=N} (1-a q^k)| <= sum |a||q|^k / (1-|a||q|^k)  ~ geometric
    Real aq = a.abs() * base.abs().pow_si(N);
    Real denom = Real(1.0, prec) - base.abs();
    *tail = aq / denom;
  }
  return r;
}

Complex phi_sum_num(const std::vector<Complex>& nums, const std::vector<Complex>& dens,
                    const Complex& q2, int terms) {
  mpfr_prec_t prec = q2.prec();
  Complex sum(prec), term = Complex::one(prec);
  Real tiny = Real(2.0, prec).pow_si(-static_cast<long>(prec - 8));
  for (int n = 0; n <= terms; ++n) {
    if (n > 0) {
      Complex step = q2;
      Complex qn = q2.pow_si(n - 1);
      for (const auto& a : nums) step *= Complex::one(prec) - a * qn;
      Complex d = Complex::one(prec) - q2.pow_si(n);
      for (const auto& b : dens) d *= Complex::one(prec) - b * qn;
      if (!(d.abs() > tiny)) throw std::domain_error("phi_sum_num: denominator Pochhammer pole");
      term *= step / d;
    }
    sum += term;
    if (term.abs() < tiny && n > 2) break;
  }
  return sum;
}

Complex wilson_w_num(const Complex& a, const std::vector<Complex>& bs, const Complex& q2,
                     int terms) {
  // explicit (1 - a q^{4n})/(1 - a) form; a^{1/2} never appears
  mpfr_prec_t prec = q2.prec();
  Complex one = Complex::one(prec);
  Complex sum(prec), poch = one, denpoch = one;
  Complex q4 = q2 * q2;
  for (int n = 0; n <= terms; ++n) {
    if (n > 0) {
      Complex qn = q2.pow_si(n - 1);
      Complex step = one - a * qn;
      for (const auto& b : bs) step *= one - b * qn;
      Complex d = one - q2.pow_si(n);
      for (const auto& b : bs) d *= one - (a * q2 / b) * qn;
      poch *= step * q2;
      denpoch *= d;
    }
    Complex t = (one - a * q4.pow_si(n)) / (one - a) * poch / denpoch;
    sum += t;
    if (t.abs() < Real(2.0, prec).pow_si(-static_cast<long>(prec - 8)) && n > 2) break;
  }
  return sum;
}

CheckReport jackson_numeric(const Complex& q2, const Complex& a, const Complex& b, const Complex& c,
                            const Complex& d, int k, mpfr_prec_t prec, double tol) {
  Complex e = a * a * q2.pow_si(k + 1) / (b * c * d);  // balancing
  std::vector<Complex> bs = {b, c, d, e, q2.pow_si(-k)};
  Complex lhs = wilson_w_num(a, bs, q2, k);
  Complex one = Complex::one(prec);
  auto poch = [&](const Complex& x) { return qpoch_num(x, q2, k); };
  Complex rhs = poch(a * q2) * poch(a * q2 / (b * c)) * poch(a * q2 / (b * d)) *
                poch(a * q2 / (c * d)) /
                (poch(a * q2 / b) * poch(a * q2 / c) * poch(a * q2 / d) * poch(a * q2 / (b * c * d)));
  (void)one;
  double res = (lhs - rhs).abs().to_double();
  CheckReport r;
  r.id = "jackson.numeric.k" + std::to_string(k);
  r.parameters["k"] = k;
  return r.numeric(res, tol, static_cast<int>(prec));
}

}  // namespace qdyn::series
