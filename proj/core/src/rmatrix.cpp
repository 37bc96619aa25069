#include "qdyn/rmatrix.hpp"

#include "qdyn/qseries.hpp"
#include "qdyn/theta.hpp"

#include <stdexcept>

namespace qdyn::rmatrix {

Rat r_entry(int row, int col, const Exponent& u) {
  Exponent P = e_P();
  if (row == 2 && col == 2)
    return Rat(Poly::s_pow(2)) * eta(P + 1) * eta(P - 1) * eta(u) /
           (eta(P) * eta(P) * eta(u + 1));
  if (row == 2 && col == 3) return eta(e_const(1)) * eta(P + u) / (eta(u + 1) * eta(P));
  if (row == 3 && col == 2)
    return eta(e_const(1)) * eta(P - u) * Rat(poly_qx(u.q2x())) /
           (eta(u + 1) * eta(P));
  if (row == 3 && col == 3) return Rat(Poly::s_pow(2)) * eta(u) / eta(u + 1);
  throw std::invalid_argument("r_entry: middle block only");
}

DynRMatrix build_r(int sign, const Exponent& u, bool with_prefactor) {
  DynRMatrix m;
  m.sign = sign;
  m.pref = !with_prefactor ? DynRMatrix::Pref::None
                           : (sign > 0 ? DynRMatrix::Pref::RhoPlus : DynRMatrix::Pref::RhoMinus);
  for (auto& row : m.e)
    for (auto& x : row) x = Rat(0);
  m.e[0][0] = Rat(1);
  m.e[3][3] = Rat(1);
  m.e[1][1] = r_entry(2, 2, u);
  m.e[1][2] = r_entry(2, 3, u);
  m.e[2][1] = r_entry(3, 2, u);
  m.e[2][2] = r_entry(3, 3, u);
  return m;
}

Complex rho_plus(const Real& q, const Complex& z, int N) {
  mpfr_prec_t prec = q.prec();
  Complex q2 = Complex(q * q, Real(prec));
  Complex q4 = q2 * q2;
  Complex zi = Complex::one(prec) / z;
  Complex num = series::qpoch_inf(zi, q4, N) * series::qpoch_inf(q4 * zi, q4, N);
  Complex den = series::qpoch_inf(q2 * zi, q4, N);
  return Complex(q.sqrt(), Real(prec)) * num / (den * den);
}

Complex rho_minus(const Real& q, const Complex& z, int N) {
  mpfr_prec_t prec = q.prec();
  Complex q2 = Complex(q * q, Real(prec));
  Complex q4 = q2 * q2;
  Complex num = series::qpoch_inf(q2 * z, q4, N);
  Complex den = series::qpoch_inf(z, q4, N) * series::qpoch_inf(q4 * z, q4, N);
  return Complex(Real(1.0, prec) / q.sqrt(), Real(prec)) * num * num / den;
}

namespace {
Complex qpow(const Real& q, int k, mpfr_prec_t prec) {
  return Complex(q, Real(prec)).pow_si(k);
}
}  // namespace

Complex rho_l_plus(int l, const Real& q, const Complex& z, int N) {
  mpfr_prec_t prec = q.prec();
  Complex q4 = qpow(q, 4, prec);
  Complex zi = Complex::one(prec) / z;
  Complex num = series::qpoch_inf(qpow(q, l + 3, prec) * zi, q4, N) *
                series::qpoch_inf(qpow(q, -l + 1, prec) * zi, q4, N);
  Complex den = series::qpoch_inf(qpow(q, 3 - l, prec) * zi, q4, N) *
                series::qpoch_inf(qpow(q, l + 1, prec) * zi, q4, N);
  return Complex(q.pow(Real(0.5 * l, prec)), Real(prec)) * num / den;
}

Complex rho_l_minus(int l, const Real& q, const Complex& z, int N) {
  mpfr_prec_t prec = q.prec();
  Complex q4 = qpow(q, 4, prec);
  Complex num = series::qpoch_inf(qpow(q, 3 - l, prec) * z, q4, N) *
                series::qpoch_inf(qpow(q, l + 1, prec) * z, q4, N);
  Complex den = series::qpoch_inf(qpow(q, l + 3, prec) * z, q4, N) *
                series::qpoch_inf(qpow(q, -l + 1, prec) * z, q4, N);
  return Complex(q.pow(Real(-0.5 * l, prec)), Real(prec)) * num / den;
}

std::array<std::array<Real, 4>, 4> elliptic_r_num(const Real& u, const Real& P, const Real& q,
                                                  const Real& p, int N) {
  mpfr_prec_t prec = q.prec();
  auto th = [&](const Real& x) { return series::theta_small(x, q, p, N); };
  Real one(1.0, prec), zero(0.0, prec);
  std::array<std::array<Real, 4>, 4> m{{{one, zero, zero, zero},
                                        {zero, zero, zero, zero},
                                        {zero, zero, zero, zero},
                                        {zero, zero, zero, one}}};
  Real u1 = u + one, P1 = P + one, Pm1 = P - one;
  m[1][1] = th(P1) * th(Pm1) * th(u) / (th(P) * th(P) * th(u1));
  m[1][2] = th(one) * th(P + u) / (th(P) * th(u1));
  m[2][1] = th(one) * th(P - u) / (th(P) * th(u1));
  m[2][2] = th(u) / th(u1);
  return m;
}

std::array<std::array<Real, 4>, 4> trig_r_num(const Real& u, const Real& P, const Real& q) {
  mpfr_prec_t prec = q.prec();
  auto eta = [&](const Real& x) { return Real(1.0, prec) - q.pow(x * Real(2.0, prec)); };
  Real one(1.0, prec), zero(0.0, prec);
  std::array<std::array<Real, 4>, 4> m{{{one, zero, zero, zero},
                                        {zero, zero, zero, zero},
                                        {zero, zero, zero, zero},
                                        {zero, zero, zero, one}}};
  Real u1 = u + one;
  m[1][1] = q * eta(P + one) * eta(P - one) * eta(u) / (eta(P) * eta(P) * eta(u1));
  m[1][2] = eta(one) * eta(P + u) / (eta(u1) * eta(P));
  m[2][1] = eta(one) * eta(P - u) * q.pow(u * Real(2.0, prec)) / (eta(u1) * eta(P));
  m[2][2] = q * eta(u) / eta(u1);
  return m;
}

CheckReport degeneration_check(double qd, double ud, double Pd, const std::vector<double>& p_seq,
                               double tol_at_last, int N, mpfr_prec_t prec) {
  Real q(qd, prec), u(ud, prec), P(Pd, prec);
  auto trig = trig_r_num(u, P, q);
  std::vector<double> dist;
  for (double pd : p_seq) {
    Real p(pd, prec);
    auto ell = elliptic_r_num(u, P, q, p, N);
    Real worst(0.0, prec);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Real d = (ell[i][j] - trig[i][j]).abs();
        if (!(trig[i][j].abs() < Real(1e-30, prec))) d = d / trig[i][j].abs();
        if (d > worst) worst = d;
      }
    dist.push_back(worst.to_double());
  }
  CheckReport r;
  r.id = "rmatrix.elliptic_degeneration";
  nlohmann::json seq = nlohmann::json::array();
  for (size_t i = 0; i < p_seq.size(); ++i)
    seq.push_back({{"p", p_seq[i]}, {"entrywise_rel_err", dist[i]}});
  r.parameters["sequence"] = seq;
  r.parameters["q"] = qd;
  r.parameters["u"] = ud;
  r.parameters["P"] = Pd;
  bool monotone_tail = dist.size() < 3 || (dist[dist.size() - 1] < dist[dist.size() - 2] &&
                                           dist[dist.size() - 2] < dist[dist.size() - 3]);
  double last = dist.empty() ? 1.0 : dist.back();
  r.numeric(last, tol_at_last, static_cast<int>(prec));
  if (!monotone_tail) {
    r.status = "fail";
    r.witness = "convergence not monotone over the final steps";
  }
  return r;
}

}  // namespace qdyn::rmatrix
