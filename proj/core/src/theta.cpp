#include "qdyn/theta.hpp"

#include <stdexcept>

namespace qdyn::series {

Complex theta_big(const Complex& z, const Complex& p, int N, Real* tail) {
  mpfr_prec_t prec = std::max(z.prec(), p.prec());
  if (!(p.abs() < Real(1.0, prec))) throw std::domain_error("theta_big: |p| >= 1");
  if (z.abs().is_zero()) throw std::domain_error("theta_big: z = 0");
  Complex one = Complex::one(prec);
  Complex r = one;
  Complex pk = one;
  Complex poz = p / z;
  for (int k = 0; k < N; ++k) {
    r *= (one - z * pk) * (one - poz * pk) * (one - p * pk);
    pk *= p;
  }
  if (tail) {
    Real pa = p.abs();
    Real mag = (z.abs() + poz.abs() + pa) * pa.pow_si(N) / (Real(1.0, prec) - pa);
    *tail = mag;
  }
  return r;
}

Real theta_small(const Real& u, const Real& q, const Real& p, int N) {
  mpfr_prec_t prec = std::max({u.prec(), q.prec(), p.prec()});
  // r from p = q^{2r}
  Real r = p.log() / (q.log() * Real(2.0, prec));
  Real pref = q.pow(u * u / r - u);
  Complex z(q.pow(u * Real(2.0, prec)), Real(prec));
  Complex th = theta_big(z, Complex(p, Real(prec)), N);
  // (p;p)_inf^3
  Real one(1.0, prec);
  Real acc = one, pk = p;
  for (int k = 0; k < N; ++k) {
    acc = acc * (one - pk);
    pk = pk * p;
  }
  return pref * th.re / (acc * acc * acc);
}

Real theta_core(const Real& u, const Real& q, const Real& p) {
  mpfr_prec_t prec = std::max({u.prec(), q.prec(), p.prec()});
  Real r = p.log() / (q.log() * Real(2.0, prec));
  Real pref = q.pow(u * u / r - u);
  Real eta = Real(1.0, prec) - q.pow(u * Real(2.0, prec));
  // same (p;p)_inf^3 normalization as theta_small
  Real one(1.0, prec);
  Real acc = one, pk = p;
  for (int k = 0; k < 80; ++k) {
    acc = acc * (one - pk);
    pk = pk * p;
  }
  return pref * eta / (acc * acc * acc);
}

Real theta_fact(const Real& x, const Real& q, const Real& p, int N, int k) {
  (void)N;
  mpfr_prec_t prec = std::max({x.prec(), q.prec(), p.prec()});
  Real r(1.0, prec);
  for (int j = 0; j < k; ++j) r = r * theta_core(x + Real(static_cast<double>(j), prec), q, p);
  return r;
}

Complex elliptic_v_mult(const Complex& a, const std::vector<Complex>& bs, const Complex& q2,
                        const Complex& p, int N, int terms) {
  mpfr_prec_t prec = q2.prec();
  Complex one = Complex::one(prec);
  Complex q4 = q2 * q2;
  Complex tha = theta_big(a, p, N);
  Complex sum(prec), poch = one, denpoch = one;
  for (int k = 0; k <= terms; ++k) {
    if (k > 0) {
      Complex qk = q2.pow_si(k - 1);
      Complex step = one - a * qk;
      for (const auto& b : bs) step *= one - b * qk;
      Complex d = one - q2.pow_si(k);
      for (const auto& b : bs) d *= one - (a * q2 / b) * qk;
      poch *= step * q2;
      denpoch *= d;
    }
    sum += theta_big(a * q4.pow_si(k), p, N) / tha * poch / denpoch;
  }
  return sum;
}

Real additive_v(const Real& u0, const std::vector<Real>& us, const Real& q, const Real& p, int N,
                int terms) {
  mpfr_prec_t prec = q.prec();
  Real sum(0.0, prec);
  Real th0 = theta_small(u0, q, p, N);
  for (int k = 0; k <= terms; ++k) {
    Real t = theta_small(u0 + Real(2.0 * k, prec), q, p, N) / th0;
    t = t * theta_fact(u0, q, p, N, k) / theta_fact(u0 + Real(1.0, prec) - u0, q, p, N, k);
    for (const auto& u : us) {
      t = t * theta_fact(u, q, p, N, k) / theta_fact(u0 + Real(1.0, prec) - u, q, p, N, k);
    }
    sum = sum + t;
  }
  return sum;
}

bool v_balanced(const Real& u0, const std::vector<Real>& us, double tol) {
  int r = static_cast<int>(us.size()) + 4;
  mpfr_prec_t prec = u0.prec();
  Real lhs(0.0, prec);
  for (const auto& u : us) lhs = lhs + u;
  Real rhs = Real(0.5 * (r - 7), prec) + Real(0.5 * (r - 5), prec) * u0;
  return (lhs - rhs).abs().to_double() < tol;
}

}  // namespace qdyn::series
