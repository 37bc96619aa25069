#include "qdyn/numeric.hpp"

#include <stdexcept>

namespace qdyn {

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
  }
  return *this;
}

namespace {
mpfr_prec_t join(const Real& a, const Real& b) { return std::max(a.prec(), b.prec()); }
}  // namespace

Real Real::operator-() const {
  Real r(prec());
  mpfr_neg(r.x_, x_, MPFR_RNDN);
  return r;
}
Real Real::operator+(const Real& o) const {
  Real r(join(*this, o));
  mpfr_add(r.x_, x_, o.x_, MPFR_RNDN);
  return r;
}
Real Real::operator-(const Real& o) const {
  Real r(join(*this, o));
  mpfr_sub(r.x_, x_, o.x_, MPFR_RNDN);
  return r;
}
Real Real::operator*(const Real& o) const {
  Real r(join(*this, o));
  mpfr_mul(r.x_, x_, o.x_, MPFR_RNDN);
  return r;
}
Real Real::operator/(const Real& o) const {
  Real r(join(*this, o));
  mpfr_div(r.x_, x_, o.x_, MPFR_RNDN);
  return r;
}

Real Real::from_mpz(const mpz_class& z, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_z(r.x_, z.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real Real::sqrt() const {
  Real r(prec());
  mpfr_sqrt(r.x_, x_, MPFR_RNDN);
  return r;
}
Real Real::abs() const {
  Real r(prec());
  mpfr_abs(r.x_, x_, MPFR_RNDN);
  return r;
}
Real Real::pow(const Real& e) const {
  Real r(join(*this, e));
  mpfr_pow(r.x_, x_, e.x_, MPFR_RNDN);
  return r;
}
Real Real::pow_si(long k) const {
  Real r(prec());
  mpfr_pow_si(r.x_, x_, k, MPFR_RNDN);
  return r;
}
Real Real::log() const {
  Real r(prec());
  mpfr_log(r.x_, x_, MPFR_RNDN);
  return r;
}
Real Real::exp() const {
  Real r(prec());
  mpfr_exp(r.x_, x_, MPFR_RNDN);
  return r;
}

std::string Real::str(int digits) const {
  char* s = nullptr;
  mpfr_exp_t e;
  s = mpfr_get_str(nullptr, &e, 10, digits, x_, MPFR_RNDN);
  std::string body(s);
  mpfr_free_str(s);
  bool neg = !body.empty() && body[0] == '-';
  std::string mant = neg ? body.substr(1) : body;
  std::string out = (neg ? "-" : "") + (mant.empty() ? "0" : mant.substr(0, 1) + "." + mant.substr(1));
  out += "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

Complex Complex::operator/(const Complex& o) const {
  Real d = o.re * o.re + o.im * o.im;
  return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
}

Complex Complex::pow_si(long k) const {
  Complex base = *this;
  if (k < 0) {
    base = Complex::one(prec()) / base;
    k = -k;
  }
  Complex r = Complex::one(prec());
  while (k) {
    if (k & 1) r *= base;
    if (k >>= 1) base *= base;
  }
  return r;
}

Complex eval_poly(const Poly& p, const Assignment& a, mpfr_prec_t prec) {
  Complex acc(prec);
  auto sit = a.find(VAR_S);
  for (const auto& [m, c] : p.terms()) {
    // coefficient in Z[s,1/s]
    Complex t(prec);
    c.for_each([&](long e, const mpz_class& z) {
      Complex piece(Real::from_mpz(z, prec), Real(prec));
      if (e != 0) {
        if (sit == a.end()) throw std::invalid_argument("eval: no value for s");
        piece *= sit->second.pow_si(e);
      }
      t += piece;
    });
    for (int v = 0; v < VAR_COUNT; ++v) {
      if (m.e[v] == 0) continue;
      auto it = a.find(v);
      if (it == a.end()) throw std::invalid_argument(std::string("eval: no value for ") + var_name(v));
      t *= it->second.pow_si(m.e[v]);
    }
    acc += t;
  }
  return acc;
}

Complex eval_rat(const Rat& r, const Assignment& a, mpfr_prec_t prec) {
  Complex n = eval_poly(r.num(), a, prec);
  Real tiny = Real(2.0, prec).pow_si(-static_cast<long>(prec / 2));
  for (const auto& f : r.den()) {
    Complex d = eval_poly(f.p, a, prec);
    if (!(d.abs() > tiny))
      throw std::domain_error("eval: denominator factor vanishes at assignment: " + f.p.str());
    n = n / d.pow_si(f.e);
  }
  return n;
}

}  // namespace qdyn
