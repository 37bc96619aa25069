#include "qdyn/exponent.hpp"

#include <stdexcept>

namespace qdyn {

Exponent Exponent::constant(long whole, long halves) {
  Exponent e;
  e.c_ = 2 * whole + halves;
  return e;
}

Exponent Exponent::var(int v, long coeff_halves) {
  Exponent e;
  if (coeff_halves != 0) e.halves_[v] = coeff_halves;
  return e;
}

Exponent Exponent::operator+(const Exponent& o) const {
  Exponent r = *this;
  r.c_ += o.c_;
  for (auto [v, h] : o.halves_) {
    long nh = (r.halves_.count(v) ? r.halves_[v] : 0) + h;
    if (nh == 0)
      r.halves_.erase(v);
    else
      r.halves_[v] = nh;
  }
  return r;
}

Exponent Exponent::operator-() const { return scaled(-2); }

Exponent Exponent::operator-(const Exponent& o) const { return *this + (-o); }

Exponent Exponent::scaled(long num_halves) const {
  Exponent r;
  for (auto [v, h] : halves_) {
    long nh = h * num_halves;
    if (nh % 2 != 0) throw std::invalid_argument("Exponent::scaled: quarter-integers");
    if (nh != 0) r.halves_[v] = nh / 2;
  }
  long nc = c_ * num_halves;
  if (nc % 2 != 0) throw std::invalid_argument("Exponent::scaled: quarter-integers");
  r.c_ = nc / 2;
  return r;
}

Exponent::MonoS Exponent::q2x() const {
  MonoS r;
  r.s = 2 * c_;  // q^{2*(c_/2)} = s^{2 c_}
  for (auto [v, h] : halves_) {
    if (v == VAR_S) throw std::invalid_argument("Exponent: s is not an additive variable");
    r.m.e[v] = static_cast<int16_t>(h);  // q^{2*(h/2)*v} = (q^v)^{h}
  }
  return r;
}

Exponent::MonoS Exponent::qx() const {
  MonoS r;
  r.s = c_;  // q^{c_/2} = s^{c_}
  for (auto [v, h] : halves_) {
    if (v == VAR_S) throw std::invalid_argument("Exponent: s is not an additive variable");
    if (h % 2 != 0)
      throw std::invalid_argument("Exponent::qx: non-integer coefficient on " + std::string(var_name(v)));
    r.m.e[v] = static_cast<int16_t>(h / 2);
  }
  return r;
}

std::string Exponent::str() const {
  std::string s;
  auto app = [&](long h, const std::string& sym) {
    if (h == 0) return;
    std::string mag;
    long a = h < 0 ? -h : h;
    if (a % 2 == 0)
      mag = (a / 2 == 1 && !sym.empty()) ? "" : std::to_string(a / 2);
    else
      mag = std::to_string(a) + "/2";
    if (!mag.empty() && !sym.empty()) mag += "*";
    std::string piece = mag + sym;
    if (s.empty())
      s = (h < 0 ? "-" : "") + piece;
    else
      s += (h < 0 ? " - " : " + ") + piece;
  };
  for (auto [v, h] : halves_) app(h, var_name(v));
  app(c_, "");
  return s.empty() ? "0" : s;
}

Rat bracket(const Exponent& x) {
  Exponent::MonoS qx = x.qx();
  Exponent::MonoS inv{qx.m.inv(), -qx.s};
  return Rat(poly_qx(inv) - poly_qx(qx));
}

Rat eta(const Exponent& x) { return Rat(Poly::one() - poly_qx(x.q2x())); }

Rat shifted_factorial(const Exponent& x, int m) {
  if (m < 0) throw std::invalid_argument("shifted_factorial: negative length");
  Rat r(1);
  for (int i = 0; i < m; ++i) r *= bracket(x + i);
  return r;
}

Rat bracket_inv(const Exponent& x) { return Rat::frac(Poly::one(), bracket(x).num()); }

Rat eta_inv(const Exponent& x) { return Rat::frac(Poly::one(), eta(x).num()); }

Rat eta_factorial(const Exponent& x, int k) {
  if (k < 0) throw std::invalid_argument("eta_factorial: negative length");
  Rat r(1);
  for (int i = 0; i < k; ++i) r *= eta(x + i);
  return r;
}

}  // namespace qdyn
