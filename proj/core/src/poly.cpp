#include "qdyn/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdyn {

namespace {
bool term_before(const Poly::Term& a, const Poly::Term& b) {
  return Monomial::cmp(a.first, b.first) > 0;  // descending graded-lex
}
}  // namespace

Poly Poly::coeff(const SPoly& c) {
  Poly p;
  if (!c.is_zero()) p.t_.push_back({Monomial::one(), c});
  return p;
}

Poly Poly::monomial(const Monomial& m, const SPoly& c) {
  Poly p;
  if (!c.is_zero()) p.t_.push_back({m, c});
  return p;
}

void Poly::normalize() {
  std::sort(t_.begin(), t_.end(), term_before);
  size_t w = 0;
  for (size_t r = 0; r < t_.size();) {
    Monomial m = t_[r].first;
    SPoly c = t_[r].second;
    ++r;
    while (r < t_.size() && t_[r].first == m) {
      c += t_[r].second;
      ++r;
    }
    if (!c.is_zero()) t_[w++] = {m, c};
  }
  t_.resize(w);
}

bool Poly::operator==(const Poly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (size_t i = 0; i < t_.size(); ++i)
    if (!(t_[i].first == o.t_[i].first) || t_[i].second != o.t_[i].second) return false;
  return true;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.t_) c = -c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.t_.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    int c;
    if (i == t_.size())
      c = -1;
    else if (j == o.t_.size())
      c = 1;
    else
      c = Monomial::cmp(t_[i].first, o.t_[j].first);
    if (c > 0)
      r.t_.push_back(t_[i++]);
    else if (c < 0)
      r.t_.push_back(o.t_[j++]);
    else {
      SPoly s = t_[i].second + o.t_[j].second;
      if (!s.is_zero()) r.t_.push_back({t_[i].first, s});
      ++i;
      ++j;
    }
  }
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  if (o.is_single_term()) return mul_mono(o.t_[0].first, o.t_[0].second);
  if (is_single_term()) return o.mul_mono(t_[0].first, t_[0].second);
  PolyBuilder b;
  for (const auto& [m1, c1] : t_)
    for (const auto& [m2, c2] : o.t_) b.add(m1 * m2, c1 * c2);
  return b.take();
}

Poly Poly::mul_mono(const Monomial& m, const SPoly& c) const {
  if (c.is_zero()) return Poly();
  Poly r = *this;
  for (auto& [mm, cc] : r.t_) {
    mm = mm * m;
    cc *= c;
  }
  return r;
}

Poly Poly::pow(int k) const {
  if (k < 0) throw std::invalid_argument("Poly::pow: negative exponent");
  Poly r = one();
  Poly b = *this;
  while (k) {
    if (k & 1) r *= b;
    b = (k >>= 1) ? b * b : b;
  }
  return r;
}

Poly Poly::subst(int var, const Monomial& repl, long s_shift, int sign) const {
  PolyBuilder b;
  for (const auto& [m, coef] : t_) {
    int k = m.e[var];
    if (k == 0) {
      b.add(m, coef);
      continue;
    }
    Monomial base = m;
    base.e[var] = 0;
    SPoly cc = coef.mul_s(s_shift * k);
    if (sign < 0 && (k % 2 != 0)) cc = -cc;
    b.add(base * repl.pow(k), cc);
  }
  return b.take();
}

bool Poly::depends_on(int var) const {
  for (const auto& [m, c] : t_)
    if (m.e[var] != 0) return true;
  return false;
}

int Poly::min_exp(int var) const {
  if (t_.empty()) return 0;
  int mn = t_[0].first.e[var];
  for (const auto& [m, c] : t_) mn = std::min(mn, static_cast<int>(m.e[var]));
  return mn;
}

long Poly::s_lo() const {
  if (t_.empty()) return 0;
  long mn = t_[0].second.lo();
  for (const auto& [m, c] : t_) mn = std::min(mn, c.lo());
  return mn;
}

std::optional<Poly> Poly::try_divide(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw std::domain_error("Poly::try_divide: division by zero");
  if (num.is_zero()) return Poly();
  Poly rem = num;
  Poly quot;
  Monomial dm = den.leading().first;
  SPoly dc = den.leading().second;
  Monomial dinv = dm.inv();
  // abort fast on non-factors: a genuine cofactor in this engine has about
  // the numerator's size, and remainders shrink along exact divisions
  size_t quot_cap = num.term_count() + 16;
  size_t rem_cap = 2 * num.term_count() + den.term_count() + 16;
  while (!rem.is_zero()) {
    if (quot.t_.size() > quot_cap || rem.term_count() > rem_cap) return std::nullopt;
    Monomial rm = rem.leading().first;
    auto q = SPoly::try_divide(rem.leading().second, dc);
    if (!q) return std::nullopt;
    Monomial qm = rm * dinv;
    quot.t_.push_back({qm, *q});
    rem -= den.mul_mono(qm, *q);
    if (!rem.is_zero() && Monomial::cmp(rem.leading().first, rm) >= 0) return std::nullopt;
  }
  quot.normalize();
  return quot;
}

int Poly::cmp(const Poly& a, const Poly& b) {
  if (a.t_.size() != b.t_.size()) return a.t_.size() < b.t_.size() ? -1 : 1;
  for (size_t i = 0; i < a.t_.size(); ++i) {
    int c = Monomial::cmp(a.t_[i].first, b.t_[i].first);
    if (c != 0) return c;
    int d = SPoly::cmp(a.t_[i].second, b.t_[i].second);
    if (d != 0) return d;
  }
  return 0;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : t_) {
    std::string cs = c.str();
    bool wrap = c.size() > 1;
    if (!first) s += " + ";
    first = false;
    if (m.is_one()) {
      s += wrap ? "(" + cs + ")" : cs;
    } else if (c.is_one()) {
      s += m.str();
    } else {
      s += (wrap ? "(" + cs + ")" : cs) + "*" + m.str();
    }
  }
  return s;
}

void PolyBuilder::add(const Monomial& m, const SPoly& c) {
  if (c.is_zero()) return;
  auto it = acc_.find(m);
  if (it == acc_.end())
    acc_.emplace(m, c);
  else {
    it->second += c;
    if (it->second.is_zero()) acc_.erase(it);
  }
}

void PolyBuilder::add(const Poly& p, const Monomial& shift, const SPoly& scale) {
  for (const auto& [m, c] : p.terms()) add(m * shift, c * scale);
}

Poly PolyBuilder::take() {
  Poly p;
  p.t_.reserve(acc_.size());
  for (auto it = acc_.rbegin(); it != acc_.rend(); ++it) p.t_.push_back({it->first, it->second});
  acc_.clear();
  return p;
}

}  // namespace qdyn
