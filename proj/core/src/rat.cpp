#include "qdyn/rat.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdyn {

namespace {
// Split p into  sign * s^{s_content} * content_monomial * canonical  with the
// canonical part having per-variable minimum exponent 0, minimum s-exponent 0
// and positive leading coefficient.
void canonicalize(Poly& p, Monomial& content, long& s_content, int& sign) {
  content = Monomial::one();
  s_content = 0;
  sign = 1;
  if (p.is_zero()) return;
  for (int v = 0; v < VAR_COUNT; ++v) {
    int mn = p.min_exp(v);
    if (mn != 0) content.e[v] = static_cast<int16_t>(mn);
  }
  s_content = p.s_lo();
  if (!content.is_one() || s_content != 0)
    p = p.mul_mono(content.inv(), SPoly::s_power(-s_content));
  if (p.leading().second.leading() < 0) {
    sign = -1;
    p = -p;
  }
}
}  // namespace

void Rat::sort_bag(std::vector<Factor>& b) {
  std::sort(b.begin(), b.end(),
            [](const Factor& x, const Factor& y) { return Poly::cmp(x.p, y.p) < 0; });
}

void Rat::push_den(const Poly& f, int e) {
  if (e == 0) return;
  if (f.is_zero()) throw std::domain_error("Rat: zero denominator factor");
  Poly p = f;
  Monomial content;
  long s_content;
  int sign;
  canonicalize(p, content, s_content, sign);
  if (sign < 0 && (e % 2) != 0) num_ = -num_;
  if (!content.is_one() || s_content != 0)
    num_ = num_.mul_mono(content.pow(-e), SPoly::s_power(-s_content * e));
  if (p.is_constant() && p == Poly::one()) return;
  for (auto& g : den_) {
    if (g.p == p) {
      g.e += e;
      return;
    }
  }
  if (e < 0) {
    num_ = num_ * p.pow(-e);
    return;
  }
  den_.push_back({p, e});
  sort_bag(den_);
}

Rat Rat::frac(const Poly& num, const Poly& den) {
  Rat r(num);
  r.push_den(den, 1);
  if (r.num_.is_zero()) r.den_.clear();
  return r;
}

Rat Rat::operator-() const {
  Rat r = *this;
  r.num_ = -r.num_;
  return r;
}

Rat Rat::operator*(const Rat& o) const {
  Rat r;
  r.num_ = num_ * o.num_;
  if (r.num_.is_zero()) return r;
  r.den_ = den_;
  for (const auto& f : o.den_) {
    bool merged = false;
    for (auto& g : r.den_)
      if (g.p == f.p) {
        g.e += f.e;
        merged = true;
        break;
      }
    if (!merged) r.den_.push_back(f);
  }
  sort_bag(r.den_);
  return r;
}

Rat Rat::inverse() const {
  if (num_.is_zero()) throw std::domain_error("Rat::inverse: zero");
  Rat r(Poly::one());
  for (const auto& f : den_) r.num_ *= f.p.pow(f.e);
  r.push_den(num_, 1);
  return r;
}

Rat Rat::operator/(const Rat& o) const {
  if (o.num_.is_zero()) throw std::domain_error("Rat: division by zero");
  if (num_.is_zero()) return Rat();
  Rat r;
  r.num_ = num_;
  r.den_ = den_;
  // o.den factors move to the numerator side: cancel against our bag first
  for (const auto& f : o.den_) {
    int rem = f.e;
    for (auto& g : r.den_)
      if (g.p == f.p) {
        int k = std::min(g.e, rem);
        g.e -= k;
        rem -= k;
        break;
      }
    if (rem > 0) r.num_ = r.num_ * f.p.pow(rem);
  }
  r.den_.erase(std::remove_if(r.den_.begin(), r.den_.end(), [](const Factor& f) { return f.e == 0; }),
               r.den_.end());
  r.push_den(o.num_, 1);
  return r;
}

Rat Rat::operator+(const Rat& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  // denominators: take the max-exponent union; numerators get the complements
  std::vector<Factor> uni = den_;
  for (const auto& f : o.den_) {
    bool found = false;
    for (auto& g : uni)
      if (g.p == f.p) {
        g.e = std::max(g.e, f.e);
        found = true;
        break;
      }
    if (!found) uni.push_back(f);
  }
  sort_bag(uni);
  auto complement = [&](const std::vector<Factor>& own) {
    Poly m = Poly::one();
    for (const auto& g : uni) {
      int have = 0;
      for (const auto& f : own)
        if (f.p == g.p) {
          have = f.e;
          break;
        }
      if (g.e > have) m *= g.p.pow(g.e - have);
    }
    return m;
  };
  Rat r;
  r.num_ = num_ * complement(den_) + o.num_ * complement(o.den_);
  if (r.num_.is_zero()) return r;
  r.den_ = uni;
  return r;
}

void Rat::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  // exact-division cancellation is a size optimization only; on large
  // numerators the failed-division probes dominate, so callers invoke this
  // explicitly at normalization points
  constexpr size_t kReduceLimit = 4096;
  for (auto& f : den_) {
    while (f.e > 0 && num_.term_count() <= kReduceLimit) {
      auto q = Poly::try_divide(num_, f.p);
      if (!q) break;
      num_ = *q;
      --f.e;
    }
  }
  den_.erase(std::remove_if(den_.begin(), den_.end(), [](const Factor& f) { return f.e == 0; }),
             den_.end());
}

bool Rat::equal(const Rat& a, const Rat& b) {
  if (a.num_.is_zero()) return b.num_.is_zero();
  if (b.num_.is_zero()) return false;
  // cancel common factors, then cross-multiply
  std::vector<Factor> ra = a.den_, rb;
  for (const auto& f : b.den_) {
    int rem = f.e;
    for (auto& g : ra)
      if (g.p == f.p) {
        int k = std::min(g.e, rem);
        g.e -= k;
        rem -= k;
        break;
      }
    if (rem > 0) rb.push_back({f.p, rem});
  }
  Poly lhs = a.num_;
  for (const auto& f : rb) lhs *= f.p.pow(f.e);
  Poly rhs = b.num_;
  for (const auto& f : ra)
    if (f.e > 0) rhs *= f.p.pow(f.e);
  return lhs == rhs;
}

Rat Rat::subst(int var, const Monomial& repl, long s_shift, int sign) const {
  Rat r;
  r.num_ = num_.subst(var, repl, s_shift, sign);
  for (const auto& f : den_) r.push_den(f.p.subst(var, repl, s_shift, sign), f.e);
  if (r.num_.is_zero()) r.den_.clear();
  return r;
}

bool Rat::depends_on(int var) const {
  if (num_.depends_on(var)) return true;
  for (const auto& f : den_)
    if (f.p.depends_on(var)) return true;
  return false;
}

Poly Rat::den_expanded() const {
  Poly d = Poly::one();
  for (const auto& f : den_) d *= f.p.pow(f.e);
  return d;
}

std::string Rat::str() const {
  std::string s = "(" + num_.str() + ")";
  if (!den_.empty()) {
    s += " / (";
    bool first = true;
    for (const auto& f : den_) {
      if (!first) s += " * ";
      first = false;
      s += "(" + f.p.str() + ")";
      if (f.e != 1) s += "^" + std::to_string(f.e);
    }
    s += ")";
  }
  return s;
}

}  // namespace qdyn
