#include "qdyn/spoly.hpp"

#include <algorithm>

namespace qdyn {

SPoly SPoly::term(const mpz_class& a, long k) {
  SPoly p;
  if (a != 0) {
    p.off_ = k;
    p.c_.push_back(a);
  }
  return p;
}

void SPoly::trim() {
  size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  size_t tail = c_.size();
  while (tail > lead && c_[tail - 1] == 0) --tail;
  if (lead > 0 || tail < c_.size()) {
    c_ = std::vector<mpz_class>(c_.begin() + lead, c_.begin() + tail);
    off_ += static_cast<long>(lead);
  }
  if (c_.empty()) off_ = 0;
}

SPoly SPoly::operator-() const {
  SPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

SPoly SPoly::operator+(const SPoly& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  long lo2 = std::min(off_, o.off_);
  long hi2 = std::max(hi(), o.hi());
  SPoly r;
  r.off_ = lo2;
  r.c_.assign(static_cast<size_t>(hi2 - lo2 + 1), 0);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[off_ - lo2 + i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r.c_[o.off_ - lo2 + i] += o.c_[i];
  r.trim();
  return r;
}

SPoly SPoly::operator-(const SPoly& o) const { return *this + (-o); }

SPoly SPoly::operator*(const SPoly& o) const {
  if (is_zero() || o.is_zero()) return SPoly();
  SPoly r;
  r.off_ = off_ + o.off_;
  r.c_.assign(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      r.c_[i + j] += c_[i] * o.c_[j];
    }
  }
  r.trim();
  return r;
}

SPoly SPoly::mul_s(long k) const {
  SPoly r = *this;
  if (!r.is_zero()) r.off_ += k;
  return r;
}

int SPoly::cmp(const SPoly& a, const SPoly& b) {
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size() ? -1 : 1;
  if (a.is_zero()) return 0;
  if (a.off_ != b.off_) return a.off_ < b.off_ ? -1 : 1;
  for (size_t i = 0; i < a.c_.size(); ++i) {
    int c = ::cmp(a.c_[i], b.c_[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

std::optional<SPoly> SPoly::try_divide(const SPoly& num, const SPoly& den) {
  if (den.is_zero()) return std::nullopt;
  if (num.is_zero()) return SPoly();
  if (num.c_.size() < den.c_.size()) return std::nullopt;
  SPoly rem = num;
  SPoly quot;
  quot.off_ = num.off_ - den.off_;
  quot.c_.assign(num.c_.size() - den.c_.size() + 1, 0);
  for (long i = static_cast<long>(quot.c_.size()) - 1; i >= 0; --i) {
    size_t top = den.c_.size() - 1 + static_cast<size_t>(i);
    if (top >= rem.c_.size() || rem.c_[top] == 0) continue;
    if (!mpz_divisible_p(rem.c_[top].get_mpz_t(), den.c_.back().get_mpz_t())) return std::nullopt;
    mpz_class q = rem.c_[top] / den.c_.back();
    quot.c_[static_cast<size_t>(i)] = q;
    for (size_t j = 0; j < den.c_.size(); ++j) rem.c_[static_cast<size_t>(i) + j] -= q * den.c_[j];
  }
  for (const auto& x : rem.c_)
    if (x != 0) return std::nullopt;
  quot.trim();
  return quot;
}

std::string SPoly::str() const {
  if (is_zero()) return "0";
  std::string s;
  for (long i = static_cast<long>(c_.size()) - 1; i >= 0; --i) {
    const mpz_class& a = c_[static_cast<size_t>(i)];
    if (a == 0) continue;
    long e = off_ + i;
    std::string cs = a.get_str();
    if (s.empty()) {
      s = cs;
    } else if (cs[0] == '-')
      s += " - " + cs.substr(1);
    else
      s += " + " + cs;
    if (e != 0) {
      if (a == 1 || a == -1)
        s.resize(s.size() - 1);
      else
        s += "*";
      s += "s";
      if (e != 1) s += "^" + std::to_string(e);
    }
  }
  return s;
}

}  // namespace qdyn
