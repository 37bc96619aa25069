#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace qdyn {

// Univariate Laurent polynomial in s = q^{1/2} over Z, the coefficient ring of
// the whole engine.  Dense storage with an exponent offset.
class SPoly {
 public:
  SPoly() = default;
  static SPoly zero() { return SPoly(); }
  static SPoly one() { return term(1, 0); }
  static SPoly si(long v) { return term(mpz_class(v), 0); }
  static SPoly term(const mpz_class& a, long k);
  static SPoly s_power(long k) { return term(1, k); }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && off_ == 0 && c_[0] == 1; }
  long lo() const { return off_; }
  long hi() const { return off_ + static_cast<long>(c_.size()) - 1; }
  const mpz_class& leading() const { return c_.back(); }
  size_t size() const { return c_.size(); }

  SPoly operator-() const;
  SPoly operator+(const SPoly& o) const;
  SPoly operator-(const SPoly& o) const;
  SPoly operator*(const SPoly& o) const;
  SPoly& operator+=(const SPoly& o) { return *this = *this + o; }
  SPoly& operator-=(const SPoly& o) { return *this = *this - o; }
  SPoly& operator*=(const SPoly& o) { return *this = *this * o; }
  SPoly mul_s(long k) const;

  bool operator==(const SPoly& o) const { return off_ == (o.is_zero() ? off_ : o.off_) && c_ == o.c_; }
  bool operator!=(const SPoly& o) const { return !(*this == o); }
  static int cmp(const SPoly& a, const SPoly& b);

  // exact division; nullopt when not divisible over Z[s,1/s]
  static std::optional<SPoly> try_divide(const SPoly& num, const SPoly& den);

  std::string str() const;

  template <typename F>
  void for_each(F f) const {  // f(exponent, coeff)
    for (size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) f(off_ + static_cast<long>(i), c_[i]);
  }

 private:
  long off_ = 0;
  std::vector<mpz_class> c_;  // c_.front() != 0 and c_.back() != 0 when nonempty
  void trim();
};

}  // namespace qdyn
