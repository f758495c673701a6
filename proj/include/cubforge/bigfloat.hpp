#pragma once

#include <mpfr.h>

#include <string>

#include "cubforge/rational.hpp"

namespace cubforge {

// Arbitrary-precision binary float, default 256 bits.
class BigFloat {
 public:
  static constexpr int kDefaultPrec = 256;

  BigFloat() : BigFloat(0L, kDefaultPrec) {}
  explicit BigFloat(long v, int prec = kDefaultPrec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, v, MPFR_RNDN);
  }
  explicit BigFloat(const Rational& q, int prec = kDefaultPrec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  explicit BigFloat(double v, int prec = kDefaultPrec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, v, MPFR_RNDN);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(BigFloat o) {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }

  static BigFloat sqrt_ui(unsigned long d, int prec = kDefaultPrec);
  // s^(1/q) for s > 0.
  static BigFloat root(const Rational& s, unsigned long q,
                       int prec = kDefaultPrec);

  BigFloat operator-() const;
  BigFloat operator+(const BigFloat& o) const;
  BigFloat operator-(const BigFloat& o) const;
  BigFloat operator*(const BigFloat& o) const;
  BigFloat operator/(const BigFloat& o) const;
  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }

  BigFloat abs() const;
  BigFloat pow_ui(unsigned long e) const;

  int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
  bool operator<(const BigFloat& o) const { return cmp(o) < 0; }
  bool operator<=(const BigFloat& o) const { return cmp(o) <= 0; }
  bool operator>(const BigFloat& o) const { return cmp(o) > 0; }
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_); }

  // |*this| < 2^e
  bool abs_less_pow2(long e) const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string str(int digits = 30) const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace cubforge
