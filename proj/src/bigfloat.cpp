#include "cubforge/bigfloat.hpp"

#include <algorithm>

namespace cubforge {

namespace {
int max_prec(const BigFloat& a, const BigFloat& b) {
  return std::max(a.precision(), b.precision());
}
}  // namespace

BigFloat BigFloat::sqrt_ui(unsigned long d, int prec) {
  BigFloat r(0L, prec);
  mpfr_sqrt_ui(r.v_, d, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::root(const Rational& s, unsigned long q, int prec) {
  BigFloat r(s, prec);
  if (q == 1) return r;
  BigFloat out(0L, prec);
  mpfr_rootn_ui(out.v_, r.v_, q, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(0L, precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::operator+(const BigFloat& o) const {
  BigFloat r(0L, max_prec(*this, o));
  mpfr_add(r.v_, v_, o.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::operator-(const BigFloat& o) const {
  BigFloat r(0L, max_prec(*this, o));
  mpfr_sub(r.v_, v_, o.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::operator*(const BigFloat& o) const {
  BigFloat r(0L, max_prec(*this, o));
  mpfr_mul(r.v_, v_, o.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::operator/(const BigFloat& o) const {
  BigFloat r(0L, max_prec(*this, o));
  mpfr_div(r.v_, v_, o.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::abs() const {
  BigFloat r(0L, precision());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pow_ui(unsigned long e) const {
  BigFloat r(0L, precision());
  mpfr_pow_ui(r.v_, v_, e, MPFR_RNDN);
  return r;
}

bool BigFloat::abs_less_pow2(long e) const {
  if (mpfr_zero_p(v_)) return true;
  return mpfr_get_exp(v_) <= e;
}

std::string BigFloat::str(int digits) const {
  mpfr_exp_t exp;
  char* s = mpfr_get_str(nullptr, &exp, 10, digits, v_, MPFR_RNDN);
  std::string mant(s);
  mpfr_free_str(s);
  bool neg = !mant.empty() && mant[0] == '-';
  std::string d = neg ? mant.substr(1) : mant;
  std::string out = (neg ? "-" : "");
  out += "0." + d + "e" + std::to_string(exp);
  return out;
}

}  // namespace cubforge
