#include "cubforge/moments.hpp"

#include <stdexcept>

namespace cubforge::moments {

unsigned degree(const Exponent& a) {
  unsigned d = 0;
  for (unsigned x : a) d += x;
  return d;
}

Rational sphere_moment(int m, const Exponent& a) {
  if (m < 2) throw std::domain_error("sphere_moment needs m >= 2");
  if (static_cast<int>(a.size()) != m)
    throw std::domain_error("exponent length mismatch");
  long q = degree(a);
  Integer num = 1;
  for (unsigned ai : a) {
    if (ai % 2 != 0) return 0;
    num *= double_factorial(static_cast<long>(ai) - 1);
  }
  num *= double_factorial(m - 2);
  return ratio(num, double_factorial(m + q - 2));
}

Rational c_q(int m, int q) {
  if (q % 2 != 0) throw std::domain_error("c_q requires even q");
  Exponent a(m, 0);
  a[0] = q;
  return sphere_moment(m, a);
}

Rational gaussian_moment(const Exponent& a) {
  Integer num = 1;
  for (unsigned ai : a) {
    if (ai % 2 != 0) return 0;
    num *= double_factorial(static_cast<long>(ai) - 1);
  }
  return Rational(num);
}

Rational orthant_moment(const Exponent& a) {
  Integer num = 1;
  for (unsigned ai : a) num *= double_factorial(2L * ai - 1);
  return Rational(num);
}

Rational radial_factor(RadialWeight w, int m, int q) {
  if (w != RadialWeight::gaussian) throw std::domain_error("unsupported weight");
  if (q % 2 != 0) throw std::domain_error("radial_factor requires even q");
  return ratio(double_factorial(m + q - 2), double_factorial(m - 2));
}

namespace {
void gen(int m, int pos, int rem, Exponent& cur, std::vector<Exponent>& out) {
  if (pos == m - 1) {
    cur[pos] = rem;
    out.push_back(cur);
    return;
  }
  for (int v = rem; v >= 0; --v) {
    cur[pos] = v;
    gen(m, pos + 1, rem - v, cur, out);
  }
}
}  // namespace

std::vector<Exponent> exponents_of_degree(int m, int q) {
  std::vector<Exponent> out;
  Exponent cur(m, 0);
  gen(m, 0, q, cur, out);
  return out;
}

}  // namespace cubforge::moments
