#include "cubforge/field.hpp"

#include <mpfr.h>

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cubforge {

namespace {

struct MulEntry {
  int target;
  long mult;  // rd_i * rd_j = mult * rd_target
};

std::array<std::array<MulEntry, FieldElement::kDim>, FieldElement::kDim>
make_mul_table() {
  std::array<std::array<MulEntry, FieldElement::kDim>, FieldElement::kDim> t{};
  for (int i = 0; i < FieldElement::kDim; ++i) {
    for (int j = 0; j < FieldElement::kDim; ++j) {
      long a = FieldElement::kBasis[i];
      long b = FieldElement::kBasis[j];
      long g = std::gcd(a, b);
      long target = a / g * (b / g);
      t[i][j] = {FieldElement::basis_index(static_cast<int>(target)), g};
    }
  }
  return t;
}

const auto& mul_table() {
  static const auto t = make_mul_table();
  return t;
}

}  // namespace

int FieldElement::basis_index(int d) {
  for (int i = 0; i < kDim; ++i)
    if (kBasis[i] == d) return i;
  throw std::domain_error("not a basis radicand: " + std::to_string(d));
}

FieldElement FieldElement::sqrt_of(int d) {
  FieldElement f;
  f.c_[basis_index(d)] = 1;
  return f;
}

bool FieldElement::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool FieldElement::is_rational() const {
  for (int i = 1; i < kDim; ++i)
    if (c_[i] != 0) return false;
  return true;
}

FieldElement FieldElement::operator-() const {
  FieldElement r;
  for (int i = 0; i < kDim; ++i) r.c_[i] = -c_[i];
  return r;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  FieldElement r;
  for (int i = 0; i < kDim; ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  FieldElement r;
  for (int i = 0; i < kDim; ++i) r.c_[i] = c_[i] - o.c_[i];
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  for (int i = 0; i < kDim; ++i) c_[i] += o.c_[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  for (int i = 0; i < kDim; ++i) c_[i] -= o.c_[i];
  return *this;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  FieldElement r;
  const auto& tab = mul_table();
  for (int i = 0; i < kDim; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < kDim; ++j) {
      if (o.c_[j] == 0) continue;
      const MulEntry& e = tab[i][j];
      r.c_[e.target] += c_[i] * o.c_[j] * e.mult;
    }
  }
  return r;
}

FieldElement FieldElement::operator*(const Rational& s) const {
  FieldElement r;
  if (s == 0) return r;
  for (int i = 0; i < kDim; ++i) r.c_[i] = c_[i] * s;
  return r;
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  return *this * o.inverse();
}

bool FieldElement::operator==(const FieldElement& o) const {
  for (int i = 0; i < kDim; ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("field inverse of zero");
  // Solve (this * x) = 1 as an 8x8 rational linear system. Column j of M is
  // the coefficient vector of this * e_j.
  const auto& tab = mul_table();
  std::array<std::array<Rational, kDim>, kDim> m{};
  for (int i = 0; i < kDim; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < kDim; ++j) {
      const MulEntry& e = tab[i][j];
      m[e.target][j] += c_[i] * e.mult;
    }
  }
  std::array<Rational, kDim> rhs{};
  rhs[0] = 1;
  // Gaussian elimination with partial (first nonzero) pivoting.
  std::array<int, kDim> perm{};
  for (int i = 0; i < kDim; ++i) perm[i] = i;
  for (int col = 0; col < kDim; ++col) {
    int piv = -1;
    for (int r = col; r < kDim; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::logic_error("singular field multiplication matrix");
    std::swap(m[col], m[piv]);
    std::swap(rhs[col], rhs[piv]);
    Rational inv_p = 1 / m[col][col];
    for (int j = col; j < kDim; ++j) m[col][j] *= inv_p;
    rhs[col] *= inv_p;
    for (int r = 0; r < kDim; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (int j = col; j < kDim; ++j) m[r][j] -= f * m[col][j];
      rhs[r] -= f * rhs[col];
    }
  }
  FieldElement x;
  for (int i = 0; i < kDim; ++i) x.c_[i] = rhs[i];
  return x;
}

FieldElement FieldElement::pow(unsigned e) const {
  FieldElement r(1);
  FieldElement b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

int FieldElement::sign() const {
  if (is_zero()) return 0;
  if (is_rational()) return sgn(c_[0]);
  for (int prec = 128; prec <= 1 << 16; prec *= 2) {
    mpfr_t lo, hi, t;
    mpfr_inits2(prec, lo, hi, t, nullptr);
    mpfr_set_zero(lo, 1);
    mpfr_set_zero(hi, 1);
    for (int i = 0; i < kDim; ++i) {
      if (c_[i] == 0) continue;
      // lower bound of c_i * sqrt(d_i)
      mpfr_sqrt_ui(t, kBasis[i], c_[i] > 0 ? MPFR_RNDD : MPFR_RNDU);
      mpfr_mul_q(t, t, c_[i].get_mpq_t(), MPFR_RNDD);
      mpfr_add(lo, lo, t, MPFR_RNDD);
      mpfr_sqrt_ui(t, kBasis[i], c_[i] > 0 ? MPFR_RNDU : MPFR_RNDD);
      mpfr_mul_q(t, t, c_[i].get_mpq_t(), MPFR_RNDU);
      mpfr_add(hi, hi, t, MPFR_RNDU);
    }
    int s = 0;
    if (mpfr_sgn(lo) > 0)
      s = 1;
    else if (mpfr_sgn(hi) < 0)
      s = -1;
    mpfr_clears(lo, hi, t, nullptr);
    if (s != 0) return s;
  }
  throw std::logic_error("field sign: interval did not separate from zero");
}

namespace {

// Largest a with a^2 | n, for n > 0; also returns n / a^2.
void square_part(const Integer& n, Integer& root, Integer& rest) {
  root = 1;
  rest = n;
  Integer p = 2;
  Integer sq;
  while (true) {
    sq = p * p;
    if (sq > rest) break;
    while (mpz_divisible_p(rest.get_mpz_t(), sq.get_mpz_t())) {
      rest /= sq;
      root *= p;
    }
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  }
}

}  // namespace

std::optional<FieldElement> FieldElement::sqrt() const {
  int s = sign();
  if (s < 0) return std::nullopt;
  if (s == 0) return FieldElement(0);
  int support = -1;
  for (int i = 0; i < kDim; ++i) {
    if (c_[i] == 0) continue;
    if (support >= 0) return std::nullopt;  // only single-term inputs handled
    support = i;
  }
  // value = q * rd with q = c_[support] > 0, d = kBasis[support];
  // sqrt = sqrt(q) * d^(1/4): representable only when d == 1.
  if (support != 0) return std::nullopt;
  const Rational& q = c_[0];
  Integer prod = q.get_num() * q.get_den();
  Integer root, rest;
  square_part(prod, root, rest);
  if (rest != 1 && rest != 2 && rest != 3 && rest != 5 && rest != 6 &&
      rest != 10 && rest != 15 && rest != 30)
    return std::nullopt;
  FieldElement r;
  r.c_[basis_index(static_cast<int>(rest.get_si()))] =
      ratio(root, q.get_den());
  return r;
}

BigFloat FieldElement::to_float(int precision_bits) const {
  BigFloat acc(0L, precision_bits);
  for (int i = 0; i < kDim; ++i) {
    if (c_[i] == 0) continue;
    BigFloat term = BigFloat(c_[i], precision_bits);
    if (i > 0) term = term * BigFloat::sqrt_ui(kBasis[i], precision_bits);
    acc += term;
  }
  return acc;
}

std::string FieldElement::str() const {
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i < kDim; ++i) {
    if (c_[i] == 0) continue;
    if (!first) out << " + ";
    out << c_[i].get_str();
    if (i > 0) out << "*r" << kBasis[i];
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

std::optional<FieldElement> FieldElement::parse(std::string_view s) {
  FieldElement acc;
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  };
  bool first = true;
  while (true) {
    skip_ws();
    if (pos >= s.size()) {
      if (first) return std::nullopt;
      break;
    }
    bool neg = false;
    if (!first) {
      if (s[pos] == '+') {
        ++pos;
      } else if (s[pos] == '-') {
        neg = true;
        ++pos;
      } else {
        return std::nullopt;
      }
      skip_ws();
    }
    std::optional<Rational> q;
    if (pos < s.size() && s[pos] == 'r') {
      q = Rational(1);  // bare radical, coefficient one
    } else {
      size_t start = pos;
      while (pos < s.size() && s[pos] != '*' && s[pos] != '+' &&
             (s[pos] != '-' || pos == start))
        ++pos;
      std::string_view numtok = s.substr(start, pos - start);
      while (!numtok.empty() &&
             (numtok.back() == ' ' || numtok.back() == '\t'))
        numtok.remove_suffix(1);
      q = parse_rational(numtok);
      if (!q) return std::nullopt;
    }
    if (neg) *q = -*q;
    int idx = 0;
    skip_ws();
    if (pos < s.size() && (s[pos] == '*' || s[pos] == 'r')) {
      if (s[pos] == '*') {
        ++pos;
        skip_ws();
      }
      if (pos >= s.size() || s[pos] != 'r') return std::nullopt;
      ++pos;
      size_t dstart = pos;
      while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
      int d = 0;
      try {
        d = std::stoi(std::string(s.substr(dstart, pos - dstart)));
      } catch (...) {
        return std::nullopt;
      }
      bool ok = false;
      for (int i = 0; i < kDim; ++i) ok = ok || kBasis[i] == d;
      if (!ok) return std::nullopt;
      idx = basis_index(d);
    }
    acc.c_[idx] += *q;
    first = false;
  }
  return acc;
}

size_t FieldElement::hash() const {
  size_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (int i = 0; i < kDim; ++i) {
    mix(mpz_get_ui(mpq_numref(c_[i].get_mpq_t())));
    mix(static_cast<size_t>(mpz_sgn(mpq_numref(c_[i].get_mpq_t()))));
    mix(mpz_get_ui(mpq_denref(c_[i].get_mpq_t())));
  }
  return h;
}

}  // namespace cubforge
