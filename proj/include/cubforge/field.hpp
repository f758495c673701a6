#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "cubforge/bigfloat.hpp"
#include "cubforge/rational.hpp"

namespace cubforge {

// Element of Q(sqrt2, sqrt3, sqrt5), stored on the fixed basis
// {1, r2, r3, r5, r6, r10, r15, r30} where rd = sqrt(d).
class FieldElement {
 public:
  static constexpr int kDim = 8;
  static constexpr std::array<int, kDim> kBasis = {1, 2, 3, 5, 6, 10, 15, 30};

  FieldElement() = default;
  FieldElement(long v) { c_[0] = v; }  // NOLINT: implicit on purpose
  FieldElement(const Rational& v) { c_[0] = v; }

  static FieldElement sqrt_of(int d);  // sqrt(d), d in kBasis
  static int basis_index(int d);

  const Rational& coeff(int i) const { return c_[i]; }
  void set_coeff(int i, const Rational& v) { c_[i] = v; }

  bool is_zero() const;
  bool is_rational() const;
  const Rational& rational_part() const { return c_[0]; }

  FieldElement operator-() const;
  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement operator*(const Rational& r) const;
  FieldElement operator/(const FieldElement& o) const;

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement inverse() const;  // throws std::domain_error on zero
  FieldElement pow(unsigned e) const;

  // Exact sign via certified interval evaluation; 0 iff the element is zero.
  int sign() const;

  // Square root within the field when one exists. Handles rational inputs
  // and single-radical inputs a*rd; returns nullopt otherwise.
  std::optional<FieldElement> sqrt() const;

  BigFloat to_float(int precision_bits = BigFloat::kDefaultPrec) const;

  // Rendering as "a0 + a1*r2 + ..." with exact rationals; parse reads the
  // same syntax (also accepting '-' between terms).
  std::string str() const;
  static std::optional<FieldElement> parse(std::string_view s);

  size_t hash() const;

 private:
  std::array<Rational, kDim> c_{};
};

inline FieldElement operator*(const Rational& r, const FieldElement& f) {
  return f * r;
}

struct FieldElementHash {
  size_t operator()(const FieldElement& f) const { return f.hash(); }
};

}  // namespace cubforge
