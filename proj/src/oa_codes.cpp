#include <array>
#include <cstdint>
#include <stdexcept>

#include "cubforge/designs.hpp"

namespace cubforge::designs {

namespace {

// Galois ring GR(4,3) = Z4[x]/(x^3 + 2x^2 + x + 3), the Hensel lift of
// x^3 + x + 1. beta = x has multiplicative order 7 and the Frobenius is
// induced by beta -> beta^2.
struct GR43 {
  std::array<uint8_t, 3> c{};  // coefficients mod 4, degree < 3

  static GR43 zero() { return {}; }
  static GR43 one() {
    GR43 r;
    r.c[0] = 1;
    return r;
  }
  static GR43 beta() {
    GR43 r;
    r.c[1] = 1;
    return r;
  }

  bool operator==(const GR43&) const = default;

  GR43 add(const GR43& o) const {
    GR43 r;
    for (int i = 0; i < 3; ++i) r.c[i] = (c[i] + o.c[i]) & 3;
    return r;
  }

  GR43 mul(const GR43& o) const {
    // x^3 = 2x^2 + 3x + 1, x^4 = 3x^2 + 3x + 2 (mod 4).
    static constexpr std::array<std::array<uint8_t, 3>, 2> red = {
        {{1, 3, 2}, {2, 3, 3}}};
    std::array<uint8_t, 5> conv{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        conv[i + j] = (conv[i + j] + c[i] * o.c[j]) & 3;
    GR43 r;
    for (int i = 0; i < 3; ++i) r.c[i] = conv[i];
    for (int d = 3; d <= 4; ++d)
      for (int i = 0; i < 3; ++i)
        r.c[i] = (r.c[i] + conv[d] * red[d - 3][i]) & 3;
    return r;
  }

  GR43 pow(unsigned e) const {
    GR43 r = one(), b = *this;
    while (e) {
      if (e & 1) r = r.mul(b);
      b = b.mul(b);
      e >>= 1;
    }
    return r;
  }

  // Frobenius: sum c_i x^i -> sum c_i x^(2i).
  GR43 frob() const {
    GR43 x2 = beta().pow(2), x4 = beta().pow(4);
    GR43 r;
    r.c[0] = c[0];
    GR43 t1 = x2;
    for (auto& v : t1.c) v = static_cast<uint8_t>(v * c[1] & 3);
    GR43 t2 = x4;
    for (auto& v : t2.c) v = static_cast<uint8_t>(v * c[2] & 3);
    return r.add(t1).add(t2);
  }

  // Trace to Z4.
  uint8_t trace() const {
    GR43 f1 = frob();
    GR43 s = add(f1).add(f1.frob());
    if (s.c[1] != 0 || s.c[2] != 0)
      throw std::logic_error("GR(4,3) trace not in Z4");
    return s.c[0];
  }
};

void gray_append(std::vector<int8_t>& row, uint8_t z4) {
  // 0 -> 00, 1 -> 01, 2 -> 11, 3 -> 10; then 0 -> -1, 1 -> +1.
  static constexpr int8_t g[4][2] = {{-1, -1}, {-1, 1}, {1, 1}, {1, -1}};
  row.push_back(g[z4 & 3][0]);
  row.push_back(g[z4 & 3][1]);
}

// GF(32) = F2[t]/(t^5 + t^2 + 1), elements as 5-bit masks.
struct GF32 {
  static uint8_t mul(uint8_t a, uint8_t b) {
    uint16_t acc = 0;
    for (int i = 0; i < 5; ++i)
      if (b >> i & 1) acc ^= static_cast<uint16_t>(a) << i;
    for (int d = 8; d >= 5; --d)
      if (acc >> d & 1) acc ^= (0b100101u << (d - 5));  // t^5 = t^2 + 1
    return static_cast<uint8_t>(acc & 31);
  }
  static uint8_t pow(uint8_t a, unsigned e) {
    uint8_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  static uint8_t trace(uint8_t a) {
    uint8_t s = 0, x = a;
    for (int i = 0; i < 5; ++i) {
      s ^= x;
      x = mul(x, x);
    }
    // trace lands in F2 = {0, 1}
    if (s > 1) throw std::logic_error("GF(32) trace not in F2");
    return s;
  }
};

}  // namespace

OrthogonalArray nordstrom_robinson() {
  // Sanity anchors for the ring presentation.
  GR43 b = GR43::beta();
  if (!(b.pow(7) == GR43::one()) || b.pow(1) == GR43::one())
    throw std::logic_error("GR(4,3) generator must have order 7");
  OrthogonalArray a;
  a.l = 16;
  a.rows.reserve(256);
  for (int eps = 0; eps < 4; ++eps) {
    for (int av = 0; av < 64; ++av) {
      // enumerate ring elements with coefficients (av mod 4, av/4 mod 4, ...)
      GR43 ae;
      ae.c = {static_cast<uint8_t>(av & 3), static_cast<uint8_t>((av >> 2) & 3),
              static_cast<uint8_t>((av >> 4) & 3)};
      std::vector<int8_t> row;
      row.reserve(16);
      for (int j = 0; j < 7; ++j) {
        uint8_t z = (ae.mul(b.pow(j)).trace() + eps) & 3;
        gray_append(row, z);
      }
      gray_append(row, static_cast<uint8_t>(eps));
      a.rows.push_back(std::move(row));
    }
  }
  return a;
}

OrthogonalArray dual_bch_oa() {
  // Rows of the generator: x -> tr(beta^i x) and x -> tr(beta^i x^3),
  // coordinates at x = beta^j, j = 0..30.
  std::vector<std::vector<uint8_t>> gen;
  for (int part = 0; part < 2; ++part) {
    for (int i = 0; i < 5; ++i) {
      std::vector<uint8_t> row(31);
      uint8_t bi = GF32::pow(2, i);  // beta = t = bitmask 2
      for (int j = 0; j < 31; ++j) {
        uint8_t x = GF32::pow(2, j);
        uint8_t arg = part == 0 ? x : GF32::pow(x, 3);
        row[j] = GF32::trace(GF32::mul(bi, arg));
      }
      gen.push_back(std::move(row));
    }
  }
  OrthogonalArray a = oa_from_linear_code(gen);
  if (a.n() != 1024) throw std::logic_error("dual BCH span must have 1024 rows");
  return a;
}

}  // namespace cubforge::designs
