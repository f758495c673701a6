#include <algorithm>
#include <stdexcept>

#include "cubforge/reflect.hpp"

namespace cubforge::reflect {

namespace {

using V = std::vector<FieldElement>;

FieldElement fq(long n, long d = 1) { return FieldElement(ratio(n, d)); }
FieldElement rt(int d) { return FieldElement::sqrt_of(d); }

SymTerm sym(FieldElement c, std::vector<unsigned> pattern) {
  return SymTerm{std::move(c), std::move(pattern)};
}

InvariantSpec sym_spec(std::string name, int degree,
                       std::vector<SymTerm> terms) {
  InvariantSpec s;
  s.name = std::move(name);
  s.degree = degree;
  s.kind = InvariantSpec::Kind::sym;
  s.sym.terms = std::move(terms);
  return s;
}

// terms given as (coeff, x1 power, p power) or with an extra x2 power
InvariantSpec zonal_spec(std::string name, int degree,
                         std::vector<ZonalTerm> terms) {
  InvariantSpec s;
  s.name = std::move(name);
  s.degree = degree;
  s.kind = InvariantSpec::Kind::zonal_orbit_sum;
  s.zonal.terms = std::move(terms);
  return s;
}

ZonalTerm zt(Rational c, unsigned a, unsigned b) { return {c, a, 0, b}; }
ZonalTerm zt2(Rational c, unsigned a, unsigned a2, unsigned b) {
  return {c, a, a2, b};
}

void set_unit_vectors(int dim, std::vector<V>& out, int count) {
  out.assign(count, V(dim, FieldElement(0)));
}

ReflectionGroupData make_f4() {
  ReflectionGroupData g;
  g.label = "F4";
  g.rank = g.dim = 4;
  set_unit_vectors(4, g.roots, 4);
  g.roots[0][0] = 1;
  g.roots[0][1] = -1;
  g.roots[1][1] = 1;
  g.roots[1][2] = -1;
  // The third fundamental root is e3: it is the unique direction orthogonal
  // to v1, v2, v4 below, matching the corner-vector pairing.
  g.roots[2][2] = 1;
  g.roots[3] = {fq(-1, 2), fq(-1, 2), fq(-1, 2), fq(1, 2)};
  set_unit_vectors(4, g.corners, 4);
  g.corners[0] = {fq(1), fq(0), fq(0), fq(1)};
  g.corners[1] = {fq(1), fq(1), fq(0), fq(2)};
  g.corners[2] = {fq(1), fq(1), fq(1), fq(3)};
  g.corners[3] = {fq(0), fq(0), fq(0), fq(2)};
  g.orbit_sizes = {24, 96, 96, 24};
  g.exponents = {1, 5, 7, 11};
  g.group_order = 1152;
  g.invariants.push_back(sym_spec("f6", 6,
                                  {sym(fq(1), {6}), sym(fq(-5), {4, 2}),
                                   sym(fq(30), {2, 2, 2})}));
  g.invariants.push_back(sym_spec(
      "f8", 8,
      {sym(fq(1), {8}), sym(fq(-28, 3), {6, 2}), sym(fq(98, 3), {4, 4}),
       sym(fq(-28), {4, 2, 2}), sym(fq(504), {2, 2, 2, 2})}));
  g.invariants.push_back(sym_spec(
      "f12_1", 12,
      {sym(fq(1), {12}), sym(fq(-22), {10, 2}), sym(fq(79), {8, 4}),
       sym(fq(258), {8, 2, 2}), sym(fq(-116), {6, 6}),
       sym(fq(-236), {6, 4, 2}), sym(fq(-4392), {6, 2, 2, 2}),
       sym(fq(570), {4, 4, 4}), sym(fq(3660), {4, 4, 2, 2})}));
  g.invariants.push_back(sym_spec(
      "f12_2", 12,
      {sym(fq(1), {12}), sym(fq(-22), {10, 2}), sym(fq(133, 2), {8, 4}),
       sym(fq(591, 2), {8, 2, 2}), sym(fq(-157, 2), {6, 6}),
       sym(fq(-1369, 4), {6, 4, 2}), sym(fq(-4167), {6, 2, 2, 2}),
       sym(fq(2265, 2), {4, 4, 4}), sym(fq(6945, 2), {4, 4, 2, 2})}));
  return g;
}

ReflectionGroupData make_h3() {
  ReflectionGroupData g;
  g.label = "H3";
  g.rank = g.dim = 3;
  set_unit_vectors(3, g.roots, 3);
  g.roots[0][0] = -1;
  g.roots[0][1] = 1;
  g.roots[1][1] = -1;
  g.roots[1][2] = 1;
  {
    // ((1+r2+r5-r10)(e1+e2) - (2-r2+2 r5+r10) e3) / 6
    FieldElement a = (fq(1) + rt(2) + rt(5) - rt(10)) * ratio(1, 6);
    FieldElement b = (fq(-2) + rt(2) - fq(2) * rt(5) - rt(10)) * ratio(1, 6);
    g.roots[2] = {a, a, b};
  }
  {
    FieldElement s = fq(3) * rt(2) + rt(10);  // 3 r2 + r10
    FieldElement a1 = (s + fq(8)) * ratio(-1, 12);
    FieldElement b1 = (s - fq(4)) * ratio(-1, 12);
    g.corners.push_back({a1, b1, b1});
    FieldElement a2 = (s + fq(2)) * ratio(-1, 6);
    FieldElement b2 = (s - fq(4)) * ratio(-1, 6);
    g.corners.push_back({a2, a2, b2});
    FieldElement c3 = (rt(2) + rt(10)) * ratio(-1, 4);
    g.corners.push_back({c3, c3, c3});
  }
  g.orbit_sizes = {12, 30, 20};
  g.exponents = {1, 5, 9};
  g.group_order = 120;
  g.invariants.push_back(sym_spec(
      "f6", 6,
      {sym(fq(2), {6}), sym(fq(21), {5, 1}), sym(fq(-15), {4, 2}),
       sym(fq(21) * rt(10), {4, 1, 1}),
       sym(fq(-70) + fq(7) * rt(10), {3, 3}),
       sym(fq(-21) * rt(10), {3, 2, 1}), sym(fq(180), {2, 2, 2})}));
  g.invariants.push_back(zonal_spec(
      "f10", 10,
      {zt(256, 10, 0), zt(-5760, 8, 1), zt(20160, 6, 2), zt(-16800, 4, 3),
       zt(3150, 2, 4), zt(-63, 0, 5)}));
  g.invariants.push_back(zonal_spec(
      "f12", 12,
      {zt(1024, 12, 0), zt(-33792, 10, 1), zt(190080, 8, 2),
       zt(-295680, 6, 3), zt(138600, 4, 4), zt(-16632, 2, 5), zt(231, 0, 6)}));
  return g;
}

ReflectionGroupData make_h4() {
  ReflectionGroupData g;
  g.label = "H4";
  g.rank = g.dim = 4;
  set_unit_vectors(4, g.roots, 4);
  g.roots[0][0] = -1;
  g.roots[0][1] = 1;
  g.roots[1][1] = -1;
  g.roots[1][2] = 1;
  // e3 + e4: the unique direction fitting the corner orthogonality pattern
  // and the order-5 bond with the fourth root.
  g.roots[2][2] = 1;
  g.roots[2][3] = 1;
  g.roots[3] = {fq(1, 2), fq(1, 2), fq(1, 2), rt(5) * ratio(1, 2)};
  {
    FieldElement s5 = rt(5);
    FieldElement q14 = fq(1, 4), q12 = fq(1, 2);
    FieldElement a = (s5 - fq(1)) * q14, b = (s5 + fq(3)) * q14;
    g.corners.push_back({a, b, b, -b});
    FieldElement c = (s5 + fq(1)) * q12, d = (s5 + fq(3)) * q12;
    g.corners.push_back({c, c, d, -d});
    FieldElement e = (fq(3) * s5 + fq(5)) * q14,
                 f = (s5 + fq(3)) * fq(3, 4);
    g.corners.push_back({e, e, e, -f});
    FieldElement h = (s5 + fq(3)) * q12;
    g.corners.push_back({h, h, h, -h});
  }
  g.orbit_sizes = {120, 720, 1200, 600};
  g.exponents = {1, 11, 19, 29};
  g.group_order = 14400;
  g.invariants.push_back(zonal_spec(
      "f12", 12,
      {zt(13, 12, 0), zt(-286, 10, 1), zt(1287, 8, 2), zt(-1716, 6, 3),
       zt(715, 4, 4), zt(-78, 2, 5), zt(1, 0, 6)}));
  g.invariants.push_back(zonal_spec(
      "f20", 20,
      {zt(21, 20, 0), zt(-1330, 18, 1), zt(20349, 16, 2), zt(-116280, 14, 3),
       zt(293930, 12, 4), zt(-352716, 10, 5), zt(203490, 8, 6),
       zt(-54264, 6, 7), zt(5985, 4, 8), zt(-210, 2, 9), zt(1, 0, 10)}));
  g.invariants.push_back(zonal_spec(
      "f24", 24,
      {zt(1, 24, 0), zt(-92, 22, 1), zt(ratio(10626, 5), 20, 2),
       zt(-19228, 18, 3), zt(81719, 16, 4), zt(-178296, 14, 5),
       zt(208012, 12, 6), zt(ratio(-653752, 5), 10, 7), zt(43263, 8, 8),
       zt(-7084, 6, 9), zt(506, 4, 10), zt(-12, 2, 11),
       zt(ratio(1, 25), 0, 12)}));
  return g;
}

ReflectionGroupData make_e6() {
  ReflectionGroupData g;
  g.label = "E6";
  g.rank = g.dim = 6;
  set_unit_vectors(6, g.roots, 6);
  for (int i = 0; i < 5; ++i) {
    g.roots[i][i] = 1;
    g.roots[i][i + 1] = -1;
  }
  {
    FieldElement a = (fq(-3) + rt(3)) * ratio(1, 6);
    FieldElement b = (fq(3) + rt(3)) * ratio(1, 6);
    g.roots[5] = {a, a, a, b, b, b};
  }
  {
    FieldElement s3 = rt(3);
    auto mk = [&](FieldElement first, FieldElement rest, int nfirst) {
      V v(6);
      for (int i = 0; i < 6; ++i) v[i] = i < nfirst ? first : rest;
      return v;
    };
    g.corners.push_back(
        mk((s3 + fq(5)) * ratio(1, 6), (s3 - fq(1)) * ratio(1, 6), 1));
    g.corners.push_back(
        mk((s3 + fq(2)) * ratio(1, 3), (s3 - fq(1)) * ratio(1, 3), 2));
    g.corners.push_back(
        mk((s3 + fq(1)) * ratio(1, 2), (s3 - fq(1)) * ratio(1, 2), 3));
    g.corners.push_back(
        mk((s3 + fq(1)) * ratio(1, 3), (s3 - fq(2)) * ratio(1, 3), 4));
    g.corners.push_back(
        mk((s3 + fq(1)) * ratio(1, 6), (s3 - fq(5)) * ratio(1, 6), 5));
    g.corners.push_back(mk(s3 * ratio(1, 3), s3 * ratio(1, 3), 6));
  }
  g.orbit_sizes = {27, 216, 720, 216, 27, 72};
  g.exponents = {1, 4, 5, 7, 8, 11};
  g.group_order = 51840;
  g.invariants.push_back(sym_spec(
      "f5", 5,
      {sym(fq(1), {5}), sym(fq(1), {4, 1}), sym(fq(-2), {3, 2}),
       sym(fq(1), {3, 1, 1}), sym(fq(-3), {2, 1, 1, 1}),
       sym(fq(24), {1, 1, 1, 1, 1})}));
  g.invariants.push_back(sym_spec(
      "f6", 6,
      {sym(fq(1), {6}), sym(fq(3, 2), {5, 1}), sym(fq(-3), {4, 2}),
       sym(fq(15, 14), {4, 1, 1}), sym(fq(5, 7), {3, 3}),
       sym(fq(-30, 7), {3, 2, 1}), sym(fq(30, 7), {3, 1, 1, 1}),
       sym(fq(9), {2, 2, 2}), sym(fq(45, 7), {2, 2, 1, 1}),
       sym(fq(-180, 7), {2, 1, 1, 1, 1}),
       sym(fq(180, 7), {1, 1, 1, 1, 1, 1})}));
  g.invariants.push_back(zonal_spec(
      "f8", 8,
      {zt(1, 8, 0), zt(ratio(-28, 5), 6, 1), zt(6, 4, 2), zt(ratio(-4, 3), 2, 3),
       zt(ratio(1, 33), 0, 4)}));
  {
    InvariantSpec f9;
    f9.name = "f9";
    f9.degree = 9;
    f9.kind = InvariantSpec::Kind::sym_orbit_sum;
    f9.sym.terms = {sym(fq(1), {9}),
                    sym(fq(-36, 5), {7, 2}),
                    sym(fq(126, 5), {5, 4}),
                    sym(fq(-63), {4, 3, 2}),
                    sym(fq(63), {4, 2, 2, 1}),
                    sym(fq(252), {3, 2, 2, 2}),
                    sym(fq(-945), {2, 2, 2, 2, 1})};
    g.invariants.push_back(std::move(f9));
  }
  g.invariants.push_back(zonal_spec(
      "f10", 10,
      {zt(1, 10, 0), zt(-9, 8, 1), zt(18, 6, 2), zt(-10, 4, 3),
       zt(ratio(15, 11), 2, 4), zt(ratio(-3, 143), 0, 5)}));
  return g;
}

ReflectionGroupData make_e7() {
  ReflectionGroupData g;
  g.label = "E7";
  g.rank = g.dim = 7;
  set_unit_vectors(7, g.roots, 7);
  for (int i = 0; i < 6; ++i) {
    g.roots[i][i] = 1;
    g.roots[i][i + 1] = -1;
  }
  {
    FieldElement a = (fq(-4) + rt(2)) * ratio(1, 7);
    FieldElement b = (fq(3) + rt(2)) * ratio(1, 7);
    g.roots[6] = {a, a, a, b, b, b, b};
  }
  {
    FieldElement s2 = rt(2);
    auto mk = [&](FieldElement first, FieldElement rest, int nfirst) {
      V v(7);
      for (int i = 0; i < 7; ++i) v[i] = i < nfirst ? first : rest;
      return v;
    };
    g.corners.push_back(mk((fq(6) + fq(2) * s2) * ratio(1, 7),
                           (fq(-1) + fq(2) * s2) * ratio(1, 7), 1));
    g.corners.push_back(mk((fq(5) + fq(4) * s2) * ratio(1, 7),
                           (fq(-2) + fq(4) * s2) * ratio(1, 7), 2));
    g.corners.push_back(mk((fq(4) + fq(6) * s2) * ratio(1, 7),
                           (fq(-3) + fq(6) * s2) * ratio(1, 7), 3));
    g.corners.push_back(mk((fq(6) + fq(9) * s2) * ratio(1, 14),
                           (fq(-8) + fq(9) * s2) * ratio(1, 14), 4));
    g.corners.push_back(mk((fq(2) + fq(3) * s2) * ratio(1, 7),
                           (fq(-5) + fq(3) * s2) * ratio(1, 7), 5));
    g.corners.push_back(mk((fq(-2) - fq(3) * s2) * ratio(1, 14),
                           (fq(12) - fq(3) * s2) * ratio(1, 14), 6));
    // all-ones over sqrt(2)
    g.corners.push_back(mk(s2 * ratio(1, 2), s2 * ratio(1, 2), 7));
  }
  g.orbit_sizes = {126, 2016, 10080, 4032, 756, 56, 576};
  g.exponents = {1, 5, 7, 9, 11, 13, 17};
  g.group_order = 2903040;
  g.invariants.push_back(zonal_spec(
      "f6", 6, {zt(32, 6, 0), zt(-80, 4, 1), zt(30, 2, 2), zt(-1, 0, 3)}));
  g.invariants.push_back(zonal_spec(
      "f8", 8,
      {zt(384, 8, 0), zt(-1792, 6, 1), zt(1680, 4, 2), zt(-336, 2, 3),
       zt(7, 0, 4)}));
  g.invariants.push_back(zonal_spec(
      "f10", 10,
      {zt(256, 10, 0), zt(-1920, 8, 1), zt(3360, 6, 2), zt(-1680, 4, 3),
       zt(210, 2, 4), zt(-3, 0, 5)}));
  g.invariants.push_back(zonal_spec(
      "f12_1", 12,
      {zt(4096, 12, 0), zt(-45056, 10, 1), zt(126720, 8, 2),
       zt(-118272, 6, 3), zt(36960, 4, 4), zt(-3168, 2, 5), zt(33, 0, 6)}));
  g.invariants.push_back(zonal_spec(
      "f12_2", 12,
      {zt2(2048, 11, 1, 0), zt2(-14080, 9, 1, 1), zt2(25344, 7, 1, 2),
       zt2(-14784, 5, 1, 3), zt2(2640, 3, 1, 4), zt2(-99, 1, 1, 5)}));
  return g;
}

ReflectionGroupData make_e8() {
  ReflectionGroupData g;
  g.label = "E8";
  g.rank = g.dim = 8;
  set_unit_vectors(8, g.roots, 8);
  for (int i = 0; i < 7; ++i) {
    g.roots[i][i] = 1;
    g.roots[i][i + 1] = -1;
  }
  g.roots[7] = {fq(-1, 2), fq(-1, 2), fq(-1, 2), fq(1, 2),
                fq(1, 2),  fq(1, 2),  fq(1, 2),  fq(1, 2)};
  auto cv = [&](std::vector<Rational> coords) {
    V v;
    for (auto& c : coords) v.emplace_back(c);
    g.corners.push_back(std::move(v));
  };
  cv({ratio(3, 2), ratio(1, 2), ratio(1, 2), ratio(1, 2), ratio(1, 2),
      ratio(1, 2), ratio(1, 2), ratio(1, 2)});
  cv({2, 2, 1, 1, 1, 1, 1, 1});
  cv({ratio(5, 2), ratio(5, 2), ratio(5, 2), ratio(3, 2), ratio(3, 2),
      ratio(3, 2), ratio(3, 2), ratio(3, 2)});
  cv({2, 2, 2, 2, 1, 1, 1, 1});
  cv({ratio(3, 2), ratio(3, 2), ratio(3, 2), ratio(3, 2), ratio(3, 2),
      ratio(1, 2), ratio(1, 2), ratio(1, 2)});
  cv({-1, -1, -1, -1, -1, -1, 0, 0});
  cv({ratio(-1, 2), ratio(-1, 2), ratio(-1, 2), ratio(-1, 2), ratio(-1, 2),
      ratio(-1, 2), ratio(-1, 2), ratio(1, 2)});
  cv({1, 1, 1, 1, 1, 1, 1, 1});
  g.orbit_sizes = {2160, 69120, 483840, 241920, 60480, 6720, 240, 17280};
  g.exponents = {1, 7, 11, 13, 17, 19, 23, 29};
  g.group_order = 696729600;
  g.invariants.push_back(zonal_spec(
      "f8", 8,
      {zt(429, 8, 0), zt(-1716, 6, 1), zt(1430, 4, 2), zt(-260, 2, 3),
       zt(5, 0, 4)}));
  g.invariants.push_back(zonal_spec(
      "f12", 12,
      {zt(1547, 12, 0), zt(-14586, 10, 1), zt(36465, 8, 2), zt(-30940, 6, 3),
       zt(8925, 4, 4), zt(-714, 2, 5), zt(7, 0, 6)}));
  g.invariants.push_back(zonal_spec(
      "f14", 14,
      {zt(969, 14, 0), zt(-12597, 12, 1), zt(46189, 10, 2), zt(-62985, 8, 3),
       zt(33915, 6, 4), zt(-6783, 4, 5), zt(399, 2, 6), zt(-3, 0, 7)}));
  g.invariants.push_back(zonal_spec(
      "f16", 16,
      {zt(6783, 16, 0), zt(-116280, 14, 1), zt(587860, 12, 2),
       zt(-1175720, 10, 3), zt(1017450, 8, 4), zt(-379848, 6, 5),
       zt(55860, 4, 6), zt(-2520, 2, 7), zt(15, 0, 8)}));
  return g;
}

ReflectionGroupData make_abd(const std::string& label, int rank) {
  if (rank < 2) throw std::domain_error("rank >= 2 required");
  ReflectionGroupData g;
  g.label = label;
  g.rank = rank;
  if (label == "A") {
    int m = rank + 1;  // acts on R^m
    g.dim = m;
    set_unit_vectors(m, g.roots, rank);
    for (int i = 0; i < rank; ++i) {
      g.roots[i][i] = 1;
      g.roots[i][i + 1] = -1;
    }
    for (int i = 1; i <= rank; ++i) {
      V v(m, fq(-i, m));
      for (int j = 0; j < i; ++j) v[j] = fq(m - i, m);
      g.corners.push_back(std::move(v));
    }
    for (int i = 1; i <= rank; ++i) g.exponents.push_back(i);
    g.group_order = factorial(m);
  } else if (label == "B") {
    int m = rank;
    g.dim = m;
    set_unit_vectors(m, g.roots, m);
    for (int i = 0; i + 1 < m; ++i) {
      g.roots[i][i] = 1;
      g.roots[i][i + 1] = -1;
    }
    g.roots[m - 1][m - 1] = rt(2);
    for (int i = 1; i < m; ++i) {
      V v(m, fq(0));
      for (int j = 0; j < i; ++j) v[j] = 1;
      g.corners.push_back(std::move(v));
    }
    {
      V v(m, rt(2) * ratio(1, 2));
      g.corners.push_back(std::move(v));
    }
    for (int i = 1; i <= m; ++i) g.exponents.push_back(2 * i - 1);
    g.group_order = ipow(2, m) * factorial(m);
  } else if (label == "D") {
    int m = rank;
    if (m < 3) throw std::domain_error("D needs rank >= 3");
    g.dim = m;
    set_unit_vectors(m, g.roots, m);
    for (int i = 0; i + 1 < m; ++i) {
      g.roots[i][i] = 1;
      g.roots[i][i + 1] = -1;
    }
    g.roots[m - 1][m - 2] = 1;
    g.roots[m - 1][m - 1] = 1;
    for (int i = 1; i <= m - 2; ++i) {
      V v(m, fq(0));
      for (int j = 0; j < i; ++j) v[j] = 1;
      g.corners.push_back(std::move(v));
    }
    {
      V v(m, fq(1, 2));
      v[m - 1] = fq(-1, 2);
      g.corners.push_back(std::move(v));
      g.corners.push_back(V(m, fq(1, 2)));
    }
    for (int i = 1; i < m; ++i) g.exponents.push_back(2 * i - 1);
    g.exponents.push_back(m - 1);
    std::sort(g.exponents.begin(), g.exponents.end());
    g.group_order = ipow(2, m - 1) * factorial(m);
  } else {
    throw std::domain_error("unknown group label: " + label);
  }
  return g;
}

void validate_corner_pairing(const ReflectionGroupData& g) {
  size_t nr = g.roots.size();
  for (size_t i = 0; i < g.corners.size(); ++i) {
    for (size_t j = 0; j < nr; ++j) {
      FieldElement ip(0);
      for (int c = 0; c < g.dim; ++c) ip += g.corners[i][c] * g.roots[j][c];
      bool zero = ip.is_zero();
      if ((i == j) == zero)
        throw std::logic_error(g.label +
                               ": corner/root orthogonality pattern broken at "
                               "(" +
                               std::to_string(i) + "," + std::to_string(j) +
                               ")");
    }
  }
}

}  // namespace

ReflectionGroupData group_data(const std::string& label, int rank) {
  ReflectionGroupData g;
  if (label == "F4")
    g = make_f4();
  else if (label == "H3")
    g = make_h3();
  else if (label == "H4")
    g = make_h4();
  else if (label == "E6")
    g = make_e6();
  else if (label == "E7")
    g = make_e7();
  else if (label == "E8")
    g = make_e8();
  else
    g = make_abd(label, rank);
  for (const auto& v : g.corners) {
    FieldElement n;
    for (const auto& c : v) n += c * c;
    g.corner_norm2.push_back(std::move(n));
  }
  validate_corner_pairing(g);
  return g;
}

std::vector<std::string> exceptional_labels() {
  return {"F4", "H3", "H4", "E6", "E7", "E8"};
}

}  // namespace cubforge::reflect
