#include <doctest.h>

#include "cubforge/designs.hpp"
#include "cubforge/reflect.hpp"

// Everything here shares the one-time E8 evaluation cache.

using namespace cubforge;
using namespace cubforge::reflect;

namespace {

FieldElement fe(const char* s) { return *FieldElement::parse(s); }

std::vector<FieldElement> fev(std::initializer_list<const char*> xs) {
  std::vector<FieldElement> out;
  for (const char* s : xs) out.push_back(fe(s));
  return out;
}

const UVector& find_u(const ReflectionGroupData& g, const std::string& name) {
  for (const auto& u : cached_u_vectors(g))
    if (u.name == name) return u;
  throw std::runtime_error("no such u-vector: " + name);
}

}  // namespace

TEST_CASE("E8 orbit sizes") {
  auto g = group_data("E8");
  for (size_t k = 0; k < g.corners.size(); ++k) {
    INFO("corner " << k + 1);
    CHECK(orbit_scan(g, g.corners[k], nullptr, {}) == g.orbit_sizes[k]);
  }
}

TEST_CASE("E8 corner evaluations") {
  auto g = group_data("E8");
  auto check_u = [&](const std::string& name,
                     const std::vector<FieldElement>& expect) {
    const auto& u = find_u(g, name);
    for (size_t k = 0; k < expect.size(); ++k) {
      INFO(name << " entry " << k + 1);
      CHECK(u.values[k] == expect[k]);
    }
  };
  check_u("f8", fev({"174182400", "4926873600/49", "82059264", "62705664",
                     "19353600", "-116121600", "-1045094400", "97977600"}));
  check_u("f12",
          fev({"1680315840", "15655887360/49", "14950365696/125",
               "-2608490304/125", "-275607360", "-734952960", "4480842240",
               "148777965"}));
  check_u("f14",
          fev({"1207483200", "-567924825600/16807", "-2009165312/15",
               "-671799744/5", "-253422400/3", "184307200", "-2634508800",
               "-293294925"}));
  // entries 3 and 4 of the published degree-16 row are misprints; the values
  // below are confirmed by two independent orbit evaluations
  check_u("f16",
          fev({"1490121360", "-393199971840/2401", "-365477292544/1875",
               "-23857627248/625", "1232569520/3", "2075906560", "7529034240",
               "-9749511135/16"}));
}

TEST_CASE("E8 nonexistence certificate at degree 16") {
  auto g = group_data("E8");
  auto cert = certify_nonexistence(g, 16);
  REQUIRE(cert.has_value());
  CHECK(validate_certificate(g, *cert));
  CHECK(!certify_nonexistence(g, 14).has_value());
  // the published combination u16 - 3 u14 + 2 u12 stays entrywise positive
  // with the corrected degree-16 entries
  PositivityCertificate printed;
  printed.vector_names = {"f12", "f14", "f16"};
  printed.coefficients = {FieldElement(2), FieldElement(-3), FieldElement(1)};
  printed.combination.assign(8, FieldElement(0));
  const auto& u12 = find_u(g, "f12");
  const auto& u14 = find_u(g, "f14");
  const auto& u16 = find_u(g, "f16");
  for (int k = 0; k < 8; ++k)
    printed.combination[k] =
        u16.values[k] - FieldElement(3) * u14.values[k] +
        FieldElement(2) * u12.values[k];
  CHECK(validate_certificate(g, printed));
  // six of the eight published combination entries are reproduced exactly
  std::vector<FieldElement> published =
      fev({"1228303440", "9691313402880/16807", "4098709695302656/1265625",
           "59096571112971/62500", "339192560/3", "53079040", "24394245120",
           "9089540145/16"});
  for (int k : {0, 1, 4, 5, 6, 7}) CHECK(printed.combination[k] == published[k]);
}

TEST_CASE("E8 degree-15 weight classification and the published regions") {
  auto g = group_data("E8");
  auto fam = classify_weights(g, 15);
  REQUIRE(fam.feasible);
  CHECK(fam.free_indices.size() == 4);
  auto rf = load_regions(designs::data_dir() + "/e8_regions.txt");
  REQUIRE(rf.regions.size() == 27);
  const auto& us = cached_u_vectors(g);
  for (size_t r = 0; r < rf.regions.size(); ++r) {
    auto samples = sample_region(rf, r, {ratio(1, 3), ratio(2, 3)});
    REQUIRE(samples.size() == 2);
    for (const auto& w : samples) {
      INFO("region " << rf.regions[r].name);
      Rational mass = 0;
      bool nonneg = true;
      for (int k = 0; k < 8; ++k) {
        mass += w[k] * g.orbit_sizes[k];
        nonneg = nonneg && w[k] >= 0;
      }
      CHECK(mass == 1);
      CHECK(nonneg);
      for (const auto& u : us) {
        if (u.degree > 15) continue;
        FieldElement dot(0);
        for (int k = 0; k < 8; ++k)
          dot += u.values[k] * (w[k] * g.orbit_sizes[k]);
        INFO("condition " << u.name);
        CHECK(dot.is_zero());
      }
      std::vector<OrbitRadius> orbits;
      std::vector<Rational> weights;
      for (int k = 0; k < 8; ++k) {
        orbits.push_back({k, cubature::RadialScale{1, 1}});
        weights.push_back(w[k]);
      }
      auto rep = euclidean_design_check(g, orbits, weights, 15);
      CHECK(rep.valid);
      CHECK(rep.exact);
    }
  }
}
