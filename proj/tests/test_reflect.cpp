#include <doctest.h>

#include "cubforge/designs.hpp"
#include "cubforge/reflect.hpp"

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

void check_u(const ReflectionGroupData& g, const std::string& name,
             const std::vector<FieldElement>& expect) {
  const auto& u = find_u(g, name);
  REQUIRE(u.values.size() == expect.size());
  for (size_t k = 0; k < expect.size(); ++k) {
    INFO(g.label << " " << name << " entry " << k + 1);
    CHECK(u.values[k] == expect[k]);
  }
}

}  // namespace

TEST_CASE("orbit sizes match the stated tables (all groups except E8)") {
  for (const auto& label : {"F4", "H3", "H4", "E6", "E7"}) {
    auto g = group_data(label);
    for (size_t k = 0; k < g.corners.size(); ++k) {
      INFO(label << " corner " << k + 1);
      CHECK(orbit_scan(g, g.corners[k], nullptr, {}) == g.orbit_sizes[k]);
    }
  }
}

TEST_CASE("orbit of zero and the cap") {
  auto g = group_data("F4");
  std::vector<FieldElement> zero(4, FieldElement(0));
  CHECK(orbit(g, zero).size() == 1);
  OrbitOptions tiny;
  tiny.cap = 10;
  CHECK_THROWS_AS(orbit(g, g.corners[1], tiny), std::runtime_error);
}

TEST_CASE("B_m, A_m, D_m orbit structure") {
  auto b3 = group_data("B", 3);
  std::vector<FieldElement> e1(3, FieldElement(0));
  e1[0] = 1;
  CHECK(orbit(b3, e1).size() == 6);
  CHECK(orbit(b3, b3.corners[1]).size() == 2 * 2 * 3);  // v2 = (1,1,0)
  auto a4 = group_data("A", 4);
  CHECK(orbit(a4, a4.corners[0]).size() == 5);
  auto d4 = group_data("D", 4);
  CHECK(orbit(d4, d4.corners[0]).size() == 2 * 4);
}

TEST_CASE("harmonic Molien series") {
  auto check_series = [](const char* label, std::vector<long> expect) {
    auto g = group_data(label);
    auto dims = molien_dims(g, static_cast<int>(expect.size()) - 1);
    for (size_t d = 0; d < expect.size(); ++d) {
      INFO(label << " degree " << d);
      CHECK(dims[d] == expect[d]);
    }
  };
  check_series("F4", {1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 2, 0, 1});
  check_series("H3", {1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1});
  check_series("H4", {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0,
                      0, 0, 0, 0, 1, 0, 0, 0, 1});
  check_series("E6", {1, 0, 0, 0, 0, 1, 1, 0, 1, 1, 1});
  check_series("E7", {1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 2});
  check_series("E8", {1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0,
                      1, 0, 2});
}

TEST_CASE("molien dimensions match the shipped invariant inventory") {
  for (const auto& label : exceptional_labels()) {
    auto g = group_data(label);
    int top = 0;
    for (const auto& s : g.invariants) top = std::max(top, s.degree);
    auto dims = molien_dims(g, top);
    std::map<int, long> have;
    for (const auto& s : g.invariants) have[s.degree]++;
    for (const auto& [d, n] : have) CHECK(dims[d] == n);
  }
}

TEST_CASE("every shipped invariant is harmonic") {
  for (const auto& label : exceptional_labels()) {
    auto g = group_data(label);
    for (const auto& spec : g.invariants) {
      INFO(label << " " << spec.name);
      CHECK(check_harmonic(spec, g));
    }
  }
}

TEST_CASE("non-harmonic polynomials are rejected") {
  auto g = group_data("F4");
  InvariantSpec bad;
  bad.name = "power_sum_2";
  bad.degree = 2;
  bad.kind = InvariantSpec::Kind::sym;
  bad.sym.terms = {SymTerm{FieldElement(1), {2}}};
  CHECK(!check_harmonic(bad, g));
}

TEST_CASE("invariance spot checks for the written-out combinations") {
  for (const auto& label : exceptional_labels()) {
    auto g = group_data(label);
    for (const auto& spec : g.invariants) {
      INFO(label << " " << spec.name);
      CHECK(check_invariance(spec, g, 3));
    }
  }
}

TEST_CASE("F4 corner evaluations") {
  auto g = group_data("F4");
  check_u(g, "f6", fev({"-1", "-1/9", "1/9", "1"}));
  check_u(g, "f8", fev({"1", "-13/27", "-13/27", "1"}));
  check_u(g, "f12_1", fev({"0", "128/243", "-25/243", "1"}));
  check_u(g, "f12_2", fev({"25/128", "1751/3456", "0", "1"}));
}

TEST_CASE("H3 corner evaluations") {
  auto g = group_data("H3");
  check_u(g, "f6",
          fev({"-4/5 + 14/5*r10", "1/4 + -7/8*r10", "4/9 + -14/9*r10"}));
  check_u(g, "f10",
          fev({"-49637120/98415 + -43124224/98415*r10",
               "9694750/19683 + 8422700/19683*r10",
               "-1240928000/1594323 + -1078105600/1594323*r10"}));
  check_u(g, "f12",
          fev({"-6897476096/492075 + 191679488/492075*r10",
               "-390677357/39366 + 10856846/39366*r10",
               "6897476096/14348907 + -191679488/14348907*r10"}));
}

TEST_CASE("H4 corner evaluations") {
  auto g = group_data("H4");
  check_u(g, "f12", fev({"-4500", "540", "32500/27", "5625/4"}));
  check_u(g, "f20", fev({"6975", "-58869/25", "4035425/2187", "216225/64"}));
  check_u(g, "f24", fev({"-2367/16", "-4689027/50000", "416329/104976",
                         "622521/16384"}));
}

TEST_CASE("E6 corner evaluations") {
  auto g = group_data("E6");
  check_u(g, "f5",
          fev({"3/4*r3", "6/125*r30", "0", "-6/125*r30", "-3/4*r3", "0"}));
  check_u(g, "f6", fev({"81/56", "-81/700", "-9/28", "-81/700", "81/56",
                        "-27/28"}));
  check_u(g, "f8",
          fev({"800", "-6784/25", "-640/9", "-6784/25", "800", "3200/3"}));
  check_u(g, "f9", fev({"2065*r3", "-185024/625*r30", "0", "185024/625*r30",
                        "-2065*r3", "0"}));
  check_u(g, "f10", fev({"11520/13", "423936/1625", "51200/351",
                         "423936/1625", "11520/13", "-10240/39"}));
}

TEST_CASE("E7 corner evaluations") {
  auto g = group_data("E7");
  check_u(g, "f6",
          fev({"-7700659200/16807 + 9488793600/16807*r2",
               "-427814400/2401 + 527155200/2401*r2",
               "-1818211200/16807 + 2240409600/16807*r2",
               "-547602432/16807 + 674758656/16807*r2",
               "2887747200/16807 + -3558297600/16807*r2",
               "20535091200/16807 + -25303449600/16807*r2",
               "-123210547200/823543 + 151820697600/823543*r2"}));
  check_u(g, "f12_1",
          fev({"27363005574796800/1977326743 + 17942314142016000/1977326743*r2",
               "-760132890073600/282475249 + -689327933184000/282475249*r2",
               "-513174301527400/1977326743 + -792264524693400/1977326743*r2",
               "-14026148038967296/49433168575 + -72141536776421376/49433168575*r2",
               "3931481294451000/1977326743 + -4960153279164600/1977326743*r2",
               "-12979679661260800/1977326743 + -37832882828083200/1977326743*r2",
               "249757080640811827200/33232930569601 + 284898146732782387200/33232930569601*r2"}));
  check_u(g, "f12_2",
          fev({"-2419675164360000/1977326743 + -1489162193640000/1977326743*r2",
               "113867977056000/282475249 + 18727597152000/282475249*r2",
               "156757191916575/1977326743 + -26126480038725/1977326743*r2",
               "16622260339703808/49433168575 + -6701937797136384/49433168575*r2",
               "1494452243214675/1977326743 + -1107985853945025/1977326743*r2",
               "8313279170969600/1977326743 + -2771226582220800/1977326743*r2",
               "-51686387833407897600/33232930569601 + 773622407142604800/33232930569601*r2"}));
}

TEST_CASE("E7 degree-8 and degree-10 tables: published normalization slips") {
  auto g = group_data("E7");
  // The published degree-8 row equals the true evaluation scaled by |v_k|^2
  // entrywise; published degree-10 entry 4 differs in one digit.
  std::vector<FieldElement> printed_u8 =
      fev({"6579988992000/823543 + -5480856576000/823543*r2",
           "731109888000/823543 + -608984064000/823543*r2",
           "-3527605209600/823543 + 2938348108800/823543*r2",
           "-3134999199744/823543 + 2611323666432/823543*r2",
           "-1809496972800/823543 + 1507235558400/823543*r2",
           "3509327462400/823543 + -2923123507200/823543*r2",
           "-115807806259200/40353607 + 96463075737600/40353607*r2"});
  const auto& u8 = find_u(g, "f8");
  for (size_t k = 0; k < 7; ++k) {
    INFO("entry " << k + 1);
    CHECK(printed_u8[k] == u8.values[k] * g.corner_norm2[k]);
  }
  const auto& u10 = find_u(g, "f10");
  std::vector<FieldElement> printed_u10 =
      fev({"-6428624451840/5764801 + 415928908800/5764801*r2",
           "357145802880/823543 + -23107161600/823543*r2",
           "2388412556760/5764801 + -154529143200/5764801*r2",
           "-73143460429824/720600125 + 4732346695680/720600125*r2",
           "-7433097022440/5764801 + 480917800800/5764801*r2",
           "30476441845760/5764801 + -1971811123200/5764801*r2",
           "3291455719342080/1977326743 + -212955601305600/1977326743*r2"});
  for (size_t k = 0; k < 7; ++k) CHECK(printed_u10[k] == u10.values[k]);
}

TEST_CASE("nonexistence certificates for the five smaller groups") {
  const std::pair<const char*, int> cases[] = {
      {"F4", 12}, {"H3", 12}, {"H4", 24}, {"E6", 10}, {"E7", 12}};
  for (auto [label, deg] : cases) {
    auto g = group_data(label);
    INFO(label << " at degree " << deg);
    auto cert = certify_nonexistence(g, deg);
    REQUIRE(cert.has_value());
    CHECK(validate_certificate(g, *cert));
    auto below = certify_nonexistence(g, deg - 2);
    CHECK(!below.has_value());
  }
}

TEST_CASE("published certificate combinations validate exactly") {
  {
    auto g = group_data("F4");
    PositivityCertificate c;
    c.vector_names = {"f12_1", "f12_2"};
    c.coefficients = {FieldElement(-1), FieldElement(2)};
    c.combination = fev({"25/64", "7567/15552", "25/243", "1"});
    CHECK(validate_certificate(g, c));
  }
  {
    auto g = group_data("H4");
    PositivityCertificate c;
    c.vector_names = {"f20", "f24"};
    c.coefficients = {FieldElement(1), FieldElement(-30)};
    c.combination = fev({"91305/8", "2293281/5000", "30201755/17496",
                         "18338985/8192"});
    CHECK(validate_certificate(g, c));
  }
  {
    // The published rank-6 combination vector is not the sum of the
    // published tables (that sum has a negative second entry), so the
    // validated witness here is u8 + 2 u10 instead.
    auto g = group_data("E6");
    const auto& u8 = find_u(g, "f8");
    const auto& u10 = find_u(g, "f10");
    FieldElement bad = u8.values[1] + u10.values[1];
    CHECK(bad.sign() < 0);
    PositivityCertificate c;
    c.vector_names = {"f8", "f10"};
    c.coefficients = {FieldElement(1), FieldElement(2)};
    c.combination.assign(6, FieldElement(0));
    for (int k = 0; k < 6; ++k)
      c.combination[k] = u8.values[k] + FieldElement(2) * u10.values[k];
    CHECK(validate_certificate(g, c));
  }
  {
    // E7 combination published in decimals; recompute exactly, compare 1e-5
    auto g = group_data("E7");
    const auto& us = cached_u_vectors(g);
    std::vector<FieldElement> comb(7, FieldElement(0));
    for (const auto& u : us) {
      FieldElement coef(0);
      if (u.name == "f12_1") coef = FieldElement(-2);
      if (u.name == "f12_2") coef = FieldElement(-25);
      if (u.name == "f10") coef = FieldElement(1);
      if (coef.is_zero()) continue;
      for (int k = 0; k < 7; ++k) comb[k] += coef * u.values[k];
    }
    const double printed[7] = {2.86443e6, 256489., 513956., 989894.,
                               2.86352e6, 1.64917e7, 293023.};
    for (int k = 0; k < 7; ++k) {
      CHECK(comb[k].sign() > 0);
      double val = comb[k].to_float(128).to_double();
      CHECK(std::abs(val - printed[k]) / printed[k] < 1e-5);
    }
  }
}

TEST_CASE("certificates survive positive rescaling") {
  auto g = group_data("F4");
  auto cert = certify_nonexistence(g, 12);
  REQUIRE(cert.has_value());
  for (auto& c : cert->coefficients) c = c * Rational(7);
  for (auto& v : cert->combination) v = v * Rational(7);
  CHECK(validate_certificate(g, *cert));
}

TEST_CASE("basis availability is reported, not silently passed") {
  auto b5 = group_data("B", 5);
  CHECK_THROWS_WITH_AS(certify_nonexistence(b5, 8),
                       doctest::Contains("unavailable"), std::domain_error);
  std::vector<OrbitRadius> orbits = {{0, cubature::RadialScale{1, 1}}};
  std::vector<Rational> w = {1};
  CHECK_THROWS_WITH_AS(euclidean_design_check(b5, orbits, w, 8),
                       doctest::Contains("unavailable"), std::domain_error);
}

TEST_CASE("degree-11 weight classification: F4") {
  auto g = group_data("F4");
  auto fam = classify_weights(g, 11);
  REQUIRE(fam.feasible);
  REQUIRE(fam.free_indices == std::vector<int>{3});
  // published form: w1 = (13-960 w4)/960, w2 = 3(-1+192 w4)/256,
  // w3 = 3(1-120 w4)/160
  CHECK(fam.weights[0].constant == ratio(13, 960));
  CHECK(fam.weights[0].coeffs.at(3) == -1);
  CHECK(fam.weights[1].constant == ratio(-3, 256));
  CHECK(fam.weights[1].coeffs.at(3) == ratio(3 * 192, 256));
  CHECK(fam.weights[2].constant == ratio(3, 160));
  CHECK(fam.weights[2].coeffs.at(3) == ratio(-3 * 120, 160));
  REQUIRE(fam.interval.has_value());
  CHECK(fam.interval->first == ratio(1, 192));
  CHECK(fam.interval->second == ratio(1, 120));
  for (Rational w4 : {ratio(1, 192), ratio(1, 150), ratio(1, 120)}) {
    auto w = family_sample(fam, {{3, w4}});
    std::vector<OrbitRadius> orbits;
    std::vector<Rational> weights;
    for (int k = 0; k < 4; ++k) {
      CHECK(w[k] >= 0);
      orbits.push_back({k, cubature::RadialScale{1, 1}});
      weights.push_back(w[k]);
    }
    auto rep = euclidean_design_check(g, orbits, weights, 11);
    CHECK(rep.valid);
    CHECK(rep.exact);
  }
}

TEST_CASE("degree-11 weight classification: H3 is a single point") {
  auto g = group_data("H3");
  auto fam = classify_weights(g, 11);
  REQUIRE(fam.feasible);
  CHECK(fam.free_indices.empty());
  CHECK(fam.weights[0].constant == ratio(125, 5544));
  CHECK(fam.weights[1].constant == ratio(64, 3465));
  CHECK(fam.weights[2].constant == ratio(27, 3080));
  std::vector<OrbitRadius> orbits;
  std::vector<Rational> weights;
  for (int k = 0; k < 3; ++k) {
    orbits.push_back({k, cubature::RadialScale{1, 1}});
    weights.push_back(fam.weights[k].constant);
  }
  CHECK(euclidean_design_check(g, orbits, weights, 11).valid);
}

TEST_CASE("degree-23 weight classification: H4") {
  auto g = group_data("H4");
  auto fam = classify_weights(g, 23);
  REQUIRE(fam.feasible);
  REQUIRE(fam.free_indices == std::vector<int>{3});
  CHECK(fam.weights[0].constant == ratio(368, 315392));
  CHECK(fam.weights[0].coeffs.at(3) == ratio(-9625, 315392));
  CHECK(fam.weights[1].constant == ratio(125 * 16, 2359296));
  CHECK(fam.weights[1].coeffs.at(3) == ratio(125 * 5625, 2359296));
  // published w3 row carries a sign slip; the nonnegative family needs
  // w3 = 6561 (16 - 51975 w4)/504627200
  CHECK(fam.weights[2].constant == ratio(Integer(6561) * 16, 504627200));
  CHECK(fam.weights[2].coeffs.at(3) ==
        ratio(Integer(-6561) * 51975, 504627200));
  REQUIRE(fam.interval.has_value());
  CHECK(fam.interval->first == 0);
  CHECK(fam.interval->second == ratio(16, 51975));
  for (Rational w4 : {Rational(0), ratio(16, 51975), ratio(1, 10000)}) {
    auto w = family_sample(fam, {{3, w4}});
    std::vector<OrbitRadius> orbits;
    std::vector<Rational> weights;
    for (int k = 0; k < 4; ++k) {
      CHECK(w[k] >= 0);
      orbits.push_back({k, cubature::RadialScale{1, 1}});
      weights.push_back(w[k]);
    }
    CHECK(euclidean_design_check(g, orbits, weights, 23).valid);
  }
}

TEST_CASE("degree-9 weight classification: E6") {
  auto g = group_data("E6");
  auto fam = classify_weights(g, 9);
  REQUIRE(fam.feasible);
  REQUIRE(fam.free_indices == std::vector<int>{5});
  CHECK(fam.weights[0].constant == ratio(2, 729));
  CHECK(fam.weights[0].coeffs.at(5) == ratio(-2 * 96, 729));
  CHECK(fam.weights[1].constant == ratio(125, 186624));
  CHECK(fam.weights[1].coeffs.at(5) == ratio(Integer(125) * 1200, 186624));
  CHECK(fam.weights[2].constant == ratio(1, 1280));
  CHECK(fam.weights[2].coeffs.at(5) == ratio(-9, 16));
  CHECK(fam.weights[3].constant == fam.weights[1].constant);
  CHECK(fam.weights[4].constant == fam.weights[0].constant);
  REQUIRE(fam.interval.has_value());
  CHECK(fam.interval->first == 0);
  CHECK(fam.interval->second == ratio(1, 720));
  for (Rational w6 : {Rational(0), ratio(1, 720), ratio(1, 1000)}) {
    auto w = family_sample(fam, {{5, w6}});
    std::vector<OrbitRadius> orbits;
    std::vector<Rational> weights;
    for (int k = 0; k < 6; ++k) {
      CHECK(w[k] >= 0);
      orbits.push_back({k, cubature::RadialScale{1, 1}});
      weights.push_back(w[k]);
    }
    CHECK(euclidean_design_check(g, orbits, weights, 9).valid);
  }
}

TEST_CASE("E7 degree-11 classification has three free parameters") {
  auto g = group_data("E7");
  auto fam = classify_weights(g, 11);
  REQUIRE(fam.feasible);
  CHECK(fam.free_indices.size() == 3);
  auto frees_opt = feasible_frees(fam);
  REQUIRE(frees_opt.has_value());
  auto w = family_sample(fam, *frees_opt);
  std::vector<OrbitRadius> orbits;
  std::vector<Rational> weights;
  bool nonneg = true;
  for (int k = 0; k < 7; ++k) {
    nonneg = nonneg && w[k] >= 0;
    orbits.push_back({k, cubature::RadialScale{1, 1}});
    weights.push_back(w[k]);
  }
  CHECK(nonneg);
  CHECK(euclidean_design_check(g, orbits, weights, 11).valid);
}

TEST_CASE("published E7 families: own system yes, true system no") {
  auto g = group_data("E7");
  auto rf = load_regions(designs::data_dir() + "/e7_families.txt");
  REQUIRE(rf.regions.size() == 2);
  for (size_t r = 0; r < rf.regions.size(); ++r) {
    auto samples = sample_region(rf, r, {ratio(1, 3)});
    for (const auto& w : samples) {
      Rational mass = 0;
      for (int k = 0; k < 7; ++k) mass += w[k] * g.orbit_sizes[k];
      CHECK(mass == 1);
      std::map<std::string, bool> zero;
      for (const auto& u : cached_u_vectors(g)) {
        if (u.degree > 11) continue;
        FieldElement dot(0);
        for (int k = 0; k < 7; ++k)
          dot += u.values[k] * (w[k] * g.orbit_sizes[k]);
        zero[u.name] = dot.is_zero();
      }
      CHECK(zero.at("f6"));
      CHECK(zero.at("f10"));
      CHECK(!zero.at("f8"));
      std::vector<OrbitRadius> orbits;
      std::vector<Rational> weights;
      for (int k = 0; k < 7; ++k) {
        orbits.push_back({k, cubature::RadialScale{1, 1}});
        weights.push_back(w[k]);
      }
      CHECK(!euclidean_design_check(g, orbits, weights, 11).valid);
    }
  }
}

TEST_CASE("degree-12 check fails on a single F4 orbit") {
  auto g = group_data("F4");
  std::vector<OrbitRadius> orbits = {{0, cubature::RadialScale{1, 1}}};
  std::vector<Rational> w = {ratio(1, 24)};
  auto rep = euclidean_design_check(g, orbits, w, 12);
  CHECK(!rep.valid);
}

TEST_CASE("euclidean check with irrational radii falls back to floats") {
  // odd invariant degrees force irrational radius powers at radius sqrt(2)
  auto g = group_data("E6");
  auto fam = classify_weights(g, 9);
  auto w = family_sample(fam, {{5, ratio(1, 1000)}});
  std::vector<OrbitRadius> orbits;
  std::vector<Rational> weights;
  for (int k = 0; k < 6; ++k) {
    orbits.push_back({k, cubature::RadialScale{2, 2}});  // radius sqrt(2)
    weights.push_back(w[k]);
  }
  auto rep = euclidean_design_check(g, orbits, weights, 9);
  CHECK(rep.valid);
  CHECK(!rep.exact);
  // scaling one orbit off the common sphere breaks the design conditions
  orbits[0].radius = cubature::RadialScale{4, 2};
  CHECK(!euclidean_design_check(g, orbits, weights, 9).valid);
}

TEST_CASE("orbit designs reach the second exponent") {
  auto h3 = group_data("H3");
  auto ico = sphere_design_from_orbit(h3, h3.corners[0]);
  CHECK(ico.point_count() == 12);
  CHECK(cubature::verify_degree(ico, 5).valid);
  CHECK(!cubature::verify_degree(ico, 6).valid);
  auto f4 = group_data("F4");
  auto d24 = sphere_design_from_orbit(f4, f4.corners[0]);
  CHECK(cubature::verify_degree(d24, 5).valid);
  auto b3 = group_data("B", 3);
  std::vector<FieldElement> e1(3, FieldElement(0));
  e1[0] = 1;
  auto oct = sphere_design_from_orbit(b3, e1);
  CHECK(cubature::verify_degree(oct, 3).valid);
  CHECK(!cubature::verify_degree(oct, 4).valid);
}
