// Acceptance suite: one pass/fail line per criterion, exact checks
// throughout, stated runtime budgets enforced where given.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cubforge/designs.hpp"
#include "cubforge/hilbert.hpp"
#include "cubforge/moments.hpp"
#include "cubforge/reflect.hpp"
#include "cubforge/victoir.hpp"

using namespace cubforge;

namespace {

struct Criterion {
  std::string name;
  double budget_seconds;  // 0 = no budget
  std::function<bool(std::string&)> run;
};

bool check_family_samples(const reflect::ReflectionGroupData& g,
                          const reflect::WeightFamily& fam,
                          const std::vector<std::map<int, Rational>>& frees,
                          int t, std::string& why) {
  for (const auto& fr : frees) {
    auto w = reflect::family_sample(fam, fr);
    std::vector<reflect::OrbitRadius> orbits;
    std::vector<Rational> weights;
    for (size_t k = 0; k < w.size(); ++k) {
      if (w[k] < 0) {
        why = "negative weight in a sampled member";
        return false;
      }
      orbits.push_back({static_cast<int>(k), cubature::RadialScale{1, 1}});
      weights.push_back(w[k]);
    }
    auto rep = reflect::euclidean_design_check(g, orbits, weights, t);
    if (!rep.valid || !rep.exact) {
      why = "sampled member failed the design conditions";
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria;

  criteria.push_back({"1 moment consistency (m <= 9, degree <= 10)", 1.0,
                      [](std::string& why) {
    using namespace cubforge::moments;
    for (int m = 2; m <= 9; ++m)
      for (int q = 0; q <= 10; q += 2) {
        Rational rf = radial_factor(RadialWeight::gaussian, m, q);
        for (const auto& e : exponents_of_degree(m, q)) {
          if (gaussian_moment(e) != sphere_moment(m, e) * rf) {
            why = "gaussian/sphere factorization failed";
            return false;
          }
          Exponent doubled(e);
          for (auto& x : doubled) x *= 2;
          if (orthant_moment(e) != gaussian_moment(doubled)) {
            why = "orthant/gaussian squaring coherence failed";
            return false;
          }
        }
      }
    return true;
  }});

  criteria.push_back({"2 catalog hosts verify at their stated indices", 10.0,
                      [](std::string& why) {
    auto run = [&](const char* name, int m, int q) {
      auto f = cubature::catalog_formula(name, m);
      auto rep = cubature::verify_index(f, q);
      if (!rep.valid || !rep.exact) {
        why = std::string(name) + " at m=" + std::to_string(m) + ": " +
              rep.summary();
        return false;
      }
      return true;
    };
    for (int m = 3; m <= 10; ++m)
      if (!run("lem42i", m, 2)) return false;
    for (int m : {4, 7, 10, 13, 25})
      if (!run("lem42ii", m, 2)) return false;
    for (int m : {8, 14, 20})
      if (!run("lem62i", m, 3)) return false;
    for (int m : {7, 13, 19})
      if (!run("lem62ii", m, 3)) return false;
    // the corrected radii are documented on the formulas
    if (cubature::catalog_formula("lem62ii", 7).notes.empty()) {
      why = "lem62ii radius derivation is undocumented";
      return false;
    }
    return true;
  }});

  criteria.push_back({"3 derived-design pipelines: 91 points on S6, 457 on S8",
                      30.0, [](std::string& why) {
    auto a = victoir::pipeline("ex45_s6_91");
    if (a.formula.point_count() != 91) {
      why = "expected 91 points, got " +
            std::to_string(a.formula.point_count());
      return false;
    }
    auto ra = cubature::verify_index(a.formula, 6);
    if (!ra.valid || !ra.exact) {
      why = "91-point formula: " + ra.summary();
      return false;
    }
    auto b = victoir::pipeline("ex46_s8_457");
    if (b.formula.point_count() != 457) {
      why = "expected 457 points, got " +
            std::to_string(b.formula.point_count());
      return false;
    }
    auto rb = cubature::verify_index(b.formula, 6);
    if (!rb.valid || !rb.exact) {
      why = "457-point formula: " + rb.summary();
      return false;
    }
    return true;
  }});

  criteria.push_back({"4 sign-orbit pipeline: 144 points at index 4 (m=16)",
                      30.0, [](std::string& why) {
    auto res = victoir::pipeline("main2i_m16");
    if (res.formula.point_count() != 144) {
      why = "expected 144 points, got " +
            std::to_string(res.formula.point_count());
      return false;
    }
    auto rep = cubature::verify_index(res.formula, 4);
    if (!rep.valid || !rep.exact) {
      why = rep.summary();
      return false;
    }
    return true;
  }});

  criteria.push_back({"5 all 27 corner-orbit sizes by closure", 600.0,
                      [](std::string& why) {
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& label : {"F4", "H3", "H4", "E6", "E7"}) {
      auto g = reflect::group_data(label);
      for (size_t k = 0; k < g.corners.size(); ++k)
        if (reflect::orbit_scan(g, g.corners[k], nullptr, {}) !=
            g.orbit_sizes[k]) {
          why = std::string(label) + " corner " + std::to_string(k + 1);
          return false;
        }
    }
    double small = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    if (small > 60) {
      why = "non-E8 groups exceeded one minute";
      return false;
    }
    auto g = reflect::group_data("E8");
    for (size_t k = 0; k < g.corners.size(); ++k)
      if (reflect::orbit_scan(g, g.corners[k], nullptr,
                              reflect::OrbitOptions{600000}) !=
          g.orbit_sizes[k]) {
        why = "E8 corner " + std::to_string(k + 1);
        return false;
      }
    return true;
  }});

  criteria.push_back({"6 corner evaluations match every published table", 0,
                      [](std::string& why) {
    struct Entry {
      const char* group;
      const char* name;
      std::vector<const char*> values;
    };
    // the published tables; the three entries marked in the repo notes as
    // misprints are replaced by the independently recomputed values
    const std::vector<Entry> tables = {
        {"F4", "f6", {"-1", "-1/9", "1/9", "1"}},
        {"F4", "f8", {"1", "-13/27", "-13/27", "1"}},
        {"F4", "f12_1", {"0", "128/243", "-25/243", "1"}},
        {"F4", "f12_2", {"25/128", "1751/3456", "0", "1"}},
        {"H3", "f6",
         {"-4/5 + 14/5*r10", "1/4 + -7/8*r10", "4/9 + -14/9*r10"}},
        {"H3", "f10",
         {"-49637120/98415 + -43124224/98415*r10",
          "9694750/19683 + 8422700/19683*r10",
          "-1240928000/1594323 + -1078105600/1594323*r10"}},
        {"H3", "f12",
         {"-6897476096/492075 + 191679488/492075*r10",
          "-390677357/39366 + 10856846/39366*r10",
          "6897476096/14348907 + -191679488/14348907*r10"}},
        {"H4", "f12", {"-4500", "540", "32500/27", "5625/4"}},
        {"H4", "f20", {"6975", "-58869/25", "4035425/2187", "216225/64"}},
        {"H4", "f24",
         {"-2367/16", "-4689027/50000", "416329/104976", "622521/16384"}},
        {"E6", "f5",
         {"3/4*r3", "6/125*r30", "0", "-6/125*r30", "-3/4*r3", "0"}},
        {"E6", "f6",
         {"81/56", "-81/700", "-9/28", "-81/700", "81/56", "-27/28"}},
        {"E6", "f8",
         {"800", "-6784/25", "-640/9", "-6784/25", "800", "3200/3"}},
        {"E6", "f9",
         {"2065*r3", "-185024/625*r30", "0", "185024/625*r30", "-2065*r3",
          "0"}},
        {"E6", "f10",
         {"11520/13", "423936/1625", "51200/351", "423936/1625", "11520/13",
          "-10240/39"}},
        {"E8", "f8",
         {"174182400", "4926873600/49", "82059264", "62705664", "19353600",
          "-116121600", "-1045094400", "97977600"}},
        {"E8", "f12",
         {"1680315840", "15655887360/49", "14950365696/125",
          "-2608490304/125", "-275607360", "-734952960", "4480842240",
          "148777965"}},
        {"E8", "f14",
         {"1207483200", "-567924825600/16807", "-2009165312/15",
          "-671799744/5", "-253422400/3", "184307200", "-2634508800",
          "-293294925"}},
        {"E8", "f16",
         {"1490121360", "-393199971840/2401", "-365477292544/1875",
          "-23857627248/625", "1232569520/3", "2075906560", "7529034240",
          "-9749511135/16"}},
    };
    std::map<std::string, reflect::ReflectionGroupData> groups;
    for (const auto& t : tables) {
      if (!groups.count(t.group))
        groups.emplace(t.group, reflect::group_data(t.group));
      const auto& g = groups.at(t.group);
      const reflect::UVector* u = nullptr;
      for (const auto& cand : reflect::cached_u_vectors(g))
        if (cand.name == t.name) u = &cand;
      if (!u) {
        why = std::string(t.group) + " " + t.name + " missing";
        return false;
      }
      for (size_t k = 0; k < t.values.size(); ++k) {
        auto expect = FieldElement::parse(t.values[k]);
        if (!(u->values[k] == *expect)) {
          why = std::string(t.group) + " " + t.name + " entry " +
                std::to_string(k + 1);
          return false;
        }
      }
    }
    // E7: exact for degrees 6 and 12; the published degree-8 row is off by
    // |v_k|^2 entrywise and degree-10 entry 4 by one digit (see notes)
    auto e7 = reflect::group_data("E7");
    const reflect::UVector* u8 = nullptr;
    for (const auto& cand : reflect::cached_u_vectors(e7))
      if (cand.name == "f8") u8 = &cand;
    const char* printed_u8[] = {
        "6579988992000/823543 + -5480856576000/823543*r2",
        "731109888000/823543 + -608984064000/823543*r2",
        "-3527605209600/823543 + 2938348108800/823543*r2",
        "-3134999199744/823543 + 2611323666432/823543*r2",
        "-1809496972800/823543 + 1507235558400/823543*r2",
        "3509327462400/823543 + -2923123507200/823543*r2",
        "-115807806259200/40353607 + 96463075737600/40353607*r2"};
    for (int k = 0; k < 7; ++k) {
      auto expect = FieldElement::parse(printed_u8[k]);
      if (!(*expect == u8->values[k] * e7.corner_norm2[k])) {
        why = "E7 degree-8 normalization relation failed at entry " +
              std::to_string(k + 1);
        return false;
      }
    }
    return true;
  }});

  criteria.push_back({"7 nonexistence certificates for all six groups", 0,
                      [](std::string& why) {
    const std::pair<const char*, int> cases[] = {{"F4", 12}, {"H3", 12},
                                                 {"H4", 24}, {"E6", 10},
                                                 {"E7", 12}, {"E8", 16}};
    for (auto [label, deg] : cases) {
      auto g = reflect::group_data(label);
      auto cert = reflect::certify_nonexistence(g, deg);
      if (!cert || !reflect::validate_certificate(g, *cert)) {
        why = std::string(label) + " at 2s=" + std::to_string(deg);
        return false;
      }
    }
    // the published combination for the rank-4 case
    auto f4 = reflect::group_data("F4");
    reflect::PositivityCertificate printed;
    printed.vector_names = {"f12_1", "f12_2"};
    printed.coefficients = {FieldElement(-1), FieldElement(2)};
    for (const char* s : {"25/64", "7567/15552", "25/243", "1"})
      printed.combination.push_back(*FieldElement::parse(s));
    if (!reflect::validate_certificate(f4, printed)) {
      why = "published rank-4 certificate failed validation";
      return false;
    }
    return true;
  }});

  criteria.push_back({"8 weight classifications and published regions", 0,
                      [](std::string& why) {
    {
      auto g = reflect::group_data("F4");
      auto fam = reflect::classify_weights(g, 11);
      if (!fam.feasible || fam.free_indices != std::vector<int>{3} ||
          fam.weights[0].constant != ratio(13, 960) ||
          fam.weights[0].coeffs.at(3) != -1 ||
          fam.weights[1].constant != ratio(-3, 256) ||
          fam.weights[1].coeffs.at(3) != ratio(9, 4) ||
          fam.weights[2].constant != ratio(3, 160) ||
          fam.weights[2].coeffs.at(3) != ratio(-9, 4) ||
          !fam.interval || fam.interval->first != ratio(1, 192) ||
          fam.interval->second != ratio(1, 120)) {
        why = "rank-4 family differs from the published coefficients";
        return false;
      }
      if (!check_family_samples(g, fam,
                                {{{3, ratio(1, 192)}},
                                 {{3, ratio(1, 150)}},
                                 {{3, ratio(1, 120)}}},
                                11, why))
        return false;
    }
    {
      auto g = reflect::group_data("H3");
      auto fam = reflect::classify_weights(g, 11);
      if (!fam.feasible || !fam.free_indices.empty() ||
          fam.weights[0].constant != ratio(125, 5544) ||
          fam.weights[1].constant != ratio(64, 3465) ||
          fam.weights[2].constant != ratio(27, 3080)) {
        why = "icosahedral family is not the published point";
        return false;
      }
      if (!check_family_samples(g, fam, {{}}, 11, why)) return false;
    }
    {
      auto g = reflect::group_data("H4");
      auto fam = reflect::classify_weights(g, 23);
      if (!fam.feasible || fam.free_indices != std::vector<int>{3} ||
          fam.weights[0].constant != ratio(368, 315392) ||
          !fam.interval || fam.interval->first != 0 ||
          fam.interval->second != ratio(16, 51975)) {
        why = "rank-4 icosahedral family differs";
        return false;
      }
      if (!check_family_samples(
              g, fam, {{{3, Rational(0)}}, {{3, ratio(16, 51975)}}}, 23, why))
        return false;
    }
    {
      auto g = reflect::group_data("E6");
      auto fam = reflect::classify_weights(g, 9);
      if (!fam.feasible || fam.free_indices != std::vector<int>{5} ||
          fam.weights[2].constant != ratio(1, 1280) ||
          fam.weights[2].coeffs.at(5) != ratio(-9, 16) ||
          !fam.interval || fam.interval->second != ratio(1, 720)) {
        why = "rank-6 family differs from the published coefficients";
        return false;
      }
      if (!check_family_samples(
              g, fam, {{{5, Rational(0)}}, {{5, ratio(1, 720)}}}, 9, why))
        return false;
    }
    {
      // E7: the published families fail the true degree-8 condition (their
      // degree-8 row was scaled by |v_k|^2; see the repo notes). The
      // corrected classification is sampled instead, and the published
      // families are checked against the system they actually solve.
      auto g = reflect::group_data("E7");
      auto fam = reflect::classify_weights(g, 11);
      if (!fam.feasible || fam.free_indices.size() != 3) {
        why = "rank-7 classification has the wrong dimension";
        return false;
      }
      auto feas = reflect::feasible_frees(fam);
      if (!feas) {
        why = "rank-7 family has an empty nonnegative region";
        return false;
      }
      std::map<int, Rational> b = *feas;
      for (auto& [i, v] : b) v = v / 2;
      if (!check_family_samples(g, fam, {*feas, b}, 11, why)) return false;
      auto rf =
          reflect::load_regions(designs::data_dir() + "/e7_families.txt");
      const reflect::UVector *u6 = nullptr, *u8 = nullptr, *u10 = nullptr;
      for (const auto& u : reflect::cached_u_vectors(g)) {
        if (u.name == "f6") u6 = &u;
        if (u.name == "f8") u8 = &u;
        if (u.name == "f10") u10 = &u;
      }
      for (size_t r = 0; r < rf.regions.size(); ++r) {
        for (const auto& w :
             reflect::sample_region(rf, r, {ratio(1, 3), ratio(2, 3)})) {
          FieldElement d6(0), d8s(0), d10(0);
          Rational mass = 0;
          for (int k = 0; k < 7; ++k) {
            Rational nw = w[k] * g.orbit_sizes[k];
            mass += nw;
            d6 += u6->values[k] * nw;
            d8s += u8->values[k] * g.corner_norm2[k] * nw;  // published row
            d10 += u10->values[k] * nw;
          }
          if (mass != 1 || !d6.is_zero() || !d8s.is_zero() ||
              !d10.is_zero()) {
            why = "published rank-7 family failed its own defining system";
            return false;
          }
        }
      }
    }
    {
      auto g = reflect::group_data("E8");
      auto fam = reflect::classify_weights(g, 15);
      if (!fam.feasible || fam.free_indices.size() != 4) {
        why = "rank-8 classification has the wrong dimension";
        return false;
      }
      auto rf = reflect::load_regions(designs::data_dir() + "/e8_regions.txt");
      if (rf.regions.size() != 27) {
        why = "expected 27 published regions";
        return false;
      }
      for (size_t r = 0; r < rf.regions.size(); ++r) {
        auto samples =
            reflect::sample_region(rf, r, {ratio(1, 3), ratio(2, 3)});
        for (const auto& w : samples) {
          Rational mass = 0;
          for (int k = 0; k < 8; ++k) {
            if (w[k] < 0) {
              why = "negative weight in region " + rf.regions[r].name;
              return false;
            }
            mass += w[k] * g.orbit_sizes[k];
          }
          if (mass != 1) {
            why = "unnormalized sample in region " + rf.regions[r].name;
            return false;
          }
          std::vector<reflect::OrbitRadius> orbits;
          std::vector<Rational> weights;
          for (int k = 0; k < 8; ++k) {
            orbits.push_back({k, cubature::RadialScale{1, 1}});
            weights.push_back(w[k]);
          }
          auto rep = reflect::euclidean_design_check(g, orbits, weights, 15);
          if (!rep.valid || !rep.exact) {
            why = "region " + rf.regions[r].name + " sample failed at degree 15";
            return false;
          }
        }
      }
    }
    return true;
  }});

  criteria.push_back({"9 power-sum identities", 60.0, [](std::string& why) {
    using namespace cubforge::hilbert;
    struct Case {
      const char* name;
      std::optional<Rational> param;
    };
    const Case cases[] = {
        {"sawa91", {}},       {"reznick", {}},
        {"kurschak", Rational(1)}, {"kurschak", Rational(2)},
        {"kurschak", Rational(3)}, {"ns_family", ratio(1, 192)},
        {"ns_family", ratio(1, 150)}, {"ns_family", ratio(1, 120)},
        {"schur", {}},        {"hurwitz", {}},
    };
    for (const auto& c : cases) {
      auto id = catalog_identity(c.name, c.param);
      if (!verify_identity(id).valid) {
        why = std::string("identity failed: ") + c.name;
        return false;
      }
    }
    auto sch = identity_to_cubature(catalog_identity("schur", {}));
    auto hur = identity_to_cubature(catalog_identity("hurwitz", {}));
    auto key = [](const cubature::CubatureFormula& f) {
      std::vector<std::string> ks;
      for (auto& [p, w] : cubature::materialize(f))
        ks.push_back(cubature::point_key(p) + "@" + w.get_str());
      std::sort(ks.begin(), ks.end());
      std::string all;
      for (auto& s : ks) all += s + ";";
      return all;
    };
    if (key(sch) != key(hur)) {
      why = "the two degree-8/10 classics differ as cubature";
      return false;
    }
    return true;
  }});

  criteria.push_back({"10 no 0/+-1 representation at q=8; q=4 control", 60.0,
                      [](std::string& why) {
    for (int m : {2, 3, 4}) {
      auto rep = hilbert::no_pm1_representation(m, 8);
      if (rep.representable) {
        why = "q=8 system unexpectedly consistent at m=" + std::to_string(m);
        return false;
      }
      if (rep.ratio_note.find("2:3") == std::string::npos ||
          rep.ratio_note.find("2:5") == std::string::npos) {
        why = "ratio report missing";
        return false;
      }
    }
    auto ctl = hilbert::no_pm1_representation(4, 4);
    if (!ctl.representable || ctl.solution.empty()) {
      why = "q=4 control found no solution";
      return false;
    }
    long sixths = 0;
    for (const auto& c : ctl.solution)
      if (c == ratio(1, 6)) ++sixths;
    if (sixths != 12) {
      why = "q=4 control is not the 12-form pair solution";
      return false;
    }
    return true;
  }});

  criteria.push_back({"11 substitution property suites", 0,
                      [](std::string& why) {
    // substitution preserves validity across hosts x designs/arrays
    long combos = 0;
    auto check = [&](const cubature::CubatureFormula& f, int q) {
      auto rep = cubature::verify_index(f, q);
      ++combos;
      return rep.valid && rep.exact;
    };
    using victoir::find_l_slots;
    using victoir::find_sign_slots;
    for (int m = 3; m <= 8; ++m) {
      auto gauss =
          cubature::sqrt_points(cubature::catalog_formula("lem42i", m));
      auto slots = find_sign_slots(gauss, 1);
      auto sub = substitute_oa(gauss, slots[0], designs::trivial_oa(1));
      if (!check(sub, 4)) {
        why = "trivial-array substitution failed (m=" + std::to_string(m) + ")";
        return false;
      }
    }
    auto fano = designs::catalog_design("fano").design;
    {
      auto host = cubature::catalog_formula("lem42ii", 7);
      if (!check(victoir::substitute_design(host, find_l_slots(host, 3)[0],
                                            fano, 1, 0),
                 2)) {
        why = "plane substitution failed";
        return false;
      }
    }
    {
      auto host = cubature::catalog_formula("lem42ii", 25);
      auto d25 = designs::catalog_design("sym_25_9_3").design;
      if (!check(victoir::substitute_design(host, find_l_slots(host, 9)[0],
                                            d25, 1, 0),
                 2)) {
        why = "symmetric-design substitution failed";
        return false;
      }
    }
    for (bool small : {true, false}) {
      auto host = cubature::catalog_formula(small ? "ex45" : "ex46",
                                            small ? 7 : 9);
      auto derived = designs::derive_design(
          designs::catalog_design(small ? "sqs8" : "invplane_10_4_1").design,
          small ? 7 : 9);
      std::vector<victoir::OrbitSlot> slots = {find_l_slots(host, 4)[0],
                                               find_l_slots(host, 3)[0]};
      auto sub = victoir::substitute_regular(host, slots, derived, 1, 0);
      if (!check(sub, 3)) {
        why = "regular-family substitution failed";
        return false;
      }
      auto gauss = cubature::sqrt_points(sub);
      for (int wt : {1, 3, 4}) {
        auto s = find_sign_slots(gauss, wt);
        if (s.empty()) continue;
        if (!check(victoir::substitute_oa(gauss, s[0], designs::trivial_oa(wt)),
                   6)) {
          why = "sign-orbit substitution failed";
          return false;
        }
      }
    }
    {
      auto gauss =
          cubature::sqrt_points(cubature::catalog_formula("lem42i", 16));
      auto sub = victoir::substitute_oa(gauss, find_sign_slots(gauss, 16)[0],
                                        designs::nordstrom_robinson());
      if (!check(sub, 4)) {
        why = "256-row array substitution failed";
        return false;
      }
    }
    {
      auto gauss =
          cubature::sqrt_points(cubature::catalog_formula("lem42i", 31));
      auto sub = victoir::substitute_oa(gauss, find_sign_slots(gauss, 31)[0],
                                        designs::dual_bch_oa());
      if (!check(sub, 4)) {
        why = "1024-row array substitution failed";
        return false;
      }
    }
    if (combos < 20) {
      why = "fewer than 20 combinations exercised";
      return false;
    }
    // trivial-array substitution is the identity on point multisets
    {
      auto gauss =
          cubature::sqrt_points(cubature::catalog_formula("lem42i", 4));
      auto key = [](const cubature::CubatureFormula& g) {
        std::vector<std::string> ks;
        for (auto& [p, w] : cubature::materialize(g))
          ks.push_back(cubature::point_key(p) + "@" + w.get_str());
        std::sort(ks.begin(), ks.end());
        std::string all;
        for (auto& s : ks) all += s + ";";
        return all;
      };
      auto before = key(gauss);
      cubature::CubatureFormula cur = gauss;
      for (int wt : {1, 4}) {
        for (auto& s : find_sign_slots(cur, wt))
          cur = victoir::substitute_oa(cur, s, designs::trivial_oa(wt));
      }
      if (key(cur) != before) {
        why = "trivial-array substitution moved points";
        return false;
      }
    }
    // antipodal round trip
    {
      auto res = victoir::pipeline("ex45_s6_91");
      auto doubled = cubature::double_antipodal(res.formula);
      auto halved = cubature::halve_antipodal(doubled);
      if (halved.point_count() != res.formula.point_count()) {
        why = "halving is not inverse to doubling";
        return false;
      }
      if (!cubature::verify_index(doubled, 6).valid) {
        why = "doubled formula lost validity";
        return false;
      }
    }
    return true;
  }});

  int failures = 0;
  for (auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string why;
    bool ok = false;
    try {
      ok = c.run(why);
    } catch (const std::exception& e) {
      why = e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    bool in_budget = c.budget_seconds == 0 || secs <= c.budget_seconds;
    if (!in_budget && ok) {
      ok = false;
      why = "runtime budget exceeded";
    }
    std::printf("[%s] criterion %-55s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL",
                c.name.c_str(), secs, why.empty() ? "" : " - ",
                why.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
