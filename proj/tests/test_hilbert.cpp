#include <doctest.h>

#include <algorithm>

#include "cubforge/hilbert.hpp"
#include "cubforge/victoir.hpp"

using namespace cubforge;
using namespace cubforge::hilbert;

namespace {

std::string cubature_key(const cubature::CubatureFormula& f) {
  std::vector<std::string> ks;
  for (auto& [p, w] : cubature::materialize(f))
    ks.push_back(cubature::point_key(p) + "@" + w.get_str());
  std::sort(ks.begin(), ks.end());
  std::string all;
  for (auto& s : ks) all += s + "\n";
  return all;
}

}  // namespace

TEST_CASE("catalog identities verify exactly") {
  struct Case {
    const char* name;
    std::optional<Rational> param;
    long forms;
  };
  const Case cases[] = {
      {"sawa91", {}, 91},
      {"reznick", {}, 7 + 42 + 64},
      {"kurschak", Rational(1), 12},
      {"kurschak", Rational(2), 140},
      {"kurschak", Rational(3), 1680},
      {"ns_family", ratio(1, 192), 4 + 8 + 48 + 12},
      {"ns_family", ratio(1, 150), 4 + 8 + 32 + 16 + 48 + 12},
      {"ns_family", ratio(1, 120), 4 + 8 + 48 + 12},
      {"schur", {}, 72},
      {"hurwitz", {}, 72},
  };
  for (const auto& c : cases) {
    INFO(c.name);
    auto id = catalog_identity(c.name, c.param);
    CHECK(id.term_count() == c.forms);
    auto chk = verify_identity(id);
    CHECK(chk.valid);
    CHECK(Integer(id.term_count()) >= form_count_lower_bound(id.m, id.q));
  }
}

TEST_CASE("the tenth-power family meets the classical endpoint") {
  // at a = 1/120 the family identity is the 22680-multiplier classic
  auto family_end = catalog_identity("ns_family", ratio(1, 120));
  auto classic = catalog_identity("schur", {});
  CHECK(same_identity(family_end, classic));
}

TEST_CASE("lhs multipliers are the published integers") {
  CHECK(catalog_identity("sawa91", {}).lhs_multiplier == 120);
  CHECK(catalog_identity("reznick", {}).lhs_multiplier == 960);
  CHECK(catalog_identity("schur", {}).lhs_multiplier == 22680);
  CHECK(catalog_identity("hurwitz", {}).lhs_multiplier == 5040);
  CHECK(catalog_identity("kurschak", Rational(1)).lhs_multiplier == 6);
}

TEST_CASE("ns_family parameter range is enforced") {
  // 7/1000 sits inside [1/192, 1/120] and is accepted
  CHECK(verify_identity(catalog_identity("ns_family", ratio(7, 1000))).valid);
  CHECK_THROWS_AS(catalog_identity("ns_family", ratio(1, 100)),
                  std::domain_error);
  CHECK_THROWS_AS(catalog_identity("ns_family", ratio(1, 200)),
                  std::domain_error);
  CHECK_THROWS_AS(catalog_identity("ns_family", std::nullopt),
                  std::domain_error);
}

TEST_CASE("perturbed identities fail with a named monomial") {
  auto id = catalog_identity("sawa91", {});
  id.terms[0].first += Rational(1);
  auto chk = verify_identity(id);
  CHECK(!chk.valid);
  CHECK(chk.failing_monomial.has_value());
  CHECK(!chk.got.empty());
  CHECK(!chk.want.empty());
}

TEST_CASE("identity to cubature and back") {
  for (const char* name : {"sawa91", "schur", "hurwitz"}) {
    INFO(name);
    auto id = catalog_identity(name, {});
    auto f = identity_to_cubature(id);
    auto rep = cubature::verify_index(f, id.q);
    CHECK(rep.valid);
    CHECK(rep.exact);
    auto id2 = cubature_to_identity(f, id.q);
    CHECK(same_identity(id, id2));
  }
}

TEST_CASE("sawa91 counts and the derived cubature") {
  auto id = catalog_identity("sawa91", {});
  auto f = identity_to_cubature(id);
  CHECK(f.point_count() == 91);
  CHECK(Integer(91) >= form_count_lower_bound(7, 6));  // bound is 84
  CHECK(form_count_lower_bound(7, 6) == 84);
  auto rez = catalog_identity("reznick", {});
  auto frez = identity_to_cubature(rez);
  CHECK(frez.point_count() == 113);  // the doubled axis forms merge
}

TEST_CASE("hurwitz and schur give the same normalized cubature") {
  auto sch = identity_to_cubature(catalog_identity("schur", {}));
  auto hur = identity_to_cubature(catalog_identity("hurwitz", {}));
  CHECK(cubature_key(sch) == cubature_key(hur));
}

TEST_CASE("the 91-point pipeline reproduces the published identity") {
  auto res = victoir::pipeline("ex45_s6_91");
  auto id = cubature_to_identity(res.formula, 6);
  auto printed = catalog_identity("sawa91", {});
  CHECK(same_identity(id, printed));
}

TEST_CASE("rationality reports") {
  auto rep = rationality_report(catalog_identity("sawa91", {}));
  CHECK(rep.all_rational);
  CHECK(rep.field_degree == 1);
  auto ns = rationality_report(catalog_identity("ns_family", ratio(1, 150)));
  CHECK(ns.all_rational);
  HilbertIdentity synth;
  synth.m = 2;
  synth.q = 2;
  synth.lhs_multiplier = 1;
  synth.terms.emplace_back(FieldElement(1),
                           LinearForm{FieldElement(1), FieldElement(0)});
  synth.terms.emplace_back(FieldElement::sqrt_of(2) * ratio(1, 2),
                           LinearForm{FieldElement(0), FieldElement(1)});
  // not a valid identity, but the coefficient field is still reported
  auto srep = rationality_report(synth);
  CHECK(!srep.all_rational);
  CHECK(srep.field_degree == 2);
  HilbertIdentity deep;
  deep.m = 1;
  deep.q = 2;
  deep.terms.emplace_back(FieldElement::sqrt_of(6),
                          LinearForm{FieldElement::sqrt_of(10)});
  CHECK(rationality_report(deep).field_degree == 4);  // Q(r6, r10)
}

TEST_CASE("q=2 identity of an orthonormal basis") {
  HilbertIdentity id;
  id.m = 3;
  id.q = 2;
  id.lhs_multiplier = 1;
  for (int i = 0; i < 3; ++i) {
    LinearForm l(3, FieldElement(0));
    l[i] = 1;
    id.terms.emplace_back(FieldElement(1), std::move(l));
  }
  CHECK(verify_identity(id).valid);
  auto f = identity_to_cubature(id);
  CHECK(f.point_count() == 3);
  CHECK(cubature::verify_index(f, 2).valid);
}

TEST_CASE("identity file round trip and renderer") {
  auto id = catalog_identity("kurschak", Rational(1));
  std::string tmp = "/tmp/cubforge_test.identity";
  save_identity(tmp, id);
  auto back = load_identity(tmp);
  CHECK(same_identity(id, back));
  std::remove(tmp.c_str());
  auto text = render_identity(id);
  CHECK(text.find("(x1^2 + ... + x4^2)^2") != std::string::npos);
}

TEST_CASE("no 0/+-1 representation of the fourth power sum at q=8") {
  for (int m : {2, 3, 4}) {
    INFO("m = " << m);
    auto rep = no_pm1_representation(m, 8);
    CHECK(!rep.representable);
    CHECK(rep.rank_aug == rep.rank_a + 1);
    CHECK(rep.ratio_note.find("2:3") != std::string::npos);
    CHECK(rep.ratio_note.find("2:5") != std::string::npos);
    CHECK(rep.ratio_note.find("28") != std::string::npos);
    CHECK(rep.ratio_note.find("70") != std::string::npos);
  }
}

TEST_CASE("q=4 control: the pair-support solution appears") {
  auto rep = no_pm1_representation(4, 4);
  CHECK(rep.representable);
  REQUIRE(!rep.solution.empty());
  long nonzero = 0;
  for (const auto& c : rep.solution) {
    if (c != 0) {
      CHECK(c == ratio(1, 6));
      ++nonzero;
    }
  }
  CHECK(nonzero == 12);
}
