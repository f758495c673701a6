#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <string>

#include "cubforge/designs.hpp"
#include "cubforge/hilbert.hpp"
#include "cubforge/reflect.hpp"
#include "cubforge/victoir.hpp"

// Exit codes: 0 all checks passed, 2 verification failure, 3 missing data,
// 4 usage error.

namespace {

using namespace cubforge;
using nlohmann::json;

struct Output {
  bool as_json = false;
  json payload = json::object();
  int exit_code = 0;

  void kv(const std::string& key, const json& value) {
    payload[key] = value;
    if (!as_json) {
      std::cout << key << ": "
                << (value.is_string() ? value.get<std::string>()
                                      : value.dump())
                << "\n";
    }
  }
  void fail(const std::string& why) {
    kv("status", "FAIL");
    kv("reason", why);
    exit_code = 2;
  }
  void pass() { kv("status", "PASS"); }
  int finish() {
    if (as_json) std::cout << payload.dump(2) << "\n";
    return exit_code;
  }
};

json report_json(const cubature::VerificationReport& rep) {
  json j;
  j["valid"] = rep.valid;
  j["exact"] = rep.exact;
  j["monomials"] = rep.monomials_checked;
  if (!rep.failures.empty()) {
    json f = json::array();
    for (const auto& fm : rep.failures) {
      json one;
      one["exponent"] = fm.exponent;
      one["got"] = fm.got;
      one["want"] = fm.want;
      f.push_back(one);
    }
    j["failures"] = f;
  }
  return j;
}

int run_designs_verify(Output& out, const std::string& file, int t) {
  auto df = designs::load_design(file);
  int level = t > 0 ? t : df.declared_t;
  auto rep = designs::verify_design(df.design, level);
  out.kv("v", df.design.v());
  out.kv("blocks", df.design.block_count());
  json sizes = json::object();
  for (auto [k, c] : df.design.size_multiplicities())
    sizes[std::to_string(k)] = c;
  out.kv("block_sizes", sizes);
  json lambdas = json::array();
  for (const auto& l : rep.lambda_by_t)
    lambdas.push_back(l ? json(l->get_str()) : json(nullptr));
  out.kv("coverage_by_level", lambdas);
  out.kv("balanced_at_t", rep.balanced_at_t);
  out.kv("regular", rep.regular);
  if (rep.balanced_at_t)
    out.pass();
  else
    out.fail("coverage not constant at t=" + std::to_string(level));
  return out.finish();
}

int run_repro(Output& out, const std::string& target, std::string group);

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact cubature, designs, and power-sum identities"};
  app.require_subcommand(1);
  bool as_json = false;
  std::string data_dir_flag;
  app.add_flag("--json", as_json, "emit a JSON payload");
  app.add_option("--data-dir", data_dir_flag, "catalog data directory");

  // designs
  auto* sc_designs = app.add_subcommand("designs", "block design operations");
  sc_designs->require_subcommand(1);
  std::string file;
  int t_level = 0;
  int derive_point = -1;
  std::string out_path;
  auto* dv = sc_designs->add_subcommand("verify", "verify coverage counts");
  dv->add_option("file", file)->required();
  dv->add_option("--t", t_level, "strength level (default: declared)");
  auto* dd = sc_designs->add_subcommand("derive", "point-deletion derivation");
  dd->add_option("file", file)->required();
  dd->add_option("--point", derive_point)->required();
  dd->add_option("-o,--out", out_path);

  // oa
  auto* sc_oa = app.add_subcommand("oa", "orthogonal array operations");
  sc_oa->require_subcommand(1);
  int oa_t = 2, oa_l = 2;
  auto* ov = sc_oa->add_subcommand("verify", "verify strength");
  ov->add_option("file", file)->required();
  ov->add_option("--strength", oa_t)->required();
  auto* ot = sc_oa->add_subcommand("gen-trivial", "full sign matrix");
  ot->add_option("--l", oa_l)->required();
  ot->add_option("-o,--out", out_path);
  auto* on = sc_oa->add_subcommand("gen-nr", "the 256x16 strength-4 array");
  on->add_option("-o,--out", out_path);
  auto* ob = sc_oa->add_subcommand("gen-dual-bch",
                                   "the 1024x31 strength-4 array");
  ob->add_option("-o,--out", out_path);

  // cubature
  auto* sc_cub = app.add_subcommand("cubature", "cubature formulae");
  sc_cub->require_subcommand(1);
  int q_index = 0, t_degree = 0, gen_m = 0;
  std::string catalog_name, transform;
  auto* cv = sc_cub->add_subcommand("verify", "exact moment verification");
  cv->add_option("file", file)->required();
  cv->add_option("--index", q_index);
  cv->add_option("--degree", t_degree);
  auto* cg = sc_cub->add_subcommand("gen", "catalog host formulae");
  cg->add_option("--catalog", catalog_name)->required();
  cg->add_option("--m", gen_m)->required();
  cg->add_option("-o,--out", out_path);
  auto* ct = sc_cub->add_subcommand("transform", "domain transforms");
  ct->add_option("file", file)->required();
  ct->add_option("--apply", transform,
                 "one of: to-sphere, halve, double, square, sqrt")
      ->required();
  ct->add_option("--index", q_index);
  ct->add_option("-o,--out", out_path);

  // victoir
  auto* sc_vic = app.add_subcommand("victoir", "orbit substitutions");
  sc_vic->require_subcommand(1);
  std::string pipeline_name, design_file, oa_file;
  int slot_l = 0;
  auto* vr = sc_vic->add_subcommand("run", "named end-to-end pipeline");
  vr->add_option("--pipeline", pipeline_name)->required();
  vr->add_option("-o,--out", out_path);
  auto* vs = sc_vic->add_subcommand("substitute", "one substitution step");
  vs->add_option("file", file)->required();
  vs->add_option("--design", design_file);
  vs->add_option("--oa", oa_file);
  vs->add_option("--slot-length", slot_l);
  vs->add_option("-o,--out", out_path);

  // reflect
  auto* sc_ref = app.add_subcommand("reflect", "reflection group machinery");
  sc_ref->require_subcommand(1);
  std::string group_label;
  int corner = 1, cert_degree = 0, classify_t = 0, rank = 0;
  bool check_appendix = false;
  auto* ro = sc_ref->add_subcommand("orbit", "corner-vector orbit size");
  ro->add_option("--group", group_label)->required();
  ro->add_option("--corner", corner)->required();
  ro->add_option("--rank", rank);
  auto* rc = sc_ref->add_subcommand("certify", "positivity certificate");
  rc->add_option("--group", group_label)->required();
  rc->add_option("--degree", cert_degree)->required();
  auto* rl = sc_ref->add_subcommand("classify", "invariant cubature weights");
  rl->add_option("--group", group_label)->required();
  rl->add_option("--t", classify_t)->required();
  rl->add_flag("--check-appendix", check_appendix,
               "check the published region list (E8)");
  auto* ru = sc_ref->add_subcommand("uvectors", "corner evaluations");
  ru->add_option("--group", group_label)->required();

  // hilbert
  auto* sc_hil = app.add_subcommand("hilbert", "power-sum identities");
  sc_hil->require_subcommand(1);
  std::string id_name;
  std::string param;
  int pm1_m = 3;
  auto* hv = sc_hil->add_subcommand("verify", "verify an identity file");
  hv->add_option("file", file)->required();
  auto* hc = sc_hil->add_subcommand("catalog", "emit a named identity");
  hc->add_option("--name", id_name)->required();
  hc->add_option("--param", param, "identity parameter (k or a)");
  hc->add_option("-o,--out", out_path);
  auto* hf = sc_hil->add_subcommand("from-cubature", "formula to identity");
  hf->add_option("file", file)->required();
  hf->add_option("--index", q_index)->required();
  hf->add_option("-o,--out", out_path);
  auto* hn = sc_hil->add_subcommand("nopm1", "0/+-1 representability report");
  hn->add_option("--m", pm1_m)->required();
  hn->add_option("--q", q_index);

  // repro
  auto* sc_rep = app.add_subcommand("repro", "named reproducible results");
  std::string target;
  std::string repro_group;
  sc_rep->add_option("target", target)->required();
  sc_rep->add_option("--group", repro_group);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 4;
  }

  if (!data_dir_flag.empty()) setenv("CUBFORGE_DATA", data_dir_flag.c_str(), 1);
  Output out;
  out.as_json = as_json;

  try {
    if (dv->parsed()) return run_designs_verify(out, file, t_level);
    if (dd->parsed()) {
      auto df = designs::load_design(file);
      auto derived = designs::derive_design(df.design, derive_point);
      auto rep = designs::verify_design(derived, df.declared_t);
      out.kv("blocks", derived.block_count());
      out.kv("regular", rep.regular);
      if (!out_path.empty())
        designs::save_design(out_path, derived, df.declared_t,
                             df.declared_lambda);
      if (rep.regular)
        out.pass();
      else
        out.fail("derived design is not regular");
      return out.finish();
    }
    if (ov->parsed()) {
      auto a = designs::load_oa(file);
      auto rep = designs::verify_oa(a, oa_t);
      out.kv("rows", a.n());
      out.kv("constraints", a.l);
      out.kv("centrally_symmetric", rep.centrally_symmetric);
      if (rep.ok) {
        out.kv("index", rep.index_lambda.get_str());
        out.pass();
      } else {
        out.fail("strength check failed");
      }
      return out.finish();
    }
    if (ot->parsed() || on->parsed() || ob->parsed()) {
      designs::OrthogonalArray a;
      if (ot->parsed())
        a = designs::trivial_oa(oa_l);
      else if (on->parsed())
        a = designs::nordstrom_robinson();
      else
        a = designs::dual_bch_oa();
      out.kv("rows", a.n());
      out.kv("constraints", a.l);
      if (!out_path.empty()) {
        designs::save_oa(out_path, a);
        out.kv("written", out_path);
      }
      out.pass();
      return out.finish();
    }
    if (cv->parsed()) {
      auto f = cubature::load_formula(file);
      if (q_index == 0 && t_degree == 0) {
        if (f.stated_index)
          q_index = *f.stated_index;
        else if (f.stated_degree)
          t_degree = *f.stated_degree;
        else {
          out.fail("no index or degree given or stated in the file");
          out.exit_code = 4;
          return out.finish();
        }
      }
      auto rep = q_index ? cubature::verify_index(f, q_index)
                         : cubature::verify_degree(f, t_degree);
      out.kv("points", f.point_count());
      out.kv("report", report_json(rep));
      rep.valid ? out.pass() : out.fail(rep.summary());
      return out.finish();
    }
    if (cg->parsed()) {
      auto f = cubature::catalog_formula(catalog_name, gen_m);
      out.kv("points", f.point_count());
      for (const auto& n : f.notes) out.kv("note", n);
      auto rep = cubature::verify_index(f, *f.stated_index);
      out.kv("report", report_json(rep));
      if (!out_path.empty()) cubature::save_formula(out_path, f);
      rep.valid ? out.pass() : out.fail(rep.summary());
      return out.finish();
    }
    if (ct->parsed()) {
      auto f = cubature::load_formula(file);
      cubature::CubatureFormula g;
      if (transform == "to-sphere") {
        int q = q_index ? q_index : f.stated_index.value_or(0);
        if (q == 0) throw std::domain_error("to-sphere needs --index");
        g = cubature::to_sphere(f, q);
      } else if (transform == "halve") {
        g = cubature::halve_antipodal(f);
      } else if (transform == "double") {
        g = cubature::double_antipodal(f);
      } else if (transform == "square") {
        g = cubature::square_points(f);
      } else if (transform == "sqrt") {
        g = cubature::sqrt_points(f);
      } else {
        out.fail("unknown transform: " + transform);
        out.exit_code = 4;
        return out.finish();
      }
      out.kv("points", g.point_count());
      if (!out_path.empty()) cubature::save_formula(out_path, g);
      out.pass();
      return out.finish();
    }
    if (vr->parsed()) {
      auto res = victoir::pipeline(pipeline_name);
      for (const auto& step : res.log) out.kv("step", step);
      out.kv("points", res.formula.point_count());
      auto rep =
          cubature::verify_index(res.formula, *res.formula.stated_index);
      out.kv("report", report_json(rep));
      if (!out_path.empty()) cubature::save_formula(out_path, res.formula);
      rep.valid ? out.pass() : out.fail(rep.summary());
      return out.finish();
    }
    if (vs->parsed()) {
      auto f = cubature::load_formula(file);
      out.fail("substitution on loaded files requires orbit annotations; "
               "use the pipelines or the library API");
      out.exit_code = 4;
      return out.finish();
    }
    if (ro->parsed()) {
      auto g = reflect::group_data(group_label, rank);
      if (corner < 1 || corner > static_cast<int>(g.corners.size()))
        throw std::domain_error("corner index out of range");
      long n = reflect::orbit_scan(g, g.corners[corner - 1], nullptr,
                                   reflect::OrbitOptions{2'000'000});
      out.kv("orbit_size", n);
      if (!g.orbit_sizes.empty()) {
        out.kv("stated", g.orbit_sizes[corner - 1]);
        n == g.orbit_sizes[corner - 1]
            ? out.pass()
            : out.fail("orbit size differs from the stated table");
      } else {
        out.pass();
      }
      return out.finish();
    }
    if (rc->parsed()) {
      auto g = reflect::group_data(group_label);
      auto cert = reflect::certify_nonexistence(g, cert_degree);
      if (cert) {
        json c;
        for (size_t i = 0; i < cert->vector_names.size(); ++i)
          c[cert->vector_names[i]] = cert->coefficients[i].str();
        out.kv("certificate", c);
        json comb = json::array();
        for (const auto& v : cert->combination) comb.push_back(v.str());
        out.kv("positive_combination", comb);
        out.pass();
      } else {
        out.kv("certificate", nullptr);
        out.kv("status", "NOT_FOUND");
      }
      return out.finish();
    }
    if (rl->parsed()) {
      auto g = reflect::group_data(group_label);
      auto fam = reflect::classify_weights(g, classify_t);
      if (!fam.feasible) {
        out.fail("no nonnegative weight family at degree " +
                 std::to_string(classify_t));
        return out.finish();
      }
      json frees = json::array();
      for (int fidx : fam.free_indices) frees.push_back("w" + std::to_string(fidx + 1));
      out.kv("free", frees);
      json exprs = json::object();
      for (size_t k = 0; k < fam.weights.size(); ++k) {
        std::string e = fam.weights[k].constant.get_str();
        for (auto& [i, c] : fam.weights[k].coeffs)
          e += " + " + c.get_str() + "*w" + std::to_string(i + 1);
        exprs["w" + std::to_string(k + 1)] = e;
      }
      out.kv("weights", exprs);
      if (fam.interval)
        out.kv("interval", json::array({fam.interval->first.get_str(),
                                        fam.interval->second.get_str()}));
      if (check_appendix && group_label == "E8") {
        auto rf = reflect::load_regions(designs::data_dir() + "/e8_regions.txt");
        int bad = 0;
        for (size_t r = 0; r < rf.regions.size(); ++r) {
          auto samples =
              reflect::sample_region(rf, r, {ratio(1, 3), ratio(2, 3)});
          for (const auto& w : samples) {
            std::vector<reflect::OrbitRadius> orbits;
            std::vector<Rational> ws;
            for (size_t k = 0; k < w.size(); ++k) {
              if (w[k] < 0) ++bad;
              orbits.push_back({static_cast<int>(k),
                                cubature::RadialScale{1, 1}});
              ws.push_back(w[k]);
            }
            auto rep = reflect::euclidean_design_check(g, orbits, ws, classify_t);
            if (!rep.valid) ++bad;
          }
        }
        out.kv("regions", rf.regions.size());
        out.kv("region_failures", bad);
        if (bad) {
          out.fail("appendix region check failed");
          return out.finish();
        }
      }
      out.pass();
      return out.finish();
    }
    if (ru->parsed()) {
      auto g = reflect::group_data(group_label);
      const auto& us = reflect::cached_u_vectors(g);
      json j = json::object();
      for (const auto& u : us) {
        json vals = json::array();
        for (const auto& v : u.values) vals.push_back(v.str());
        j[u.name] = vals;
      }
      out.kv("uvectors", j);
      out.pass();
      return out.finish();
    }
    if (hv->parsed()) {
      auto id = hilbert::load_identity(file);
      auto chk = hilbert::verify_identity(id);
      out.kv("forms", id.term_count());
      out.kv("lower_bound",
             hilbert::form_count_lower_bound(id.m, id.q).get_str());
      chk.valid ? out.pass() : out.fail("failing monomial; got " + chk.got +
                                        ", want " + chk.want);
      return out.finish();
    }
    if (hc->parsed()) {
      std::optional<Rational> p;
      if (!param.empty()) p = *parse_rational(param);
      auto id = hilbert::catalog_identity(id_name, p);
      auto chk = hilbert::verify_identity(id);
      out.kv("forms", id.term_count());
      auto rat = hilbert::rationality_report(id);
      out.kv("field_degree", rat.field_degree);
      if (!out_path.empty()) hilbert::save_identity(out_path, id);
      if (!as_json) std::cout << hilbert::render_identity(id);
      chk.valid ? out.pass() : out.fail("identity failed to verify");
      return out.finish();
    }
    if (hf->parsed()) {
      auto f = cubature::load_formula(file);
      auto id = hilbert::cubature_to_identity(f, q_index);
      out.kv("forms", id.term_count());
      if (!out_path.empty()) hilbert::save_identity(out_path, id);
      out.pass();
      return out.finish();
    }
    if (hn->parsed()) {
      auto rep = hilbert::no_pm1_representation(pm1_m, q_index ? q_index : 8);
      out.kv("m", rep.m);
      out.kv("q", rep.q);
      out.kv("form_classes", rep.forms);
      out.kv("rank", rep.rank_a);
      out.kv("rank_augmented", rep.rank_aug);
      out.kv("representable", rep.representable);
      if (!rep.ratio_note.empty()) out.kv("ratio", rep.ratio_note);
      out.pass();
      return out.finish();
    }
    if (sc_rep->parsed()) return run_repro(out, target, repro_group);
  } catch (const std::runtime_error& e) {
    std::string what = e.what();
    out.kv("error", what);
    out.exit_code = what.find("cannot open") != std::string::npos ? 3 : 2;
    return out.finish();
  } catch (const std::exception& e) {
    out.kv("error", e.what());
    out.exit_code = 2;
    return out.finish();
  }
  std::cerr << "unknown command\n";
  return 4;
}

namespace {

int run_repro(Output& out, const std::string& target, std::string group) {
  using cubature::RadialScale;
  auto check = [&](bool ok, const std::string& what) {
    out.kv(what, ok ? "ok" : "FAILED");
    if (!ok) out.exit_code = 2;
  };
  if (target == "ex45" || target == "ex46" || target == "main2-m16" ||
      target == "main2-m25") {
    std::string name = target == "ex45"       ? "ex45_s6_91"
                       : target == "ex46"     ? "ex46_s8_457"
                       : target == "main2-m16" ? "main2i_m16"
                                               : "main2ii_m25";
    auto res = victoir::pipeline(name);
    for (const auto& s : res.log) out.kv("step", s);
    out.kv("points", res.formula.point_count());
    auto rep = cubature::verify_index(res.formula, *res.formula.stated_index);
    check(rep.valid && rep.exact, "exact_index_verification");
    if (target == "ex45") {
      check(res.formula.point_count() == 91, "point_count_91");
      auto id = hilbert::cubature_to_identity(res.formula, 6);
      auto printed = hilbert::catalog_identity("sawa91");
      check(hilbert::same_identity(id, printed), "identity_match");
    }
    if (target == "ex46") check(res.formula.point_count() == 457, "point_count_457");
    if (target == "main2-m16") check(res.formula.point_count() == 144, "point_count_144");
  } else if (target == "ns2") {
    if (group.empty()) group = "H3";
    auto g = reflect::group_data(group);
    int t = group == "H3" || group == "F4" || group == "E7" ? 11
            : group == "H4"                                 ? 23
            : group == "E6"                                 ? 9
                                                            : 15;
    auto fam = reflect::classify_weights(g, t);
    check(fam.feasible, "family_exists");
    out.kv("free_parameters", fam.free_indices.size());
  } else if (target == "certify-all") {
    const std::pair<const char*, int> cases[] = {{"F4", 12}, {"H3", 12},
                                                 {"H4", 24}, {"E6", 10},
                                                 {"E7", 12}, {"E8", 16}};
    for (auto [label, deg] : cases) {
      auto g = reflect::group_data(label);
      auto cert = reflect::certify_nonexistence(g, deg);
      check(cert.has_value(),
            std::string(label) + "_degree_" + std::to_string(deg));
    }
  } else if (target == "appendix-e8") {
    auto g = reflect::group_data("E8");
    auto rf = reflect::load_regions(designs::data_dir() + "/e8_regions.txt");
    out.kv("regions", rf.regions.size());
    bool all_ok = rf.regions.size() == 27;
    for (size_t r = 0; r < rf.regions.size(); ++r) {
      auto samples = reflect::sample_region(rf, r, {ratio(1, 3), ratio(2, 3)});
      for (const auto& w : samples) {
        std::vector<reflect::OrbitRadius> orbits;
        std::vector<Rational> ws;
        bool nonneg = true;
        for (size_t k = 0; k < w.size(); ++k) {
          nonneg = nonneg && w[k] >= 0;
          orbits.push_back({static_cast<int>(k), RadialScale{1, 1}});
          ws.push_back(w[k]);
        }
        auto rep = reflect::euclidean_design_check(g, orbits, ws, 15);
        all_ok = all_ok && nonneg && rep.valid && rep.exact;
      }
    }
    check(all_ok, "all_regions_verify");
  } else if (target == "identities") {
    auto one = [&](const std::string& name, std::optional<Rational> p) {
      auto id = hilbert::catalog_identity(name, p);
      auto chk = hilbert::verify_identity(id);
      check(chk.valid, name + (p ? "(" + p->get_str() + ")" : ""));
    };
    one("sawa91", {});
    one("reznick", {});
    one("schur", {});
    one("hurwitz", {});
    for (long k = 1; k <= 3; ++k) one("kurschak", Rational(k));
    one("ns_family", ratio(1, 192));
    one("ns_family", ratio(1, 120));
    auto sch = hilbert::identity_to_cubature(hilbert::catalog_identity("schur", {}));
    auto hur = hilbert::identity_to_cubature(hilbert::catalog_identity("hurwitz", {}));
    auto key = [](const cubature::CubatureFormula& f) {
      std::vector<std::string> ks;
      for (auto& [p, w] : cubature::materialize(f))
        ks.push_back(cubature::point_key(p) + "@" + w.get_str());
      std::sort(ks.begin(), ks.end());
      std::string all;
      for (auto& s : ks) all += s + "\n";
      return all;
    };
    check(key(sch) == key(hur), "hurwitz_schur_same_cubature");
  } else {
    out.kv("error", "unknown repro target: " + target);
    out.exit_code = 4;
    return out.finish();
  }
  if (out.exit_code == 0) out.pass();
  return out.finish();
}

}  // namespace
