#include "cubforge/victoir.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cubforge::victoir {

using cubature::CubatureFormula;
using cubature::CubPoint;
using cubature::LPatternOrbit;
using cubature::PointSet;
using cubature::SignOrbit;
using designs::BlockDesign;
using designs::OrthogonalArray;

namespace {

int host_strength(const CubatureFormula& f) {
  if (f.stated_index) return *f.stated_index;
  if (f.stated_degree) return *f.stated_degree;
  throw std::domain_error("host formula has no stated index or degree");
}

const LPatternOrbit& l_slot(const CubatureFormula& f, const OrbitSlot& s) {
  if (s.comp_index >= f.comps.size())
    throw std::domain_error("slot out of range");
  const auto* lp = std::get_if<LPatternOrbit>(&f.comps[s.comp_index]);
  if (!lp) throw std::domain_error("slot is not an L-pattern orbit");
  return *lp;
}

PointSet incidence_points(const BlockDesign& d, const FieldElement& alpha,
                          const FieldElement& beta,
                          const cubature::RadialScale& scale,
                          const Rational& col_weight) {
  PointSet ps;
  for (auto& col : designs::generalized_incidence(d, alpha, beta)) {
    CubPoint p;
    p.scale = scale;
    p.dir = std::move(col);
    ps.pts.push_back(std::move(p));
    ps.weights.push_back(col_weight);
  }
  return ps;
}

}  // namespace

std::vector<OrbitSlot> find_l_slots(const CubatureFormula& f, int l) {
  std::vector<OrbitSlot> out;
  for (size_t i = 0; i < f.comps.size(); ++i)
    if (const auto* lp = std::get_if<LPatternOrbit>(&f.comps[i]))
      if (lp->l == l) out.push_back({i});
  return out;
}

std::vector<OrbitSlot> find_sign_slots(const CubatureFormula& f, int wt) {
  std::vector<OrbitSlot> out;
  for (size_t i = 0; i < f.comps.size(); ++i)
    if (const auto* so = std::get_if<SignOrbit>(&f.comps[i])) {
      int w = 0;
      for (const auto& d : so->rep.dir)
        if (!d.is_zero()) ++w;
      if (w == wt) out.push_back({i});
    }
  return out;
}

CubatureFormula substitute_design(const CubatureFormula& f,
                                  const OrbitSlot& slot, const BlockDesign& d,
                                  const FieldElement& alpha,
                                  const FieldElement& beta) {
  if (f.domain != cubature::Domain::orthant)
    throw std::domain_error("design substitution expects an orthant host");
  const LPatternOrbit& lp = l_slot(f, slot);
  if (d.v() != f.m) throw std::domain_error("design point count != dimension");
  int t = host_strength(f);
  auto sizes = d.size_multiplicities();
  if (sizes.size() != 1 || sizes.begin()->first != lp.l)
    throw std::domain_error("design block size does not match the slot");
  auto rep = designs::verify_design(d, t);
  if (!rep.is_t_design())
    throw std::domain_error("design strength below the host strength");
  // orbit mass w = point_weight * C(m, l) spread over b columns
  Rational mass = lp.point_weight * Rational(binomial(f.m, lp.l));
  Rational col_w = mass / d.block_count();
  CubatureFormula out = f;
  out.comps[slot.comp_index] =
      incidence_points(d, alpha, beta, lp.scale, col_w);
  std::ostringstream msg;
  msg << "replaced the length-" << lp.l << " placement orbit by "
      << d.block_count() << " incidence columns";
  out.step(msg.str());
  return out;
}

CubatureFormula substitute_regular(const CubatureFormula& f,
                                   const std::vector<OrbitSlot>& slots,
                                   const BlockDesign& d,
                                   const FieldElement& alpha,
                                   const FieldElement& beta) {
  if (f.domain != cubature::Domain::orthant)
    throw std::domain_error("design substitution expects an orthant host");
  if (d.v() != f.m) throw std::domain_error("design point count != dimension");
  int t = host_strength(f);
  auto rep = designs::verify_design(d, t);
  if (!rep.balanced_at_t || !rep.regular)
    throw std::domain_error("design is not regular at the host strength");
  auto sizes = d.size_multiplicities();
  if (slots.size() != sizes.size())
    throw std::domain_error("one slot per block size required");
  long b = d.block_count();
  // Weight proportion: per-point weight of the size-k slot must equal
  // c * b_k / (C(m,k) * b) for a shared positive c.
  std::optional<Rational> c;
  std::set<int> seen;
  cubature::RadialScale scale;
  for (const auto& s : slots) {
    const LPatternOrbit& lp = l_slot(f, s);
    auto it = sizes.find(lp.l);
    if (it == sizes.end())
      throw std::domain_error("slot length has no matching block size");
    if (!seen.insert(lp.l).second)
      throw std::domain_error("duplicate slot length");
    Rational c_here = lp.point_weight * Rational(binomial(f.m, lp.l)) *
                      Rational(b) / Rational(it->second);
    if (!c) {
      c = c_here;
      scale = lp.scale;
    } else if (*c != c_here) {
      throw std::domain_error(
          "slot weights are not in the required proportion: expected factor " +
          c->get_str() + ", slot of length " + std::to_string(lp.l) +
          " gives " + c_here.get_str());
    } else if (!scale.same_value(lp.scale)) {
      throw std::domain_error("slots carry different radii");
    }
  }
  Rational col_w = *c / b;
  CubatureFormula out = f;
  std::vector<size_t> order;
  for (const auto& s : slots) order.push_back(s.comp_index);
  std::sort(order.begin(), order.end(), std::greater<>());
  for (size_t i = 0; i + 1 < order.size(); ++i)
    out.comps.erase(out.comps.begin() + order[i]);
  out.comps[order.back()] = incidence_points(d, alpha, beta, scale, col_w);
  std::ostringstream msg;
  msg << "replaced " << slots.size() << " placement orbits by " << b
      << " incidence columns of a regular block family";
  out.step(msg.str());
  return out;
}

CubatureFormula substitute_oa(const CubatureFormula& f, const OrbitSlot& slot,
                              const OrthogonalArray& a) {
  if (f.domain != cubature::Domain::gaussian)
    throw std::domain_error("OA substitution expects a gaussian host");
  if (slot.comp_index >= f.comps.size())
    throw std::domain_error("slot out of range");
  const auto* so = std::get_if<SignOrbit>(&f.comps[slot.comp_index]);
  if (!so) throw std::domain_error("slot is not a sign orbit");
  std::vector<int> nz;
  for (size_t i = 0; i < so->rep.dir.size(); ++i)
    if (!so->rep.dir[i].is_zero()) nz.push_back(static_cast<int>(i));
  if (a.l != static_cast<int>(nz.size()))
    throw std::domain_error("OA constraint count != orbit support size");
  int q = host_strength(f);
  auto oarep = designs::verify_oa(a, std::min(q, a.l));
  if (!oarep.ok) throw std::domain_error("OA strength below the host strength");
  // orbit mass lambda = w * 2^wt goes to the N rows evenly
  Rational mass = so->point_weight * Rational(Integer(1) << nz.size());
  Rational row_w = mass / a.n();
  PointSet ps;
  for (const auto& row : a.rows) {
    CubPoint p = so->rep;
    for (size_t j = 0; j < nz.size(); ++j)
      if (row[j] < 0) p.dir[nz[j]] = -p.dir[nz[j]];
    ps.pts.push_back(std::move(p));
    ps.weights.push_back(row_w);
  }
  CubatureFormula out = f;
  out.comps[slot.comp_index] = std::move(ps);
  std::ostringstream msg;
  msg << "replaced the 2^" << nz.size() << " sign orbit by " << a.n()
      << " orthogonal-array rows";
  out.step(msg.str());
  bool all_explicit_or_symmetric = oarep.centrally_symmetric;
  out.centrally_symmetric = f.centrally_symmetric && all_explicit_or_symmetric;
  return out;
}

std::vector<std::string> pipeline_names() {
  return {"ex45_s6_91", "ex46_s8_457", "main2i_m16", "main2ii_m25"};
}

PipelineResult pipeline(const std::string& name) {
  PipelineResult res;
  auto log = [&](const std::string& s) { res.log.push_back(s); };
  if (name == "ex45_s6_91" || name == "ex46_s8_457") {
    bool small = name == "ex45_s6_91";
    int m = small ? 7 : 9;
    auto host = cubature::catalog_formula(small ? "ex45" : "ex46", m);
    log("host: orthant index-3 formula in dimension " + std::to_string(m));
    auto base = designs::catalog_design(small ? "sqs8" : "invplane_10_4_1");
    auto derived = designs::derive_design(base.design, m);
    log("derived a regular block family with " +
        std::to_string(derived.block_count()) + " blocks by point deletion");
    std::vector<OrbitSlot> slots;
    for (int k : {4, 3}) {
      auto s = find_l_slots(host, k);
      if (s.size() != 1) throw std::logic_error("expected a unique slot");
      slots.push_back(s[0]);
    }
    auto sub = substitute_regular(host, slots, derived, 1, 0);
    log("after substitution: " + std::to_string(sub.point_count()) +
        " orthant points");
    auto gauss = cubature::sqrt_points(sub);
    log("gaussian index-6 lift: " + std::to_string(gauss.point_count()) +
        " points");
    auto sph = cubature::to_sphere(gauss, 6);
    auto halved = cubature::halve_antipodal(sph);
    halved.stated_index = 6;
    log("sphere formula after halving: " +
        std::to_string(halved.point_count()) + " points, index 6");
    res.formula = std::move(halved);
  } else if (name == "main2i_m16") {
    int m = 16;
    auto host = cubature::catalog_formula("lem42i", m);
    log("host: orthant index-2 formula in dimension 16");
    auto gauss = cubature::sqrt_points(host);
    log("gaussian index-4 lift: " + std::to_string(gauss.point_count()) +
        " points");
    auto nr = designs::nordstrom_robinson();
    auto slots = find_sign_slots(gauss, 16);
    if (slots.size() != 1) throw std::logic_error("expected the full-support orbit");
    auto sub = substitute_oa(gauss, slots[0], nr);
    sub.centrally_symmetric = true;
    log("after OA substitution: " + std::to_string(sub.point_count()) +
        " points");
    auto sph = cubature::to_sphere(sub, 4);
    auto halved = cubature::halve_antipodal(sph);
    halved.stated_index = 4;
    log("sphere formula after halving: " +
        std::to_string(halved.point_count()) + " points, index 4");
    res.formula = std::move(halved);
  } else if (name == "main2ii_m25") {
    int m = 25;
    auto host = cubature::catalog_formula("lem42ii", m);
    log("host: orthant index-2 formula in dimension 25");
    auto dsg = designs::catalog_design("sym_25_9_3");
    auto slots = find_l_slots(host, 9);
    if (slots.size() != 1) throw std::logic_error("expected a unique slot");
    auto sub = substitute_design(host, slots[0], dsg.design, 1, 0);
    log("after design substitution: " + std::to_string(sub.point_count()) +
        " orthant points");
    auto gauss = cubature::sqrt_points(sub);
    log("gaussian index-4 lift: " + std::to_string(gauss.point_count()) +
        " points");
    auto nr9 = designs::oa_subarray(designs::nordstrom_robinson(), 9);
    CubatureFormula cur = gauss;
    while (true) {
      auto s = find_sign_slots(cur, 9);
      if (s.empty()) break;
      cur = substitute_oa(cur, s[0], nr9);
    }
    cur.centrally_symmetric = true;
    cur = cubature::dedup(cur);
    log("after OA substitution and merging: " +
        std::to_string(cur.point_count()) + " points");
    auto sph = cubature::to_sphere(cur, 4);
    auto halved = cubature::halve_antipodal(sph);
    halved.stated_index = 4;
    log("sphere formula after halving: " +
        std::to_string(halved.point_count()) + " points, index 4");
    res.formula = std::move(halved);
  } else {
    throw std::domain_error("unknown pipeline: " + name);
  }
  for (const auto& s : res.log) res.formula.step(s);
  return res;
}

}  // namespace cubforge::victoir
