#include "cubforge/cubature.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace cubforge::cubature {

using moments::Exponent;

// --- RadialScale -------------------------------------------------------------

std::optional<Rational> RadialScale::pow(unsigned k) const {
  if (k == 0) return Rational(1);
  if (k % q == 0) return qpow(s, static_cast<long>(k / q));
  // s^(k/q) with k/q not integral: rational only if s is a perfect power.
  RadialScale r = reduced();
  if (k % r.q == 0) return qpow(r.s, static_cast<long>(k / r.q));
  return std::nullopt;
}

BigFloat RadialScale::to_float(int prec) const {
  return BigFloat::root(s, q, prec);
}

RadialScale RadialScale::reduced() const {
  RadialScale r = *this;
  if (r.s == 1) return {1, 1};
  for (unsigned d = r.q; d >= 2; --d) {
    if (r.q % d != 0) continue;
    Integer num, den;
    if (mpz_root(num.get_mpz_t(), r.s.get_num().get_mpz_t(), d) &&
        mpz_root(den.get_mpz_t(), r.s.get_den().get_mpz_t(), d)) {
      r.s = ratio(num, den);
      r.q /= d;
      return r.reduced();
    }
  }
  return r;
}

bool RadialScale::same_value(const RadialScale& o) const {
  RadialScale a = reduced(), b = o.reduced();
  return a.q == b.q && a.s == b.s;
}

FieldElement CubPoint::dir_norm2() const {
  FieldElement n;
  for (const auto& d : dir) n += d * d;
  return n;
}

bool CubPoint::dir_is_zero() const {
  for (const auto& d : dir)
    if (!d.is_zero()) return false;
  return true;
}

std::string domain_name(Domain d) {
  switch (d) {
    case Domain::sphere: return "sphere";
    case Domain::gaussian: return "gaussian";
    case Domain::orthant: return "orthant";
  }
  return "?";
}

// --- component basics --------------------------------------------------------

namespace {

int sign_orbit_wt(const SignOrbit& s) {
  int wt = 0;
  for (const auto& d : s.rep.dir)
    if (!d.is_zero()) ++wt;
  return wt;
}

Integer lpattern_size(const LPatternOrbit& o, int m) { return binomial(m, o.l); }

}  // namespace

long component_size(const Component& c, int m) {
  if (const auto* ps = std::get_if<PointSet>(&c))
    return static_cast<long>(ps->pts.size());
  if (const auto* lp = std::get_if<LPatternOrbit>(&c))
    return lpattern_size(*lp, m).get_si();
  const auto& so = std::get<SignOrbit>(c);
  return 1L << sign_orbit_wt(so);
}

Rational component_mass(const Component& c, int m) {
  if (const auto* ps = std::get_if<PointSet>(&c)) {
    Rational s = 0;
    for (const auto& w : ps->weights) s += w;
    return s;
  }
  if (const auto* lp = std::get_if<LPatternOrbit>(&c))
    return lp->point_weight * Rational(lpattern_size(*lp, m));
  const auto& so = std::get<SignOrbit>(c);
  return so.point_weight * Rational(Integer(1) << sign_orbit_wt(so));
}

long CubatureFormula::point_count() const {
  long n = 0;
  for (const auto& c : comps) n += component_size(c, m);
  return n;
}

Rational CubatureFormula::total_weight() const {
  Rational s = 0;
  for (const auto& c : comps) s += component_mass(c, m);
  return s;
}

// --- monomial sums -----------------------------------------------------------

namespace {

FieldElement dir_monomial(const std::vector<FieldElement>& dir,
                          const Exponent& e) {
  FieldElement prod(1);
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (dir[i].is_zero()) return FieldElement(0);
    prod *= dir[i].pow(e[i]);
  }
  return prod;
}

// Sum of the monomial over an L-orbit placement family, radius stripped:
// sum over l-subsets S of prod_{i in supp(e)} (alpha if i in S else beta)^e_i.
FieldElement lpattern_comb_sum(const LPatternOrbit& o, int m,
                               const Exponent& e) {
  std::vector<unsigned> supp_exp;
  for (unsigned ei : e)
    if (ei > 0) supp_exp.push_back(ei);
  int s = static_cast<int>(supp_exp.size());
  bool beta_zero = o.beta.is_zero();
  FieldElement total(0);
  for (int tmask = 0; tmask < (1 << s); ++tmask) {
    unsigned ea = 0, eb = 0;
    int tsz = 0;
    for (int i = 0; i < s; ++i) {
      if (tmask >> i & 1) {
        ea += supp_exp[i];
        ++tsz;
      } else {
        eb += supp_exp[i];
      }
    }
    if (beta_zero && eb > 0) continue;
    Integer count = binomial(m - s, o.l - tsz);
    if (count == 0) continue;
    FieldElement term = o.alpha.pow(ea);
    if (eb > 0) term *= o.beta.pow(eb);
    total += term * Rational(count);
  }
  return total;
}

FieldElement lpattern_pattern_norm2(const LPatternOrbit& o, int m) {
  return o.alpha * o.alpha * Rational(o.l) +
         o.beta * o.beta * Rational(m - o.l);
}

// Point-set monomial sums dominate large verifications, so points are
// prepared once per degree: the weight factor (weight * radius^d, or
// weight / |dir|^d on the sphere) is folded in up front, and points whose
// coordinates are 0/+-1 integers take a sign-only path.
struct PreparedPoints {
  bool exact = true;  // false when some radius power is irrational
  struct SignPoint {
    std::vector<int8_t> dir;
    Rational wfactor;
  };
  struct RationalPoint {
    std::vector<Rational> dir;
    Rational wfactor;
  };
  struct GeneralPoint {
    const CubPoint* p;
    FieldElement wfactor;
  };
  std::vector<SignPoint> sign_points;
  std::vector<RationalPoint> rational_points;
  std::vector<GeneralPoint> general_points;
};

PreparedPoints prepare_points(const PointSet& ps, Domain domain, unsigned d) {
  PreparedPoints out;
  for (size_t i = 0; i < ps.pts.size(); ++i) {
    const CubPoint& p = ps.pts[i];
    FieldElement wf;
    bool wf_rational;
    if (domain == Domain::sphere) {
      FieldElement n2 = p.dir_norm2();
      if (n2.is_rational()) {
        wf = FieldElement(ps.weights[i] / qpow(n2.rational_part(), d / 2));
        wf_rational = true;
      } else {
        wf = FieldElement(ps.weights[i]) / n2.pow(d / 2);
        wf_rational = wf.is_rational();
      }
    } else {
      auto sp = p.scale.pow(d);
      if (!sp) {
        out.exact = false;
        return out;
      }
      wf = FieldElement(*sp * ps.weights[i]);
      wf_rational = true;
    }
    bool rational_dir = true, sign_dir = true;
    for (const auto& c : p.dir) {
      if (!c.is_rational()) {
        rational_dir = sign_dir = false;
        break;
      }
      const Rational& r = c.rational_part();
      if (!(r == 0 || r == 1 || r == -1)) sign_dir = false;
    }
    if (sign_dir && wf_rational) {
      PreparedPoints::SignPoint sp;
      sp.dir.reserve(p.dir.size());
      for (const auto& c : p.dir)
        sp.dir.push_back(
            static_cast<int8_t>(mpq_sgn(c.rational_part().get_mpq_t())));
      sp.wfactor = wf.rational_part();
      out.sign_points.push_back(std::move(sp));
    } else if (rational_dir && wf_rational) {
      PreparedPoints::RationalPoint rp;
      for (const auto& c : p.dir) rp.dir.push_back(c.rational_part());
      rp.wfactor = wf.rational_part();
      out.rational_points.push_back(std::move(rp));
    } else {
      out.general_points.push_back({&p, std::move(wf)});
    }
  }
  return out;
}

FieldElement prepared_sum(const PreparedPoints& pp, const Exponent& e) {
  Rational racc = 0;
  for (const auto& sp : pp.sign_points) {
    int sign = 1;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      int8_t c = sp.dir[i];
      if (c == 0) {
        sign = 0;
        break;
      }
      if (c < 0 && (e[i] & 1)) sign = -sign;
    }
    if (sign > 0)
      racc += sp.wfactor;
    else if (sign < 0)
      racc -= sp.wfactor;
  }
  for (const auto& rp : pp.rational_points) {
    Rational v = rp.wfactor;
    bool zero = false;
    for (size_t i = 0; i < e.size() && !zero; ++i) {
      if (e[i] == 0) continue;
      if (rp.dir[i] == 0) {
        zero = true;
        break;
      }
      v *= qpow(rp.dir[i], e[i]);
    }
    if (!zero) racc += v;
  }
  FieldElement acc(racc);
  for (const auto& gp : pp.general_points) {
    FieldElement v = dir_monomial(gp.p->dir, e);
    if (v.is_zero()) continue;
    acc += v * gp.wfactor;
  }
  return acc;
}

// Exact monomial sum for the orbit components; nullopt when inexact.
std::optional<FieldElement> exact_sum_orbit(const Component& c, int m,
                                            Domain domain, const Exponent& e) {
  unsigned d = moments::degree(e);
  if (const auto* lp = std::get_if<LPatternOrbit>(&c)) {
    if (domain == Domain::sphere) {
      FieldElement comb = lpattern_comb_sum(*lp, m, e);
      if (comb.is_zero()) return FieldElement(0);
      return comb * lp->point_weight /
             lpattern_pattern_norm2(*lp, m).pow(d / 2);
    }
    auto sp = lp->scale.pow(d);
    if (!sp) return std::nullopt;
    return lpattern_comb_sum(*lp, m, e) * (*sp * lp->point_weight);
  }
  const auto& so = std::get<SignOrbit>(c);
  for (size_t i = 0; i < e.size(); ++i)
    if (e[i] % 2 == 1 && !so.rep.dir[i].is_zero()) return FieldElement(0);
  FieldElement v = dir_monomial(so.rep.dir, e);
  if (v.is_zero()) return FieldElement(0);
  Integer orbit = Integer(1) << sign_orbit_wt(so);
  if (domain == Domain::sphere)
    return v * (so.point_weight * Rational(orbit)) /
           so.rep.dir_norm2().pow(d / 2);
  auto sp = so.rep.scale.pow(d);
  if (!sp) return std::nullopt;
  return v * (*sp * so.point_weight * Rational(orbit));
}

// Odd degree on the sphere: target is zero; sufficient exact criterion is
// that the raw directional sums vanish within every norm class.
std::optional<bool> exact_sphere_odd_is_zero(const CubatureFormula& f,
                                             const Exponent& e) {
  std::unordered_map<std::string, FieldElement> cls;
  for (const auto& c : f.comps) {
    if (const auto* ps = std::get_if<PointSet>(&c)) {
      for (size_t i = 0; i < ps->pts.size(); ++i) {
        FieldElement v = dir_monomial(ps->pts[i].dir, e);
        if (v.is_zero()) continue;
        cls[ps->pts[i].dir_norm2().str()] += v * ps->weights[i];
      }
    } else if (const auto* lp = std::get_if<LPatternOrbit>(&c)) {
      FieldElement comb = lpattern_comb_sum(*lp, f.m, e);
      if (comb.is_zero()) continue;
      cls[lpattern_pattern_norm2(*lp, f.m).str()] += comb * lp->point_weight;
    } else {
      const auto& so = std::get<SignOrbit>(c);
      bool zero = false;
      for (size_t i = 0; i < e.size(); ++i)
        if (e[i] % 2 == 1 && !so.rep.dir[i].is_zero()) zero = true;
      if (zero) continue;
      FieldElement v = dir_monomial(so.rep.dir, e);
      if (v.is_zero()) continue;
      Integer orbit = Integer(1) << sign_orbit_wt(so);
      cls[so.rep.dir_norm2().str()] += v * (so.point_weight * Rational(orbit));
    }
  }
  for (const auto& [k, v] : cls)
    if (!v.is_zero()) return std::nullopt;  // cannot certify exactly
  return true;
}

// Numeric fallback at 256 bits.
BigFloat numeric_sum(const CubatureFormula& f, const Exponent& e) {
  const int prec = 256;
  unsigned d = moments::degree(e);
  BigFloat acc(0L, prec);
  auto add_point = [&](const CubPoint& p, const Rational& w) {
    BigFloat v(w, prec);
    BigFloat prod(1L, prec);
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) prod *= p.dir[i].to_float(prec).pow_ui(e[i]);
    if (f.domain == Domain::sphere) {
      BigFloat n2 = p.dir_norm2().to_float(prec);
      BigFloat den = n2.pow_ui(d / 2);
      if (d % 2) {
        BigFloat rt(0L, prec);
        mpfr_sqrt(rt.raw(), n2.raw(), MPFR_RNDN);
        den = den * rt;
      }
      v = v * prod / den;
    } else {
      v = v * p.scale.to_float(prec).pow_ui(d) * prod;
    }
    acc += v;
  };
  for (const auto& c : f.comps) {
    if (const auto* ps = std::get_if<PointSet>(&c)) {
      for (size_t i = 0; i < ps->pts.size(); ++i)
        add_point(ps->pts[i], ps->weights[i]);
    } else if (const auto* lp = std::get_if<LPatternOrbit>(&c)) {
      for (const auto& p : pattern_orbit(f.m, lp->l, lp->alpha, lp->beta,
                                         PatternGroup::L, lp->scale))
        add_point(p, lp->point_weight);
    } else {
      const auto& so = std::get<SignOrbit>(c);
      std::vector<int> nz;
      for (size_t i = 0; i < so.rep.dir.size(); ++i)
        if (!so.rep.dir[i].is_zero()) nz.push_back(static_cast<int>(i));
      for (long mask = 0; mask < (1L << nz.size()); ++mask) {
        CubPoint p = so.rep;
        for (size_t j = 0; j < nz.size(); ++j)
          if (mask >> j & 1) p.dir[nz[j]] = -p.dir[nz[j]];
        add_point(p, so.point_weight);
      }
    }
  }
  return acc;
}

Rational domain_moment(Domain dom, int m, const Exponent& e) {
  switch (dom) {
    case Domain::sphere: return moments::sphere_moment(m, e);
    case Domain::gaussian: return moments::gaussian_moment(e);
    case Domain::orthant: return moments::orthant_moment(e);
  }
  throw std::logic_error("bad domain");
}

// Check every monomial of one degree, preparing point sets once.
void check_degree(const CubatureFormula& f, int d, VerificationReport& rep) {
  std::vector<PreparedPoints> prepared;
  bool prepared_exact = true;
  for (const auto& c : f.comps)
    if (const auto* ps = std::get_if<PointSet>(&c)) {
      prepared.push_back(prepare_points(*ps, f.domain, d));
      prepared_exact = prepared_exact && prepared.back().exact;
    }
  bool sphere_odd = f.domain == Domain::sphere && d % 2 == 1;
  for (const auto& e : moments::exponents_of_degree(f.m, d)) {
    Rational target = domain_moment(f.domain, f.m, e);
    rep.monomials_checked++;
    std::optional<FieldElement> got;
    if (sphere_odd) {
      auto z = exact_sphere_odd_is_zero(f, e);
      if (z) got = FieldElement(0);
    } else if (prepared_exact) {
      FieldElement acc(0);
      bool ok = true;
      size_t pi = 0;
      for (const auto& c : f.comps) {
        if (std::holds_alternative<PointSet>(c)) {
          acc += prepared_sum(prepared[pi++], e);
          continue;
        }
        auto v = exact_sum_orbit(c, f.m, f.domain, e);
        if (!v) {
          ok = false;
          break;
        }
        acc += *v;
      }
      if (ok) got = acc;
    }
    if (got) {
      if (!(*got == FieldElement(target))) {
        FailedMonomial fm;
        fm.exponent = e;
        fm.got = got->str();
        fm.want = target.get_str();
        rep.failures.push_back(std::move(fm));
      }
      continue;
    }
    rep.exact = false;
    BigFloat num = numeric_sum(f, e);
    BigFloat diff = (num - BigFloat(target, 256)).abs();
    if (!diff.abs_less_pow2(-128)) {
      FailedMonomial fm;
      fm.exponent = e;
      fm.got = num.str(25);
      fm.want = target.get_str();
      rep.failures.push_back(std::move(fm));
    }
  }
}

}  // namespace

VerificationReport verify_index(const CubatureFormula& f, int q) {
  if (q < 1) throw std::domain_error("verify_index: q >= 1");
  for (const auto& c : f.comps)
    if (const auto* ps = std::get_if<PointSet>(&c))
      for (const auto& p : ps->pts)
        if (static_cast<int>(p.dir.size()) != f.m)
          throw std::domain_error("point dimension mismatch");
  VerificationReport rep;
  check_degree(f, q, rep);
  rep.valid = rep.failures.empty();
  return rep;
}

VerificationReport verify_degree(const CubatureFormula& f, int t) {
  if (t < 1) throw std::domain_error("verify_degree: t >= 1");
  VerificationReport rep;
  for (int d = 0; d <= t; ++d) {
    bool skip_odd = f.centrally_symmetric && f.domain != Domain::orthant;
    if (d % 2 == 1 && skip_odd) continue;
    check_degree(f, d, rep);
  }
  rep.valid = rep.failures.empty();
  return rep;
}

std::string VerificationReport::summary() const {
  std::ostringstream out;
  out << (valid ? "valid" : "INVALID") << " (" << monomials_checked
      << " monomials, " << (exact ? "exact" : "float-checked") << ")";
  if (!failures.empty()) {
    out << "; first failure at monomial (";
    for (size_t i = 0; i < failures[0].exponent.size(); ++i)
      out << (i ? "," : "") << failures[0].exponent[i];
    out << "): got " << failures[0].got << ", want " << failures[0].want;
  }
  return out.str();
}

// --- materialization ----------------------------------------------------------

std::vector<CubPoint> pattern_orbit(int m, int l, const FieldElement& alpha,
                                    const FieldElement& beta, PatternGroup g,
                                    const RadialScale& scale) {
  if (g == PatternGroup::L || g == PatternGroup::B) {
    if (l < 1 || l > m) throw std::domain_error("pattern_orbit: 1 <= l <= m");
  }
  std::vector<CubPoint> out;
  auto emit_placements = [&](auto&& per_point) {
    std::vector<int> idx(l);
    for (int i = 0; i < l; ++i) idx[i] = i;
    while (true) {
      CubPoint p;
      p.scale = scale;
      p.dir.assign(m, beta);
      for (int i : idx) p.dir[i] = alpha;
      per_point(p);
      int i = l - 1;
      while (i >= 0 && idx[i] == m - l + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < l; ++j) idx[j] = idx[j - 1] + 1;
    }
  };
  auto emit_signs = [&](const CubPoint& p, auto&& per_point) {
    std::vector<int> nz;
    for (int i = 0; i < m; ++i)
      if (!p.dir[i].is_zero()) nz.push_back(i);
    for (long mask = 0; mask < (1L << nz.size()); ++mask) {
      CubPoint q = p;
      for (size_t j = 0; j < nz.size(); ++j)
        if (mask >> j & 1) q.dir[nz[j]] = -q.dir[nz[j]];
      per_point(q);
    }
  };
  if (g == PatternGroup::L) {
    emit_placements([&](const CubPoint& p) { out.push_back(p); });
  } else if (g == PatternGroup::signs) {
    CubPoint p;
    p.scale = scale;
    p.dir.assign(m, beta);
    for (int i = 0; i < l; ++i) p.dir[i] = alpha;
    emit_signs(p, [&](const CubPoint& q) { out.push_back(q); });
  } else {
    std::map<std::string, CubPoint> seen;
    emit_placements([&](const CubPoint& p) {
      emit_signs(p, [&](const CubPoint& q) {
        seen.try_emplace(point_key(q), q);
      });
    });
    for (auto& [k, p] : seen) out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::pair<CubPoint, Rational>> materialize(
    const CubatureFormula& f, long cap) {
  if (f.point_count() > cap)
    throw std::runtime_error("materialize: point cap exceeded");
  std::vector<std::pair<CubPoint, Rational>> out;
  for (const auto& c : f.comps) {
    if (const auto* ps = std::get_if<PointSet>(&c)) {
      for (size_t i = 0; i < ps->pts.size(); ++i)
        out.emplace_back(ps->pts[i], ps->weights[i]);
    } else if (const auto* lp = std::get_if<LPatternOrbit>(&c)) {
      for (auto& p : pattern_orbit(f.m, lp->l, lp->alpha, lp->beta,
                                   PatternGroup::L, lp->scale))
        out.emplace_back(std::move(p), lp->point_weight);
    } else {
      const auto& so = std::get<SignOrbit>(c);
      std::vector<int> nz;
      for (size_t i = 0; i < so.rep.dir.size(); ++i)
        if (!so.rep.dir[i].is_zero()) nz.push_back(static_cast<int>(i));
      for (long mask = 0; mask < (1L << nz.size()); ++mask) {
        CubPoint p = so.rep;
        for (size_t j = 0; j < nz.size(); ++j)
          if (mask >> j & 1) p.dir[nz[j]] = -p.dir[nz[j]];
        out.emplace_back(std::move(p), so.point_weight);
      }
    }
  }
  return out;
}

CubatureFormula materialized(const CubatureFormula& f, long cap) {
  CubatureFormula out = f;
  out.comps.clear();
  PointSet ps;
  for (auto& [p, w] : materialize(f, cap)) {
    ps.pts.push_back(std::move(p));
    ps.weights.push_back(w);
  }
  out.comps.push_back(std::move(ps));
  return out;
}

CubPoint negated(const CubPoint& p) {
  CubPoint q = p;
  for (auto& d : q.dir) d = -d;
  return q;
}

std::string point_key(const CubPoint& p) {
  // Fold rational direction content into the scale so equivalent
  // (scale, direction) splits compare equal.
  CubPoint c = p;
  bool all_rational = true;
  for (const auto& d : c.dir) all_rational = all_rational && d.is_rational();
  if (all_rational) {
    Integer gnum = 0, glden = 1;
    for (const auto& d : c.dir) {
      const Rational& r = d.rational_part();
      if (r == 0) continue;
      Integer num = r.get_num();
      mpz_abs(num.get_mpz_t(), num.get_mpz_t());
      mpz_gcd(gnum.get_mpz_t(), gnum.get_mpz_t(), num.get_mpz_t());
      mpz_lcm(glden.get_mpz_t(), glden.get_mpz_t(), r.get_den().get_mpz_t());
    }
    if (gnum != 0 && !(gnum == 1 && glden == 1)) {
      Rational content = ratio(gnum, glden);
      Rational inv = 1 / content;
      for (auto& d : c.dir) d = d * inv;
      c.scale.s *= qpow(content, static_cast<long>(c.scale.q));
    }
  }
  RadialScale rs = c.scale.reduced();
  std::ostringstream out;
  out << rs.s.get_str() << "^(1/" << rs.q << ")";
  for (const auto& d : c.dir) out << "|" << d.str();
  return out.str();
}

CubatureFormula dedup(const CubatureFormula& f) {
  auto pts = materialize(f);
  std::map<std::string, size_t> index;
  PointSet ps;
  for (auto& [p, w] : pts) {
    std::string key = point_key(p);
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(std::move(key), ps.pts.size());
      ps.pts.push_back(std::move(p));
      ps.weights.push_back(w);
    } else {
      ps.weights[it->second] += w;
    }
  }
  PointSet kept;
  for (size_t i = 0; i < ps.pts.size(); ++i) {
    if (ps.weights[i] == 0) continue;
    kept.pts.push_back(std::move(ps.pts[i]));
    kept.weights.push_back(ps.weights[i]);
  }
  CubatureFormula out = f;
  out.comps.clear();
  out.comps.push_back(std::move(kept));
  return out;
}

// --- transforms ----------------------------------------------------------------

CubatureFormula to_sphere(const CubatureFormula& f, int q) {
  if (f.domain != Domain::gaussian)
    throw std::domain_error("to_sphere expects a gaussian-domain formula");
  if (q % 2 != 0) throw std::domain_error("to_sphere: q must be even");
  Rational rf = moments::radial_factor(moments::RadialWeight::gaussian, f.m, q);
  CubatureFormula out;
  out.domain = Domain::sphere;
  out.m = f.m;
  out.stated_index = q;
  out.centrally_symmetric = f.centrally_symmetric;
  out.notes = f.notes;
  out.trace = f.trace;
  PointSet ps;
  for (auto& [p, w] : materialize(f)) {
    if (p.dir_is_zero()) throw std::domain_error("to_sphere: zero point");
    auto sq = p.scale.pow(q);
    if (!sq) throw std::domain_error("to_sphere: radius^q not rational");
    FieldElement normq = p.dir_norm2().pow(q / 2) * *sq;  // |x|^q
    FieldElement wf = normq * (w / rf);
    if (!wf.is_rational())
      throw std::domain_error("to_sphere: weight leaves the rationals");
    CubPoint np;
    np.scale = RadialScale{1, 1};
    np.dir = p.dir;
    ps.pts.push_back(std::move(np));
    ps.weights.push_back(wf.rational_part());
  }
  out.comps.push_back(std::move(ps));
  out.step("projected to the unit sphere at index " + std::to_string(q));
  return dedup(out);
}

namespace {

// Sign-canonical representative: first nonzero coordinate positive.
bool dir_sign_canonical(const CubPoint& p) {
  for (const auto& d : p.dir) {
    if (d.is_zero()) continue;
    return d.sign() > 0;
  }
  return true;
}

}  // namespace

CubatureFormula halve_antipodal(const CubatureFormula& f) {
  auto pts = materialize(f);
  std::map<std::string, std::pair<CubPoint, Rational>> pos, neg;
  for (auto& [p, w] : pts) {
    if (p.dir_is_zero())
      throw std::domain_error("halve_antipodal: zero point present");
    auto& side = dir_sign_canonical(p) ? pos : neg;
    std::string key = point_key(dir_sign_canonical(p) ? p : negated(p));
    auto it = side.find(key);
    if (it == side.end())
      side.emplace(std::move(key), std::make_pair(p, w));
    else
      it->second.second += w;
  }
  if (pos.size() != neg.size())
    throw std::domain_error("halve_antipodal: point set is not antipodal");
  PointSet ps;
  for (auto& [key, pw] : pos) {
    auto it = neg.find(key);
    if (it == neg.end())
      throw std::domain_error("halve_antipodal: unmatched point " + key);
    if (it->second.second != pw.second)
      throw std::domain_error("halve_antipodal: weights differ within a pair");
    ps.pts.push_back(pw.first);
    ps.weights.push_back(pw.second * 2);
  }
  CubatureFormula out = f;
  out.comps.clear();
  out.comps.push_back(std::move(ps));
  out.centrally_symmetric = false;
  out.step("antipodal halving");
  return out;
}

CubatureFormula double_antipodal(const CubatureFormula& f) {
  auto pts = materialize(f);
  PointSet ps;
  for (auto& [p, w] : pts) {
    ps.pts.push_back(p);
    ps.weights.push_back(w / 2);
    ps.pts.push_back(negated(p));
    ps.weights.push_back(w / 2);
  }
  CubatureFormula out = f;
  out.comps.clear();
  out.comps.push_back(std::move(ps));
  out.centrally_symmetric = true;
  out.step("antipodal doubling");
  return out;
}

CubatureFormula sqrt_points(const CubatureFormula& f) {
  if (f.domain != Domain::orthant)
    throw std::domain_error("sqrt_points expects an orthant-domain formula");
  CubatureFormula out;
  out.domain = Domain::gaussian;
  out.m = f.m;
  out.notes = f.notes;
  out.trace = f.trace;
  if (f.stated_index) out.stated_index = *f.stated_index * 2;
  if (f.stated_degree) out.stated_degree = *f.stated_degree * 2;
  for (auto& [p, w] : materialize(f)) {
    SignOrbit so;
    so.rep.scale = RadialScale{p.scale.s, p.scale.q * 2}.reduced();
    so.rep.dir.reserve(p.dir.size());
    int wt = 0;
    for (const auto& dcoord : p.dir) {
      if (dcoord.is_zero()) {
        so.rep.dir.emplace_back(0);
        continue;
      }
      if (dcoord.sign() < 0)
        throw std::domain_error("sqrt_points: negative coordinate");
      auto r = dcoord.sqrt();
      if (!r)
        throw std::domain_error(
            "sqrt_points: coordinate has no square root in the field");
      so.rep.dir.push_back(std::move(*r));
      ++wt;
    }
    if (wt == 0) throw std::domain_error("sqrt_points: zero point");
    so.point_weight = w / Rational(Integer(1) << wt);
    out.comps.emplace_back(std::move(so));
  }
  out.centrally_symmetric = true;
  out.step("lifted to sign orbits of coordinate square roots");
  return out;
}

CubatureFormula square_points(const CubatureFormula& f) {
  if (f.domain != Domain::gaussian)
    throw std::domain_error("square_points expects a gaussian-domain formula");
  CubatureFormula out;
  out.domain = Domain::orthant;
  out.m = f.m;
  out.notes = f.notes;
  out.trace = f.trace;
  if (f.stated_index) {
    if (*f.stated_index % 2) throw std::domain_error("odd stated index");
    out.stated_index = *f.stated_index / 2;
  }
  if (f.stated_degree) out.stated_degree = *f.stated_degree / 2;
  PointSet ps;
  for (const auto& c : f.comps) {
    const auto* so = std::get_if<SignOrbit>(&c);
    if (!so)
      throw std::domain_error(
          "square_points: formula lacks sign-orbit annotations");
    CubPoint p;
    if (so->rep.scale.q % 2 == 0)
      p.scale = RadialScale{so->rep.scale.s, so->rep.scale.q / 2}.reduced();
    else
      p.scale =
          RadialScale{so->rep.scale.s * so->rep.scale.s, so->rep.scale.q}
              .reduced();
    int wt = 0;
    for (const auto& dcoord : so->rep.dir) {
      p.dir.push_back(dcoord * dcoord);
      if (!dcoord.is_zero()) ++wt;
    }
    ps.pts.push_back(std::move(p));
    ps.weights.push_back(so->point_weight * Rational(Integer(1) << wt));
  }
  out.comps.push_back(std::move(ps));
  out.step("collapsed sign orbits onto coordinate squares");
  return out;
}

// --- catalog -------------------------------------------------------------------

Index3Radii solve_index3_radii(int m, const std::vector<int>& ks,
                               const Rational& w_all, const Rational& w_axis,
                               const Rational& w_block) {
  // Moment system for an orthant index-3 host made of an all-coordinates
  // orbit, an axis orbit, and a joined family of block orbits:
  //   u + B*P3 = 1,  u + B*P2 = 3,  u + v + B*P1 = 15
  // with u, v, B the products weight * radius^3 and Pj the block counts
  // through a fixed j-subset.
  Integer p1 = 0, p2 = 0, p3 = 0;
  for (int k : ks) {
    p1 += binomial(m - 1, k - 1);
    p2 += binomial(m - 2, k - 2);
    p3 += binomial(m - 3, k - 3);
  }
  if (p2 == p3) throw std::domain_error("degenerate block pattern");
  Rational bprod = ratio(Integer(2), p2 - p3);
  Rational u = 1 - bprod * Rational(p3);
  Rational v = 15 - u - bprod * Rational(p1);
  Index3Radii r;
  r.all_cubed = u / w_all;
  r.axis_cubed = v / w_axis;
  r.block_cubed = bprod / w_block;
  if (r.all_cubed <= 0 || r.axis_cubed <= 0 || r.block_cubed <= 0)
    throw std::logic_error("index-3 radius system produced a nonpositive cube");
  return r;
}

std::vector<std::string> catalog_names() {
  return {"lem42i", "lem42ii", "lem62i", "lem62ii", "ex45", "ex46"};
}

CubatureFormula catalog_formula(const std::string& name, int m) {
  CubatureFormula f;
  f.domain = Domain::orthant;
  f.m = m;
  auto lp = [&](int l, const Rational& cube_or_sq, unsigned root,
                const Rational& w) {
    LPatternOrbit o;
    o.l = l;
    o.alpha = 1;
    o.beta = 0;
    o.scale = RadialScale{cube_or_sq, root}.reduced();
    o.point_weight = w;
    f.comps.emplace_back(std::move(o));
  };
  if (name == "lem42i") {
    if (m < 3) throw std::domain_error("lem42i needs m >= 3");
    f.stated_index = 2;
    lp(1, Rational(4 * m), 2, ratio(1, 2 * m));
    lp(m, Rational(2), 2, ratio(1, 2));
  } else if (name == "lem42ii") {
    if (m % 3 != 1 || m < 4) throw std::domain_error("lem42ii needs m = 1 mod 3");
    f.stated_index = 2;
    int k = (m + 2) / 3;
    lp(k, ratio(9 * m, m + 2), 2, ratio(Integer(1), binomial(m, k)));
  } else if (name == "lem62i") {
    if (m % 6 != 2 || m < 8)
      throw std::domain_error("lem62i needs m = 2 mod 6, m >= 8");
    f.stated_index = 3;
    int k = (m + 10) / 6;
    auto radii = solve_index3_radii(m, {k}, ratio(1, 3), ratio(1, 3 * m),
                                    ratio(Integer(1), 3 * binomial(m, k)));
    lp(m, radii.all_cubed, 3, ratio(1, 3));
    lp(1, radii.axis_cubed, 3, ratio(1, 3 * m));
    lp(k, radii.block_cubed, 3, ratio(Integer(1), 3 * binomial(m, k)));
    Rational printed_all = ratio(12, 5);
    Rational printed_block =
        ratio(Integer(1296) * m * (m - 1), Integer(m + 4) * (m + 10));
    if (radii.all_cubed != printed_all)
      f.note("all-coordinates radius^3 corrected to " +
             radii.all_cubed.get_str() + " (source prints " +
             printed_all.get_str() + "); derived from the index-3 moment system");
    if (radii.block_cubed != printed_block)
      f.note("block-orbit radius^3 corrected to " +
             radii.block_cubed.get_str() + " (source prints " +
             printed_block.get_str() + "); derived from the index-3 moment system");
  } else if (name == "lem62ii") {
    if (m % 6 != 1 || m < 7)
      throw std::domain_error("lem62ii needs m = 1 mod 6, m >= 7");
    f.stated_index = 3;
    int k1 = (m + 11) / 6, k2 = (m + 5) / 6;
    Rational wb = ratio(Integer(1), 3 * binomial(m + 1, k1));
    auto radii =
        solve_index3_radii(m, {k1, k2}, ratio(1, 3), ratio(1, 3 * m), wb);
    lp(m, radii.all_cubed, 3, ratio(1, 3));
    lp(1, radii.axis_cubed, 3, ratio(1, 3 * m));
    lp(k1, radii.block_cubed, 3, wb);
    lp(k2, radii.block_cubed, 3, wb);
    Rational printed_block =
        ratio(Integer(1296) * m * (m + 1), Integer(m + 5) * (m + 11));
    f.note("axis radius^3 derived as " + radii.axis_cubed.get_str() +
           " (source prints the weight 1/(3m) in the radius slot); solved from "
           "the index-3 moment system");
    if (radii.block_cubed != printed_block)
      f.note("block-orbit radius^3 corrected to " +
             radii.block_cubed.get_str() + " (source prints " +
             printed_block.get_str() + "); derived from the index-3 moment system");
  } else if (name == "ex45") {
    if (m != 7) throw std::domain_error("ex45 is the m = 7 host");
    f.stated_index = 3;
    lp(4, Rational(28), 3, ratio(1, 140));
    lp(3, Rational(28), 3, ratio(1, 140));
    lp(1, Rational(112), 3, ratio(1, 14));
  } else if (name == "ex46") {
    if (m != 9) throw std::domain_error("ex46 is the m = 9 host");
    f.stated_index = 3;
    lp(9, Rational(1), 3, ratio(1, 3));
    lp(4, Rational(60), 3, ratio(1, 630));
    lp(3, Rational(60), 3, ratio(1, 630));
    lp(1, Rational(180), 3, ratio(1, 27));
  } else {
    throw std::domain_error("unknown catalog formula: " + name);
  }
  f.step("catalog host " + name + " (m=" + std::to_string(m) + ")");
  return f;
}

// --- file io --------------------------------------------------------------------

CubatureFormula load_formula(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open formula file: " + path);
  CubatureFormula f;
  std::string line;
  PointSet ps;
  bool header_done = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!header_done) {
      std::string key;
      ls >> key;
      if (key == "domain") {
        std::string v;
        ls >> v;
        if (v == "sphere")
          f.domain = Domain::sphere;
        else if (v == "gaussian")
          f.domain = Domain::gaussian;
        else if (v == "orthant")
          f.domain = Domain::orthant;
        else
          throw std::runtime_error("bad domain: " + v);
        continue;
      }
      if (key == "m") {
        ls >> f.m;
        continue;
      }
      if (key == "index") {
        int q;
        ls >> q;
        f.stated_index = q;
        continue;
      }
      if (key == "degree") {
        int t;
        ls >> t;
        f.stated_degree = t;
        continue;
      }
      if (key == "centrally_symmetric") {
        int v;
        ls >> v;
        f.centrally_symmetric = v != 0;
        continue;
      }
      header_done = true;
    }
    // point line: s q | fe, fe, ... | weight
    auto bar1 = line.find('|');
    auto bar2 = line.rfind('|');
    if (bar1 == std::string::npos || bar2 == bar1)
      throw std::runtime_error("bad point line: " + line);
    std::istringstream head(line.substr(0, bar1));
    CubPoint p;
    std::string stok;
    unsigned q;
    head >> stok >> q;
    auto sval = parse_rational(stok);
    if (!sval || q < 1) throw std::runtime_error("bad scale: " + line);
    p.scale = RadialScale{*sval, q};
    std::string mid = line.substr(bar1 + 1, bar2 - bar1 - 1);
    std::istringstream ms(mid);
    std::string coord;
    while (std::getline(ms, coord, ',')) {
      auto fe = FieldElement::parse(coord);
      if (!fe) throw std::runtime_error("bad coordinate: " + coord);
      p.dir.push_back(std::move(*fe));
    }
    if (static_cast<int>(p.dir.size()) != f.m)
      throw std::runtime_error("wrong coordinate count: " + line);
    std::string wtok = line.substr(bar2 + 1);
    size_t a = wtok.find_first_not_of(" \t");
    size_t b = wtok.find_last_not_of(" \t\r");
    auto w = parse_rational(wtok.substr(a, b - a + 1));
    if (!w) throw std::runtime_error("bad weight: " + line);
    ps.pts.push_back(std::move(p));
    ps.weights.push_back(*w);
  }
  f.comps.push_back(std::move(ps));
  return f;
}

void save_formula(const std::string& path, const CubatureFormula& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write formula file: " + path);
  out << "domain " << domain_name(f.domain) << "\n";
  out << "m " << f.m << "\n";
  if (f.stated_index) out << "index " << *f.stated_index << "\n";
  if (f.stated_degree) out << "degree " << *f.stated_degree << "\n";
  if (f.centrally_symmetric) out << "centrally_symmetric 1\n";
  for (const auto& [p, w] : materialize(f)) {
    out << p.scale.s.get_str() << " " << p.scale.q << " | ";
    for (size_t i = 0; i < p.dir.size(); ++i)
      out << (i ? ", " : "") << p.dir[i].str();
    out << " | " << w.get_str() << "\n";
  }
}

}  // namespace cubforge::cubature
