#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "cubforge/reflect.hpp"

namespace cubforge::reflect {

namespace {

// sum over distinct monomials with the exponent pattern: choose an unordered
// set of positions for each distinct exponent value.
FieldElement eval_sym_term(const SymTerm& term,
                           const std::vector<FieldElement>& x) {
  std::map<unsigned, int> groups;  // exponent value -> multiplicity
  for (unsigned p : term.pattern) {
    if (p == 0) throw std::domain_error("zero exponent in sym pattern");
    groups[p]++;
  }
  std::vector<std::pair<unsigned, int>> gl(groups.begin(), groups.end());
  int m = static_cast<int>(x.size());
  std::vector<char> used(m, 0);
  FieldElement total(0);
  // precompute powers on demand
  std::vector<std::map<unsigned, FieldElement>> powers(m);
  auto x_pow = [&](int i, unsigned e) -> const FieldElement& {
    auto it = powers[i].find(e);
    if (it == powers[i].end())
      it = powers[i].emplace(e, x[i].pow(e)).first;
    return it->second;
  };
  std::function<void(size_t, const FieldElement&)> rec_group =
      [&](size_t gi, const FieldElement& acc) {
        if (gi == gl.size()) {
          total += acc;
          return;
        }
        auto [expv, mult] = gl[gi];
        // choose `mult` unused positions in increasing order
        std::vector<int> chosen;
        std::function<void(int, int, const FieldElement&)> rec_pos =
            [&](int start, int left, const FieldElement& acc2) {
              if (left == 0) {
                rec_group(gi + 1, acc2);
                return;
              }
              for (int i = start; i <= m - left; ++i) {
                if (used[i]) continue;
                used[i] = 1;
                rec_pos(i + 1, left - 1, acc2 * x_pow(i, expv));
                used[i] = 0;
              }
            };
        rec_pos(0, mult, acc);
      };
  rec_group(0, FieldElement(1));
  return total * term.coeff;
}

FieldElement eval_sym_poly(const SymPoly& poly,
                           const std::vector<FieldElement>& x) {
  FieldElement acc(0);
  for (const auto& t : poly.terms) acc += eval_sym_term(t, x);
  return acc;
}

// Rational-only zonal evaluation; valid when x1, x2 and |x|^2 are rational.
Rational eval_zonal_seed_rational(const ZonalPoly& poly, const Rational& x1,
                                  const Rational& x2, const Rational& norm2) {
  Rational p = norm2 - x1 * x1;
  unsigned max1 = 0, max2 = 0, maxp = 0;
  for (const auto& t : poly.terms) {
    max1 = std::max(max1, t.x1_pow);
    max2 = std::max(max2, t.x2_pow);
    maxp = std::max(maxp, t.p_pow);
  }
  static thread_local std::vector<Rational> p1, p2, pp;
  p1.assign(max1 + 1, 1);
  p2.assign(max2 + 1, 1);
  pp.assign(maxp + 1, 1);
  for (unsigned i = 1; i <= max1; ++i) p1[i] = p1[i - 1] * x1;
  for (unsigned i = 1; i <= max2; ++i) p2[i] = p2[i - 1] * x2;
  for (unsigned i = 1; i <= maxp; ++i) pp[i] = pp[i - 1] * p;
  Rational acc = 0;
  for (const auto& t : poly.terms) {
    Rational v = t.coeff * p1[t.x1_pow];
    if (t.x2_pow) v *= p2[t.x2_pow];
    if (t.p_pow) v *= pp[t.p_pow];
    acc += v;
  }
  return acc;
}

FieldElement eval_zonal_seed(const ZonalPoly& poly,
                             const std::vector<FieldElement>& x,
                             const FieldElement& norm2) {
  if (norm2.is_rational() && x[0].is_rational() &&
      (x.size() < 2 || x[1].is_rational())) {
    return FieldElement(eval_zonal_seed_rational(
        poly, x[0].rational_part(),
        x.size() > 1 ? x[1].rational_part() : Rational(0),
        norm2.rational_part()));
  }
  // p = |x|^2 - x1^2
  FieldElement x1 = x[0];
  FieldElement x2 = x.size() > 1 ? x[1] : FieldElement(0);
  FieldElement p = norm2 - x1 * x1;
  unsigned max1 = 0, max2 = 0, maxp = 0;
  for (const auto& t : poly.terms) {
    max1 = std::max(max1, t.x1_pow);
    max2 = std::max(max2, t.x2_pow);
    maxp = std::max(maxp, t.p_pow);
  }
  std::vector<FieldElement> p1(max1 + 1, FieldElement(1)),
      p2(max2 + 1, FieldElement(1)), pp(maxp + 1, FieldElement(1));
  for (unsigned i = 1; i <= max1; ++i) p1[i] = p1[i - 1] * x1;
  for (unsigned i = 1; i <= max2; ++i) p2[i] = p2[i - 1] * x2;
  for (unsigned i = 1; i <= maxp; ++i) pp[i] = pp[i - 1] * p;
  FieldElement acc(0);
  for (const auto& t : poly.terms) {
    FieldElement v = p1[t.x1_pow];
    if (t.x2_pow) v *= p2[t.x2_pow];
    if (t.p_pow) v *= pp[t.p_pow];
    acc += v * t.coeff;
  }
  return acc;
}

FieldElement vec_norm2(const std::vector<FieldElement>& x) {
  FieldElement n;
  for (const auto& c : x) n += c * c;
  return n;
}

}  // namespace

std::vector<long> molien_dims(const ReflectionGroupData& g, int up_to) {
  if (up_to > 64) throw std::domain_error("molien_dims: up_to <= 64");
  std::vector<long> coeff(up_to + 1, 0);
  coeff[0] = 1;
  for (size_t i = 1; i < g.exponents.size(); ++i) {
    int step = 1 + g.exponents[i];
    // multiply by 1/(1 - t^step)
    for (int d = step; d <= up_to; ++d) coeff[d] += coeff[d - step];
  }
  return coeff;
}

FieldElement eval_invariant(const InvariantSpec& spec,
                            const ReflectionGroupData& g,
                            const std::vector<FieldElement>& x,
                            const OrbitOptions& opt) {
  if (static_cast<int>(x.size()) != g.dim)
    throw std::domain_error("eval_invariant: dimension mismatch");
  if (spec.kind == InvariantSpec::Kind::sym) return eval_sym_poly(spec.sym, x);
  FieldElement norm2 = vec_norm2(x);
  FieldElement sum(0);
  long size = orbit_scan(
      g, x,
      [&](const std::vector<FieldElement>& y) {
        if (spec.kind == InvariantSpec::Kind::zonal_orbit_sum)
          sum += eval_zonal_seed(spec.zonal, y, norm2);
        else
          sum += eval_sym_poly(spec.sym, y);
      },
      opt);
  Integer stab = g.group_order / size;
  return sum * Rational(stab);
}

UVector u_vector(const ReflectionGroupData& g, const InvariantSpec& spec) {
  UVector u;
  u.name = spec.name;
  u.degree = spec.degree;
  for (size_t k = 0; k < g.corners.size(); ++k) {
    FieldElement raw = eval_invariant(spec, g, g.corners[k]);
    const FieldElement& n2 = g.corner_norm2[k];
    FieldElement down;
    if (spec.degree % 2 == 0) {
      down = n2.pow(spec.degree / 2);
    } else {
      auto root = n2.sqrt();
      if (!root)
        throw std::domain_error(
            "odd-degree normalization needs |v| in the field");
      down = n2.pow(spec.degree / 2) * *root;
    }
    u.values.push_back(raw / down);
  }
  return u;
}

const std::vector<UVector>& cached_u_vectors(const ReflectionGroupData& g) {
  static std::mutex mu;
  static std::map<std::string, std::vector<UVector>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(g.label);
  if (it != cache.end()) return it->second;
  std::vector<UVector> us;
  // Evaluate all zonal invariants of one corner orbit in a single scan.
  std::vector<const InvariantSpec*> zonal, direct;
  for (const auto& spec : g.invariants)
    (spec.kind == InvariantSpec::Kind::sym ? direct : zonal).push_back(&spec);
  for (const auto* spec : direct) us.push_back(u_vector(g, *spec));
  if (!zonal.empty()) {
    std::vector<UVector> zus(zonal.size());
    for (size_t zi = 0; zi < zonal.size(); ++zi) {
      zus[zi].name = zonal[zi]->name;
      zus[zi].degree = zonal[zi]->degree;
    }
    for (size_t k = 0; k < g.corners.size(); ++k) {
      FieldElement norm2 = g.corner_norm2[k];
      std::vector<FieldElement> sums(zonal.size(), FieldElement(0));
      long size = orbit_scan(g, g.corners[k],
                             [&](const std::vector<FieldElement>& y) {
                               for (size_t zi = 0; zi < zonal.size(); ++zi) {
                                 const auto& sp = *zonal[zi];
                                 if (sp.kind ==
                                     InvariantSpec::Kind::zonal_orbit_sum)
                                   sums[zi] +=
                                       eval_zonal_seed(sp.zonal, y, norm2);
                                 else
                                   sums[zi] += eval_sym_poly(sp.sym, y);
                               }
                             });
      Integer stab = g.group_order / size;
      for (size_t zi = 0; zi < zonal.size(); ++zi) {
        const auto& sp = *zonal[zi];
        FieldElement raw = sums[zi] * Rational(stab);
        FieldElement down;
        if (sp.degree % 2 == 0) {
          down = norm2.pow(sp.degree / 2);
        } else {
          auto root = norm2.sqrt();
          if (!root)
            throw std::domain_error(
                "odd-degree normalization needs |v| in the field");
          down = norm2.pow(sp.degree / 2) * *root;
        }
        zus[zi].values.push_back(raw / down);
      }
    }
    for (auto& u : zus) us.push_back(std::move(u));
  }
  std::sort(us.begin(), us.end(), [](const UVector& a, const UVector& b) {
    return a.degree != b.degree ? a.degree < b.degree : a.name < b.name;
  });
  return cache.emplace(g.label, std::move(us)).first->second;
}

namespace {

// Dense multivariate polynomial as exponent -> coefficient.
using Dense = std::map<std::vector<unsigned>, FieldElement>;

Dense expand_sym(const SymPoly& poly, int m) {
  Dense out;
  for (const auto& term : poly.terms) {
    std::map<unsigned, int> groups;
    for (unsigned p : term.pattern) groups[p]++;
    std::vector<std::pair<unsigned, int>> gl(groups.begin(), groups.end());
    std::vector<unsigned> expo(m, 0);
    std::vector<char> used(m, 0);
    std::function<void(size_t)> rec_group = [&](size_t gi) {
      if (gi == gl.size()) {
        out[expo] += term.coeff;
        return;
      }
      auto [expv, mult] = gl[gi];
      std::function<void(int, int)> rec_pos = [&](int start, int left) {
        if (left == 0) {
          rec_group(gi + 1);
          return;
        }
        for (int i = start; i <= m - left; ++i) {
          if (used[i]) continue;
          used[i] = 1;
          expo[i] = expv;
          rec_pos(i + 1, left - 1);
          expo[i] = 0;
          used[i] = 0;
        }
      };
      rec_pos(0, mult);
    };
    rec_group(0);
  }
  return out;
}

bool dense_laplacian_zero(const Dense& f) {
  Dense lap;
  for (const auto& [e, c] : f) {
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 2) continue;
      std::vector<unsigned> d = e;
      d[i] -= 2;
      lap[d] += c * Rational(static_cast<long>(e[i]) *
                             static_cast<long>(e[i] - 1));
    }
  }
  for (const auto& [e, c] : lap)
    if (!c.is_zero()) return false;
  return true;
}

// Laplacian of x1^a x2^c p^b with p = x2^2 + ... + x_{k+1}^2 (k terms):
//   a(a-1) (a-2,c,b) + c(c-1) (a,c-2,b) + 2b(2c + k + 2b - 2) (a,c,b-1).
bool zonal_laplacian_zero(const ZonalPoly& poly, int k) {
  std::map<std::tuple<unsigned, unsigned, unsigned>, Rational> lap;
  for (const auto& t : poly.terms) {
    long a = t.x1_pow, c = t.x2_pow, b = t.p_pow;
    if (a >= 2)
      lap[{t.x1_pow - 2, t.x2_pow, t.p_pow}] += t.coeff * (a * (a - 1));
    if (c >= 2)
      lap[{t.x1_pow, t.x2_pow - 2, t.p_pow}] += t.coeff * (c * (c - 1));
    if (b >= 1)
      lap[{t.x1_pow, t.x2_pow, t.p_pow - 1}] +=
          t.coeff * (2 * b * (2 * c + k + 2 * b - 2));
  }
  for (const auto& [key, c] : lap)
    if (c != 0) return false;
  return true;
}

}  // namespace

bool check_harmonic(const InvariantSpec& spec, const ReflectionGroupData& g) {
  if (spec.kind == InvariantSpec::Kind::zonal_orbit_sum)
    return zonal_laplacian_zero(spec.zonal, g.dim - 1);
  return dense_laplacian_zero(expand_sym(spec.sym, g.dim));
}

bool check_invariance(const InvariantSpec& spec, const ReflectionGroupData& g,
                      unsigned seed) {
  if (spec.kind != InvariantSpec::Kind::sym)
    return true;  // group sums are invariant by construction
  // deterministic small pseudorandom rationals
  unsigned state = seed * 2654435761u + 1;
  auto next = [&]() {
    state = state * 1664525u + 1013904223u;
    return static_cast<long>((state >> 16) % 17) - 8;
  };
  for (int trial = 0; trial < 2; ++trial) {
    std::vector<FieldElement> x(g.dim);
    for (auto& c : x) c = FieldElement(ratio(next(), 1 + (seed % 3)));
    FieldElement base = eval_sym_poly(spec.sym, x);
    for (const auto& alpha : g.roots) {
      FieldElement n2;
      for (const auto& c : alpha) n2 += c * c;
      FieldElement ip;
      for (int i = 0; i < g.dim; ++i) ip += x[i] * alpha[i];
      FieldElement factor = (ip + ip) / n2;
      std::vector<FieldElement> y(g.dim);
      for (int i = 0; i < g.dim; ++i) y[i] = x[i] - factor * alpha[i];
      if (!(eval_sym_poly(spec.sym, y) == base)) return false;
    }
  }
  return true;
}

cubature::VerificationReport euclidean_design_check(
    const ReflectionGroupData& g, const std::vector<OrbitRadius>& orbits,
    const std::vector<Rational>& weights, int t) {
  if (orbits.size() != weights.size())
    throw std::domain_error("orbit/weight count mismatch");
  auto dims = molien_dims(g, t);
  std::map<int, int> have;  // degree -> spec count
  for (const auto& spec : g.invariants)
    if (spec.degree <= t) have[spec.degree]++;
  for (int l = 1; l <= t; ++l)
    if (dims[l] > 0 && have[l] < dims[l])
      throw std::domain_error("invariant basis unavailable for degree " +
                              std::to_string(l));
  const auto& us = cached_u_vectors(g);
  cubature::VerificationReport rep;
  rep.valid = true;
  for (const auto& u : us) {
    if (u.degree > t) continue;
    for (int j = 0; 2 * j + u.degree <= t; ++j) {
      unsigned power = 2 * j + u.degree;
      FieldElement acc(0);
      bool exact = true;
      BigFloat facc(0L, 256);
      for (size_t i = 0; i < orbits.size(); ++i) {
        const auto& orb = orbits[i];
        Rational nw = weights[i] * g.orbit_sizes.at(orb.corner_index);
        auto rp = orb.radius.pow(power);
        if (rp) {
          acc += u.values.at(orb.corner_index) * (nw * *rp);
        } else {
          exact = false;
          facc += u.values.at(orb.corner_index).to_float(256) *
                  BigFloat(nw, 256) * orb.radius.to_float(256).pow_ui(power);
        }
      }
      rep.monomials_checked++;
      bool zero;
      if (exact) {
        zero = acc.is_zero();
      } else {
        rep.exact = false;
        facc += acc.to_float(256);
        zero = facc.abs_less_pow2(-128);
      }
      if (!zero) {
        rep.valid = false;
        cubature::FailedMonomial fm;
        fm.exponent = {power};
        fm.got = exact ? acc.str() : facc.str(25);
        fm.want = "0 [" + u.name + ", radial power " + std::to_string(power) +
                  "]";
        rep.failures.push_back(std::move(fm));
      }
    }
  }
  return rep;
}

cubature::CubatureFormula sphere_design_from_orbit(
    const ReflectionGroupData& g, const std::vector<FieldElement>& x,
    const OrbitOptions& opt) {
  bool zero = true;
  for (const auto& c : x) zero = zero && c.is_zero();
  if (zero) throw std::domain_error("orbit of the origin is not a design");
  auto pts = orbit(g, x, opt);
  cubature::CubatureFormula f;
  f.domain = cubature::Domain::sphere;
  f.m = g.dim;
  cubature::PointSet ps;
  Rational w = ratio(1, static_cast<long>(pts.size()));
  for (auto& p : pts) {
    cubature::CubPoint cp;
    cp.scale = cubature::RadialScale{1, 1};
    cp.dir = std::move(p);
    ps.pts.push_back(std::move(cp));
    ps.weights.push_back(w);
  }
  f.comps.push_back(std::move(ps));
  f.step("equal-weight orbit design under " + g.label);
  return f;
}

}  // namespace cubforge::reflect
