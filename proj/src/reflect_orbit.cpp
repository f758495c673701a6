#include <algorithm>
#include <cstring>
#include <numeric>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "cubforge/reflect.hpp"

namespace cubforge::reflect {

namespace {

// Orbit points are stored on the sub-basis of radicands actually present in
// the group data, with int64 numerator/denominator pairs per coefficient.
struct PackedSpace {
  int dim = 0;
  std::vector<int> active;               // basis indices, active[0] == 0
  int b = 0;
  std::array<int, FieldElement::kDim> pos{};  // basis index -> slot or -1
  struct Mul {
    int slot;
    long factor;
  };
  std::vector<Mul> tab;  // b*b flattened

  std::vector<std::vector<Rational>> roots;   // per root, dim*b coefficients
  std::vector<std::vector<Rational>> crefls;  // (2/(a,a)) * alpha

  int slot_of(int basis_index) const { return pos[basis_index]; }
};

void add_active(std::vector<int>& act, int basis_index) {
  for (int a : act)
    if (a == basis_index) return;
  act.push_back(basis_index);
}

PackedSpace build_space(const ReflectionGroupData& g,
                        const std::vector<FieldElement>& x) {
  PackedSpace sp;
  sp.dim = g.dim;
  sp.active = {0};
  auto collect = [&](const FieldElement& v) {
    for (int i = 1; i < FieldElement::kDim; ++i)
      if (v.coeff(i) != 0) add_active(sp.active, i);
  };
  for (const auto& r : g.roots)
    for (const auto& c : r) collect(c);
  for (const auto& c : x) collect(c);
  // close under products
  bool grew = true;
  while (grew) {
    grew = false;
    auto snapshot = sp.active;
    for (int i : snapshot)
      for (int j : snapshot) {
        long a = FieldElement::kBasis[i], b = FieldElement::kBasis[j];
        long gg = std::gcd(a, b);
        int target = FieldElement::basis_index(
            static_cast<int>(a / gg * (b / gg)));
        bool have = false;
        for (int k : sp.active) have = have || k == target;
        if (!have) {
          sp.active.push_back(target);
          grew = true;
        }
      }
  }
  std::sort(sp.active.begin(), sp.active.end());
  sp.b = static_cast<int>(sp.active.size());
  sp.pos.fill(-1);
  for (int s = 0; s < sp.b; ++s) sp.pos[sp.active[s]] = s;
  sp.tab.resize(sp.b * sp.b);
  for (int i = 0; i < sp.b; ++i)
    for (int j = 0; j < sp.b; ++j) {
      long a = FieldElement::kBasis[sp.active[i]];
      long bb = FieldElement::kBasis[sp.active[j]];
      long gg = std::gcd(a, bb);
      int target =
          FieldElement::basis_index(static_cast<int>(a / gg * (bb / gg)));
      sp.tab[i * sp.b + j] = {sp.pos[target], gg};
    }
  auto pack_vec = [&](const std::vector<FieldElement>& v) {
    std::vector<Rational> out(sp.dim * sp.b);
    for (int i = 0; i < sp.dim; ++i)
      for (int k = 0; k < FieldElement::kDim; ++k)
        if (v[i].coeff(k) != 0) out[i * sp.b + sp.pos[k]] = v[i].coeff(k);
    return out;
  };
  for (const auto& r : g.roots) {
    sp.roots.push_back(pack_vec(r));
    // 2/(alpha, alpha) must be rational
    FieldElement n2;
    for (const auto& c : r) n2 += c * c;
    if (!n2.is_rational())
      throw std::logic_error("root with irrational norm");
    Rational scale = 2 / n2.rational_part();
    std::vector<FieldElement> cr;
    for (const auto& c : r) cr.push_back(c * scale);
    sp.crefls.push_back(pack_vec(cr));
  }
  return sp;
}

void reflect_point(const PackedSpace& sp, size_t root_idx,
                   const std::vector<Rational>& x, std::vector<Rational>& out) {
  const auto& alpha = sp.roots[root_idx];
  const auto& cref = sp.crefls[root_idx];
  // ip = <x, alpha> as field coefficients
  static thread_local std::vector<Rational> ip;
  ip.assign(sp.b, Rational(0));
  for (int i = 0; i < sp.dim; ++i) {
    for (int a1 = 0; a1 < sp.b; ++a1) {
      const Rational& xa = x[i * sp.b + a1];
      if (xa == 0) continue;
      for (int a2 = 0; a2 < sp.b; ++a2) {
        const Rational& ra = alpha[i * sp.b + a2];
        if (ra == 0) continue;
        const auto& mp = sp.tab[a1 * sp.b + a2];
        ip[mp.slot] += xa * ra * mp.factor;
      }
    }
  }
  out = x;
  for (int i = 0; i < sp.dim; ++i) {
    for (int a2 = 0; a2 < sp.b; ++a2) {
      const Rational& ca = cref[i * sp.b + a2];
      if (ca == 0) continue;
      for (int a1 = 0; a1 < sp.b; ++a1) {
        if (ip[a1] == 0) continue;
        const auto& mp = sp.tab[a1 * sp.b + a2];
        out[i * sp.b + mp.slot] -= ip[a1] * ca * mp.factor;
      }
    }
  }
}

std::string key_of(const std::vector<Rational>& x) {
  std::string key;
  key.reserve(x.size() * 18);
  for (const auto& q : x) {
    long num = 0, den = 1;
    if (!mpz_fits_slong_p(q.get_num().get_mpz_t()) ||
        !mpz_fits_slong_p(q.get_den().get_mpz_t()))
      throw std::overflow_error("orbit coordinate exceeds packing range");
    num = mpz_get_si(q.get_num().get_mpz_t());
    den = mpz_get_si(q.get_den().get_mpz_t());
    key.append(reinterpret_cast<const char*>(&num), sizeof(num));
    key.append(reinterpret_cast<const char*>(&den), sizeof(den));
  }
  return key;
}

std::vector<Rational> from_key(const PackedSpace& sp, const std::string& key) {
  std::vector<Rational> x(sp.dim * sp.b);
  const char* p = key.data();
  for (auto& q : x) {
    long num, den;
    std::memcpy(&num, p, sizeof(num));
    p += sizeof(num);
    std::memcpy(&den, p, sizeof(den));
    p += sizeof(den);
    q = ratio(num, den);
  }
  return x;
}

std::vector<FieldElement> unpack_point(const PackedSpace& sp,
                                       const std::vector<Rational>& x) {
  std::vector<FieldElement> v(sp.dim);
  for (int i = 0; i < sp.dim; ++i)
    for (int s = 0; s < sp.b; ++s)
      if (x[i * sp.b + s] != 0)
        v[i].set_coeff(sp.active[s], x[i * sp.b + s]);
  return v;
}

}  // namespace

long orbit_scan(const ReflectionGroupData& g,
                const std::vector<FieldElement>& x,
                const std::function<void(const std::vector<FieldElement>&)>& f,
                const OrbitOptions& opt) {
  if (static_cast<int>(x.size()) != g.dim)
    throw std::domain_error("orbit: dimension mismatch");
  PackedSpace sp = build_space(g, x);
  std::vector<Rational> start(sp.dim * sp.b);
  for (int i = 0; i < sp.dim; ++i)
    for (int k = 0; k < FieldElement::kDim; ++k)
      if (x[i].coeff(k) != 0) {
        if (sp.pos[k] < 0) throw std::logic_error("basis escape");
        start[i * sp.b + sp.pos[k]] = x[i].coeff(k);
      }
  std::unordered_set<std::string> visited;
  std::deque<std::string> queue;
  std::string k0 = key_of(start);
  visited.insert(k0);
  queue.push_back(std::move(k0));
  if (f) f(unpack_point(sp, start));
  long count = 1;
  std::vector<Rational> cur, next;
  while (!queue.empty()) {
    cur = from_key(sp, queue.front());
    queue.pop_front();
    for (size_t r = 0; r < sp.roots.size(); ++r) {
      reflect_point(sp, r, cur, next);
      std::string key = key_of(next);
      if (visited.insert(std::move(key)).second) {
        ++count;
        if (count > opt.cap)
          throw std::runtime_error("orbit cap exceeded");
        if (f) f(unpack_point(sp, next));
        queue.push_back(key_of(next));
      }
    }
  }
  return count;
}

std::vector<std::vector<FieldElement>> orbit(const ReflectionGroupData& g,
                                             const std::vector<FieldElement>& x,
                                             const OrbitOptions& opt) {
  std::vector<std::vector<FieldElement>> pts;
  orbit_scan(
      g, x, [&](const std::vector<FieldElement>& p) { pts.push_back(p); },
      opt);
  return pts;
}

}  // namespace cubforge::reflect
