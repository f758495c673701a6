#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cubforge/reflect.hpp"

namespace cubforge::reflect {

namespace {

struct Row {
  std::vector<FieldElement> c;  // sum c_i a_i >= r
  FieldElement r;
};

// Collect even-degree u-vectors up to 2s, verifying basis coverage degreewise.
std::vector<const UVector*> even_uvectors(const ReflectionGroupData& g,
                                          int two_s) {
  auto dims = molien_dims(g, two_s);
  const auto& us = cached_u_vectors(g);
  std::vector<const UVector*> picked;
  for (int d = 2; d <= two_s; d += 2) {
    if (dims[d] == 0) continue;
    long have = 0;
    for (const auto& u : us)
      if (u.degree == d) {
        picked.push_back(&u);
        ++have;
      }
    if (have != dims[d])
      throw std::domain_error("invariant basis unavailable for degree " +
                              std::to_string(d));
  }
  return picked;
}

}  // namespace

std::optional<PositivityCertificate> certify_nonexistence(
    const ReflectionGroupData& g, int two_s) {
  if (two_s % 2 != 0) throw std::domain_error("certify_nonexistence: even 2s");
  auto picked = even_uvectors(g, two_s);
  size_t kvars = picked.size();
  size_t m = g.corners.size();
  // System: for each corner k, sum_i a_i u_i[k] >= 1.
  std::vector<Row> rows(m);
  for (size_t k = 0; k < m; ++k) {
    rows[k].c.resize(kvars);
    for (size_t i = 0; i < kvars; ++i) rows[k].c[i] = picked[i]->values[k];
    rows[k].r = FieldElement(1);
  }
  // Fourier-Motzkin elimination, keeping each stage for back-substitution.
  std::vector<std::vector<Row>> stages;
  std::vector<Row> cur = rows;
  for (size_t j = 0; j < kvars; ++j) {
    stages.push_back(cur);
    std::vector<Row> pos, neg, zero;
    for (auto& row : cur) {
      int s = row.c[j].sign();
      if (s > 0)
        pos.push_back(std::move(row));
      else if (s < 0)
        neg.push_back(std::move(row));
      else
        zero.push_back(std::move(row));
    }
    std::vector<Row> next = std::move(zero);
    for (const auto& p : pos)
      for (const auto& n : neg) {
        Row comb;
        comb.c.resize(kvars);
        FieldElement mp = -n.c[j];  // > 0
        FieldElement mn = p.c[j];   // > 0
        for (size_t i = 0; i < kvars; ++i)
          comb.c[i] = mp * p.c[i] + mn * n.c[i];
        comb.r = mp * p.r + mn * n.r;
        next.push_back(std::move(comb));
      }
    cur = std::move(next);
  }
  for (const auto& row : cur)
    if (row.r.sign() > 0) return std::nullopt;  // 0 >= positive: infeasible
  // Feasible: back-substitute a value inside each stage's interval.
  std::vector<FieldElement> a(kvars, FieldElement(0));
  for (size_t jj = kvars; jj-- > 0;) {
    const auto& stage = stages[jj];
    std::optional<FieldElement> lo, hi;
    for (const auto& row : stage) {
      int s = row.c[jj].sign();
      if (s == 0) continue;
      FieldElement rest = row.r;
      for (size_t i = jj + 1; i < kvars; ++i) rest -= row.c[i] * a[i];
      FieldElement bound = rest / row.c[jj];
      if (s > 0) {
        if (!lo || (bound - *lo).sign() > 0) lo = bound;
      } else {
        if (!hi || (bound - *hi).sign() < 0) hi = bound;
      }
    }
    if (lo && hi)
      a[jj] = (*lo + *hi) * ratio(1, 2);
    else if (lo)
      a[jj] = *lo + FieldElement(1);
    else if (hi)
      a[jj] = *hi - FieldElement(1);
    else
      a[jj] = FieldElement(0);
  }
  PositivityCertificate cert;
  for (size_t i = 0; i < kvars; ++i) cert.vector_names.push_back(picked[i]->name);
  cert.coefficients = a;
  cert.combination.assign(m, FieldElement(0));
  for (size_t k = 0; k < m; ++k)
    for (size_t i = 0; i < kvars; ++i)
      cert.combination[k] += a[i] * picked[i]->values[k];
  if (!validate_certificate(g, cert))
    throw std::logic_error("feasible elimination produced a bad certificate");
  return cert;
}

bool validate_certificate(const ReflectionGroupData& g,
                          const PositivityCertificate& cert) {
  const auto& us = cached_u_vectors(g);
  std::vector<FieldElement> comb(g.corners.size(), FieldElement(0));
  for (size_t i = 0; i < cert.vector_names.size(); ++i) {
    const UVector* u = nullptr;
    for (const auto& cand : us)
      if (cand.name == cert.vector_names[i]) u = &cand;
    if (!u) return false;
    for (size_t k = 0; k < comb.size(); ++k)
      comb[k] += cert.coefficients[i] * u->values[k];
  }
  for (size_t k = 0; k < comb.size(); ++k) {
    if (!(comb[k] == cert.combination[k])) return false;
    if (comb[k].sign() <= 0) return false;
  }
  return true;
}

Rational AffineExpr::eval(const std::map<int, Rational>& values) const {
  Rational v = constant;
  for (const auto& [idx, c] : coeffs) {
    auto it = values.find(idx);
    if (it == values.end())
      throw std::domain_error("affine expression references unbound weight");
    v += c * it->second;
  }
  return v;
}

WeightFamily classify_weights(const ReflectionGroupData& g, int t) {
  auto dims = molien_dims(g, t);
  const auto& us = cached_u_vectors(g);
  std::map<int, long> have;
  for (const auto& u : us)
    if (u.degree <= t) have[u.degree]++;
  for (int l = 1; l <= t; ++l)
    if (dims[l] > 0 && have[l] != dims[l])
      throw std::domain_error("invariant basis unavailable for degree " +
                              std::to_string(l));
  size_t n = g.corners.size();
  // Rational constraint rows on w: each field-basis component of each
  // condition u . (N o w) = 0, plus the normalization sum N_k w_k = 1.
  std::vector<std::vector<Rational>> rows;  // n coefficients + rhs
  for (const auto& u : us) {
    if (u.degree > t) continue;
    for (int comp = 0; comp < FieldElement::kDim; ++comp) {
      std::vector<Rational> row(n + 1, 0);
      bool nonzero = false;
      for (size_t k = 0; k < n; ++k) {
        row[k] = u.values[k].coeff(comp) * g.orbit_sizes[k];
        nonzero = nonzero || row[k] != 0;
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  {
    std::vector<Rational> norm(n + 1, 0);
    for (size_t k = 0; k < n; ++k) norm[k] = g.orbit_sizes[k];
    norm[n] = 1;
    rows.push_back(std::move(norm));
  }
  // RREF with leftmost pivots: free parameters late in corner order.
  size_t r = 0;
  std::vector<int> pivot_of_col(n, -1);
  for (size_t c = 0; c < n && r < rows.size(); ++c) {
    size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    Rational inv = 1 / rows[r][c];
    for (size_t j = c; j <= n; ++j) rows[r][j] *= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (size_t j = c; j <= n; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_of_col[c] = static_cast<int>(r);
    ++r;
  }
  WeightFamily fam;
  fam.n = static_cast<int>(n);
  for (size_t i = r; i < rows.size(); ++i)
    if (rows[i][n] != 0) {
      fam.feasible = false;
      return fam;
    }
  fam.feasible = true;
  for (size_t c = 0; c < n; ++c)
    if (pivot_of_col[c] < 0) fam.free_indices.push_back(static_cast<int>(c));
  fam.weights.resize(n);
  for (size_t c = 0; c < n; ++c) {
    AffineExpr e;
    if (pivot_of_col[c] < 0) {
      e.constant = 0;
      e.coeffs[static_cast<int>(c)] = 1;
    } else {
      const auto& row = rows[pivot_of_col[c]];
      e.constant = row[n];
      for (int fidx : fam.free_indices)
        if (row[fidx] != 0) e.coeffs[fidx] = -row[fidx];
    }
    fam.weights[c] = std::move(e);
  }
  if (fam.free_indices.size() == 1) {
    // nonnegativity interval for the single free parameter
    int fv = fam.free_indices[0];
    std::optional<Rational> lo, hi;
    bool empty = false;
    for (size_t c = 0; c < n; ++c) {
      Rational a = fam.weights[c].constant;
      Rational b = 0;
      auto it = fam.weights[c].coeffs.find(fv);
      if (it != fam.weights[c].coeffs.end()) b = it->second;
      if (b == 0) {
        if (a < 0) empty = true;
        continue;
      }
      Rational bound = -a / b;
      if (b > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    if (!empty && lo && hi && *lo <= *hi) fam.interval = {{*lo, *hi}};
    else if (empty || (lo && hi && *lo > *hi))
      fam.feasible = false;
  }
  return fam;
}

std::vector<Rational> family_sample(const WeightFamily& fam,
                                    const std::map<int, Rational>& frees) {
  std::vector<Rational> w;
  w.reserve(fam.weights.size());
  for (const auto& e : fam.weights) w.push_back(e.eval(frees));
  return w;
}

std::optional<std::map<int, Rational>> feasible_frees(
    const WeightFamily& fam) {
  size_t nf = fam.free_indices.size();
  struct QRow {
    std::vector<Rational> c;
    Rational r;  // c . x >= r
  };
  std::vector<QRow> rows;
  for (const auto& e : fam.weights) {
    QRow row;
    row.c.assign(nf, 0);
    for (size_t j = 0; j < nf; ++j) {
      auto it = e.coeffs.find(fam.free_indices[j]);
      if (it != e.coeffs.end()) row.c[j] = it->second;
    }
    row.r = -e.constant;
    rows.push_back(std::move(row));
  }
  std::vector<std::vector<QRow>> stages;
  auto cur = rows;
  for (size_t j = 0; j < nf; ++j) {
    stages.push_back(cur);
    std::vector<QRow> pos, neg, next;
    for (auto& row : cur) {
      if (row.c[j] > 0)
        pos.push_back(std::move(row));
      else if (row.c[j] < 0)
        neg.push_back(std::move(row));
      else
        next.push_back(std::move(row));
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        QRow comb;
        comb.c.assign(nf, 0);
        Rational mp = -n.c[j], mn = p.c[j];
        for (size_t i = 0; i < nf; ++i) comb.c[i] = mp * p.c[i] + mn * n.c[i];
        comb.r = mp * p.r + mn * n.r;
        next.push_back(std::move(comb));
      }
    cur = std::move(next);
  }
  for (const auto& row : cur)
    if (row.r > 0) return std::nullopt;
  std::vector<Rational> x(nf, 0);
  for (size_t jj = nf; jj-- > 0;) {
    std::optional<Rational> lo, hi;
    for (const auto& row : stages[jj]) {
      if (row.c[jj] == 0) continue;
      Rational rest = row.r;
      for (size_t i = jj + 1; i < nf; ++i) rest -= row.c[i] * x[i];
      Rational bound = rest / row.c[jj];
      if (row.c[jj] > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    if (lo && hi)
      x[jj] = (*lo + *hi) / 2;
    else if (lo)
      x[jj] = *lo;
    else if (hi)
      x[jj] = *hi;
  }
  std::map<int, Rational> out;
  for (size_t j = 0; j < nf; ++j) out[fam.free_indices[j]] = x[j];
  return out;
}

// --- weight-region files ---------------------------------------------------------

namespace {

struct Tok {
  std::string s;
};

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  size_t i = 0;
  auto is_ratchar = [](char ch) { return isdigit(static_cast<unsigned char>(ch)); };
  while (i < line.size()) {
    char ch = line[i];
    if (ch == ' ' || ch == '\t') {
      ++i;
      continue;
    }
    if (ch == '#') break;
    if (isalpha(static_cast<unsigned char>(ch))) {
      size_t j = i;
      while (j < line.size() &&
             (isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_'))
        ++j;
      toks.push_back(line.substr(i, j - i));
      i = j;
      continue;
    }
    if (is_ratchar(ch)) {
      size_t j = i;
      while (j < line.size() && (is_ratchar(line[j]) || line[j] == '/')) ++j;
      toks.push_back(line.substr(i, j - i));
      i = j;
      continue;
    }
    if (ch == '<') {
      if (i + 1 < line.size() && line[i + 1] == '=') {
        toks.push_back("<=");
        i += 2;
      } else {
        toks.push_back("<");
        ++i;
      }
      continue;
    }
    toks.push_back(std::string(1, ch));
    ++i;
  }
  return toks;
}

struct ExprParser {
  const std::vector<std::string>& t;
  size_t pos = 0;

  bool at(const std::string& s) const { return pos < t.size() && t[pos] == s; }
  void expect(const std::string& s) {
    if (!at(s)) throw std::runtime_error("region file: expected '" + s + "'");
    ++pos;
  }
  bool is_weight(const std::string& s, int& idx) const {
    if (s.size() < 2 || s[0] != 'w') return false;
    for (size_t i = 1; i < s.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(s[i]))) return false;
    idx = std::stoi(s.substr(1)) - 1;  // files are 1-based
    return true;
  }
  Rational rat() {
    if (pos >= t.size()) throw std::runtime_error("region file: expected number");
    auto q = parse_rational(t[pos]);
    if (!q) throw std::runtime_error("region file: bad number " + t[pos]);
    ++pos;
    return *q;
  }

  // expr := group { (+|-) group } ; group := rat [wI] | '(' expr ')' ['/' rat]
  AffineExpr parse() {
    AffineExpr acc = group(1);
    while (pos < t.size() && (at("+") || at("-"))) {
      Rational sgn = at("+") ? 1 : -1;
      ++pos;
      AffineExpr g = group(sgn);
      acc.constant += g.constant;
      for (auto& [i, c] : g.coeffs) acc.coeffs[i] += c;
    }
    return acc;
  }

  AffineExpr paren() {
    expect("(");
    AffineExpr out = parse();
    expect(")");
    if (at("/")) {
      ++pos;
      Rational d = rat();
      out.constant /= d;
      for (auto& [i, c] : out.coeffs) c /= d;
    }
    return out;
  }

  AffineExpr group(Rational sign) {
    AffineExpr out;
    if (at("(")) {
      out = paren();
    } else if (at("-")) {
      ++pos;
      out = group(1);
      sign = -sign;
    } else {
      int widx;
      if (pos < t.size() && is_weight(t[pos], widx)) {
        ++pos;
        out.coeffs[widx] = 1;
      } else {
        Rational v = rat();
        int wi;
        if (at("(")) {  // scalar times a parenthesized expression
          out = paren();
          out.constant *= v;
          for (auto& [i, c] : out.coeffs) c *= v;
        } else if (pos < t.size() && is_weight(t[pos], wi)) {
          ++pos;
          out.coeffs[wi] = v;
        } else {
          out.constant = v;
        }
      }
    }
    if (sign != 1) {
      out.constant *= sign;
      for (auto& [i, c] : out.coeffs) c *= sign;
    }
    return out;
  }
};

AffineExpr parse_expr(const std::vector<std::string>& toks, size_t from,
                      size_t to) {
  std::vector<std::string> slice(toks.begin() + from, toks.begin() + to);
  ExprParser p{slice};
  AffineExpr e = p.parse();
  if (p.pos != slice.size())
    throw std::runtime_error("region file: trailing tokens in expression");
  return e;
}

}  // namespace

RegionFile load_regions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open region file: " + path);
  RegionFile rf;
  std::string line;
  enum class State { top, shared, region } state = State::top;
  RegionFile::Region cur;
  RegionFile::RegionLets cur_lets;
  while (std::getline(in, line)) {
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (state == State::top) {
      if (toks[0] == "n") {
        rf.n = std::stoi(toks.at(1));
      } else if (toks[0] == "shared") {
        state = State::shared;
      } else if (toks[0] == "region") {
        cur = {};
        cur_lets = {};
        cur.name = toks.size() > 1 ? toks[1] : "";
        state = State::region;
      } else {
        throw std::runtime_error("region file: unexpected line: " + line);
      }
      continue;
    }
    if (toks[0] == "end") {
      if (state == State::region) {
        rf.regions.push_back(std::move(cur));
        rf.region_lets.push_back(std::move(cur_lets));
      }
      state = State::top;
      continue;
    }
    if (toks[0] == "let") {
      int widx;
      ExprParser probe{toks};
      if (!probe.is_weight(toks.at(1), widx))
        throw std::runtime_error("region file: bad let target");
      if (toks.at(2) != "=") throw std::runtime_error("region file: let needs '='");
      AffineExpr e = parse_expr(toks, 3, toks.size());
      if (state == State::shared)
        rf.shared_lets.emplace_back(widx, std::move(e));
      else
        cur_lets.lets.emplace_back(widx, std::move(e));
      continue;
    }
    if (state != State::region)
      throw std::runtime_error("region file: directive outside region: " + line);
    if (toks[0] == "set") {
      int widx;
      ExprParser probe{toks};
      if (!probe.is_weight(toks.at(1), widx))
        throw std::runtime_error("region file: bad set target");
      if (toks.at(2) != "=") throw std::runtime_error("region file: set needs '='");
      RegionFile::Directive d;
      d.var = widx;
      d.is_set = true;
      d.value = parse_expr(toks, 3, toks.size());
      cur.steps.push_back(std::move(d));
      continue;
    }
    if (toks[0] == "bind") {
      // bind wI : lo OP . OP hi
      int widx;
      ExprParser probe{toks};
      if (!probe.is_weight(toks.at(1), widx))
        throw std::runtime_error("region file: bad bind target");
      if (toks.at(2) != ":") throw std::runtime_error("region file: bind needs ':'");
      size_t dot = 3;
      while (dot < toks.size() && toks[dot] != ".") ++dot;
      if (dot + 1 >= toks.size() || dot < 4)
        throw std::runtime_error("region file: bad bind bounds: " + line);
      RegionFile::Directive d;
      d.var = widx;
      d.lo.present = true;
      d.lo.strict = toks[dot - 1] == "<";
      if (toks[dot - 1] != "<" && toks[dot - 1] != "<=")
        throw std::runtime_error("region file: bad lower bound op");
      d.lo.expr = parse_expr(toks, 3, dot - 1);
      if (toks[dot + 1] != "<" && toks[dot + 1] != "<=")
        throw std::runtime_error("region file: bad upper bound op");
      d.hi.present = true;
      d.hi.strict = toks[dot + 1] == "<";
      d.hi.expr = parse_expr(toks, dot + 2, toks.size());
      cur.steps.push_back(std::move(d));
      continue;
    }
    throw std::runtime_error("region file: unknown directive: " + line);
  }
  return rf;
}

std::vector<std::vector<Rational>> sample_region(
    const RegionFile& rf, size_t region_index,
    const std::vector<Rational>& fractions) {
  const auto& region = rf.regions.at(region_index);
  const auto& lets = rf.region_lets.at(region_index);
  std::vector<std::vector<Rational>> out;
  for (const auto& frac : fractions) {
    std::map<int, Rational> vals;
    for (const auto& step : region.steps) {
      if (step.is_set) {
        vals[step.var] = step.value.eval(vals);
        continue;
      }
      Rational lo = step.lo.expr.eval(vals);
      Rational hi = step.hi.expr.eval(vals);
      if (lo > hi)
        throw std::runtime_error("region " + region.name +
                                 ": empty bound interval");
      Rational v;
      if (lo == hi) {
        if (step.lo.strict || step.hi.strict)
          throw std::runtime_error("region " + region.name +
                                   ": degenerate strict interval");
        v = lo;
      } else {
        v = lo + frac * (hi - lo);
      }
      vals[step.var] = v;
    }
    for (const auto& [idx, e] : lets.lets) vals[idx] = e.eval(vals);
    for (const auto& [idx, e] : rf.shared_lets)
      if (!vals.count(idx)) vals[idx] = e.eval(vals);
    std::vector<Rational> w(rf.n, 0);
    for (int i = 0; i < rf.n; ++i) {
      auto it = vals.find(i);
      if (it == vals.end())
        throw std::runtime_error("region " + region.name +
                                 ": weight w" + std::to_string(i + 1) +
                                 " left unassigned");
      w[i] = it->second;
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace cubforge::reflect
