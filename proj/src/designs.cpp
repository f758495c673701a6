#include "cubforge/designs.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cubforge::designs {

BlockDesign::BlockDesign(int v, std::vector<uint64_t> block_masks)
    : v_(v), masks_(std::move(block_masks)) {
  if (v < 1 || v > 64) throw std::domain_error("design needs 1 <= v <= 64");
  uint64_t universe = v == 64 ? ~0ULL : ((1ULL << v) - 1);
  std::set<uint64_t> seen;
  for (uint64_t b : masks_) {
    if (b == 0) throw std::domain_error("empty block");
    if (b & ~universe) throw std::domain_error("block exceeds point set");
    if (!seen.insert(b).second) throw std::domain_error("repeated block");
  }
  std::sort(masks_.begin(), masks_.end());
}

BlockDesign BlockDesign::from_blocks(
    int v, const std::vector<std::vector<int>>& blocks) {
  std::vector<uint64_t> masks;
  masks.reserve(blocks.size());
  for (const auto& b : blocks) {
    uint64_t m = 0;
    for (int x : b) {
      if (x < 0 || x >= v) throw std::domain_error("point out of range");
      m |= 1ULL << x;
    }
    masks.push_back(m);
  }
  return BlockDesign(v, std::move(masks));
}

std::vector<std::vector<int>> BlockDesign::blocks() const {
  std::vector<std::vector<int>> out;
  out.reserve(masks_.size());
  for (uint64_t m : masks_) {
    std::vector<int> b;
    for (int i = 0; i < v_; ++i)
      if (m >> i & 1) b.push_back(i);
    out.push_back(std::move(b));
  }
  return out;
}

std::map<int, int> BlockDesign::size_multiplicities() const {
  std::map<int, int> out;
  for (uint64_t m : masks_) out[std::popcount(m)]++;
  return out;
}

namespace {

// Visit all t-subsets of {0..v-1} as bitmasks.
template <class F>
void for_each_subset(int v, int t, F&& f) {
  if (t == 0) {
    f(uint64_t{0});
    return;
  }
  std::vector<int> idx(t);
  for (int i = 0; i < t; ++i) idx[i] = i;
  while (true) {
    uint64_t m = 0;
    for (int i : idx) m |= 1ULL << i;
    f(m);
    int i = t - 1;
    while (i >= 0 && idx[i] == v - t + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

DesignReport verify_design(const BlockDesign& d, int t) {
  if (t < 0 || t > d.v()) throw std::domain_error("bad strength level");
  DesignReport rep;
  rep.v = d.v();
  rep.b = d.block_count();
  rep.block_sizes = d.size_multiplicities();
  rep.lambda_by_t.assign(t + 1, std::nullopt);
  rep.max_constant_level = -1;
  bool all_const = true;
  for (int tp = 0; tp <= t; ++tp) {
    long first = -1;
    bool constant = true;
    for_each_subset(d.v(), tp, [&](uint64_t sub) {
      long cnt = 0;
      for (uint64_t b : d.masks())
        if ((b & sub) == sub) ++cnt;
      if (first < 0)
        first = cnt;
      else if (cnt != first)
        constant = false;
    });
    if (constant) {
      rep.lambda_by_t[tp] = Integer(first);
      if (all_const) rep.max_constant_level = tp;
    }
    all_const = all_const && constant;
  }
  rep.balanced_at_t = rep.lambda_by_t[t].has_value();
  rep.regular = all_const;
  return rep;
}

Rational block_count_formula(int v, int k, int t, const Rational& lambda,
                             int t_prime) {
  if (!(0 <= t_prime && t_prime <= t && t <= k && k <= v))
    throw std::domain_error("block_count_formula: need 0<=t'<=t<=k<=v");
  return lambda * ratio(binomial(v - t_prime, t - t_prime),
                        binomial(k - t_prime, t - t_prime));
}

BlockDesign derive_design(const BlockDesign& d, int x) {
  if (x < 0 || x >= d.v()) throw std::domain_error("derive point out of range");
  uint64_t xbit = 1ULL << x;
  uint64_t low = xbit - 1;
  std::vector<uint64_t> out;
  for (uint64_t b : d.masks()) {
    uint64_t nb = (b & xbit) ? (b & ~xbit) : b;
    // renumber points above x down by one
    nb = (nb & low) | ((nb >> 1) & ~low);
    if (nb != 0) out.push_back(nb);
  }
  return BlockDesign(d.v() - 1, std::move(out));
}

Integer xiang_bound(int v, int e, int f) {
  if (f < 1 || e < f - 1) throw std::domain_error("xiang_bound: f>=1, e>=f-1");
  Integer s = 0;
  for (int i = 0; i < f; ++i) s += binomial(v, e - i);
  return s;
}

namespace {

struct SearchCtx {
  int v, t;
  long lambda;
  std::vector<uint64_t> tsubs;          // all t-subsets
  std::vector<long> coverage;           // per t-subset
  std::vector<uint64_t> candidates;     // all admissible blocks, sorted
  std::vector<std::vector<int>> hits;   // candidate -> covered t-subset ids
  std::vector<std::vector<int>> by_sub; // t-subset -> candidate ids
  std::vector<uint64_t> chosen;
  uint64_t nodes = 0, max_nodes = 0;
  bool found = false;
};

bool search_rec(SearchCtx& c, int min_cand_for_first) {
  if (++c.nodes > c.max_nodes)
    throw std::runtime_error("design search node limit exceeded");
  int target = -1;
  for (size_t i = 0; i < c.tsubs.size(); ++i)
    if (c.coverage[i] < c.lambda) {
      target = static_cast<int>(i);
      break;
    }
  if (target < 0) {
    c.found = true;
    return true;
  }
  for (int ci : c.by_sub[target]) {
    bool fits = true;
    for (uint64_t used : c.chosen)
      if (used == c.candidates[ci]) {
        fits = false;  // no repeated blocks
        break;
      }
    for (int si : c.hits[ci])
      if (fits && c.coverage[si] + 1 > c.lambda) {
        fits = false;
        break;
      }
    if (!fits) continue;
    for (int si : c.hits[ci]) c.coverage[si]++;
    c.chosen.push_back(c.candidates[ci]);
    if (search_rec(c, min_cand_for_first)) return true;
    c.chosen.pop_back();
    for (int si : c.hits[ci]) c.coverage[si]--;
  }
  return false;
}

}  // namespace

std::optional<BlockDesign> search_design(int v, const std::vector<int>& sizes,
                                         int t, long lambda,
                                         const SearchLimits& lim) {
  if (v > lim.max_v)
    throw std::domain_error("search_design: v exceeds configured cap");
  SearchCtx c;
  c.v = v;
  c.t = t;
  c.lambda = lambda;
  c.max_nodes = lim.max_nodes;
  for_each_subset(v, t, [&](uint64_t m) { c.tsubs.push_back(m); });
  c.coverage.assign(c.tsubs.size(), 0);
  for (int k : sizes) {
    if (k < t) throw std::domain_error("block size below strength");
    for_each_subset(v, k, [&](uint64_t m) { c.candidates.push_back(m); });
  }
  std::sort(c.candidates.begin(), c.candidates.end());
  c.hits.resize(c.candidates.size());
  c.by_sub.resize(c.tsubs.size());
  for (size_t ci = 0; ci < c.candidates.size(); ++ci)
    for (size_t si = 0; si < c.tsubs.size(); ++si)
      if ((c.candidates[ci] & c.tsubs[si]) == c.tsubs[si]) {
        c.hits[ci].push_back(static_cast<int>(si));
        c.by_sub[si].push_back(static_cast<int>(ci));
      }
  if (!search_rec(c, 0)) return std::nullopt;
  return BlockDesign(v, c.chosen);
}

// ---------------------------------------------------------------------------

OaReport verify_oa(const OrthogonalArray& a, int t) {
  if (t < 1 || t > a.l) throw std::domain_error("verify_oa: need 1 <= t <= l");
  OaReport rep;
  rep.strength_checked = t;
  long n = a.n();
  if (n % (1L << t) != 0) {
    rep.ok = false;
    std::vector<int> cols(t);
    for (int i = 0; i < t; ++i) cols[i] = i;
    rep.violating_columns = cols;  // no column set can be balanced
  } else {
    rep.ok = true;
    long expect = n >> t;
    std::vector<int> cols(t);
    for (int i = 0; i < t; ++i) cols[i] = i;
    std::vector<long> counts(1L << t);
    while (rep.ok) {
      std::fill(counts.begin(), counts.end(), 0);
      for (const auto& row : a.rows) {
        unsigned pat = 0;
        for (int i = 0; i < t; ++i)
          pat = (pat << 1) | (row[cols[i]] > 0 ? 1u : 0u);
        counts[pat]++;
      }
      for (long cval : counts)
        if (cval != expect) {
          rep.ok = false;
          rep.violating_columns = cols;
          break;
        }
      int i = t - 1;
      while (i >= 0 && cols[i] == a.l - t + i) --i;
      if (i < 0) break;
      ++cols[i];
      for (int j = i + 1; j < t; ++j) cols[j] = cols[j - 1] + 1;
    }
    if (rep.ok) rep.index_lambda = ratio(n, 1L << t);
  }
  // Central symmetry: the row multiset is closed under negation.
  std::map<std::vector<int8_t>, long> mult;
  for (const auto& row : a.rows) mult[row]++;
  rep.centrally_symmetric = true;
  for (const auto& [row, cnt] : mult) {
    std::vector<int8_t> neg(row.size());
    for (size_t i = 0; i < row.size(); ++i) neg[i] = -row[i];
    auto it = mult.find(neg);
    if (it == mult.end() || it->second != cnt) {
      rep.centrally_symmetric = false;
      break;
    }
  }
  rep.rows_distinct = static_cast<long>(mult.size()) == n;
  return rep;
}

OrthogonalArray trivial_oa(int l) {
  if (l < 1 || l > 30) throw std::domain_error("trivial_oa: bad l");
  OrthogonalArray a;
  a.l = l;
  for (long p = 0; p < (1L << l); ++p) {
    std::vector<int8_t> row(l);
    for (int i = 0; i < l; ++i) row[i] = (p >> (l - 1 - i)) & 1 ? 1 : -1;
    a.rows.push_back(std::move(row));
  }
  return a;
}

OrthogonalArray oa_from_linear_code(
    const std::vector<std::vector<uint8_t>>& generator_rows) {
  if (generator_rows.empty()) throw std::domain_error("empty generator");
  size_t l = generator_rows[0].size();
  for (const auto& r : generator_rows)
    if (r.size() != l) throw std::domain_error("ragged generator");
  if (generator_rows.size() > 24) throw std::domain_error("generator too large");
  std::set<std::vector<uint8_t>> span;
  size_t k = generator_rows.size();
  for (uint64_t sel = 0; sel < (1ULL << k); ++sel) {
    std::vector<uint8_t> w(l, 0);
    for (size_t i = 0; i < k; ++i)
      if (sel >> i & 1)
        for (size_t j = 0; j < l; ++j) w[j] ^= generator_rows[i][j] & 1;
    span.insert(std::move(w));
  }
  OrthogonalArray a;
  a.l = static_cast<int>(l);
  for (const auto& w : span) {
    std::vector<int8_t> row(l);
    for (size_t j = 0; j < l; ++j) row[j] = w[j] ? 1 : -1;
    a.rows.push_back(std::move(row));
  }
  return a;
}

OrthogonalArray oa_subarray(const OrthogonalArray& a, int l) {
  if (l < 1 || l > a.l) throw std::domain_error("oa_subarray: bad l");
  OrthogonalArray out;
  out.l = l;
  out.rows.reserve(a.rows.size());
  for (const auto& row : a.rows)
    out.rows.emplace_back(row.begin(), row.begin() + l);
  return out;
}

std::vector<std::vector<FieldElement>> generalized_incidence(
    const BlockDesign& d, const FieldElement& alpha, const FieldElement& beta) {
  if (alpha == beta)
    throw std::domain_error("generalized incidence needs alpha != beta");
  std::vector<std::vector<FieldElement>> cols;
  cols.reserve(d.block_count());
  for (uint64_t b : d.masks()) {
    std::vector<FieldElement> col(d.v());
    for (int i = 0; i < d.v(); ++i) col[i] = (b >> i & 1) ? alpha : beta;
    cols.push_back(std::move(col));
  }
  return cols;
}

// --- file formats ----------------------------------------------------------

DesignFile load_design(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open design file: " + path);
  std::string header;
  if (!std::getline(in, header))
    throw std::runtime_error("empty design file: " + path);
  int v = -1, t = -1;
  Rational lambda;
  {
    std::istringstream hs(header);
    std::string tok;
    while (hs >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("bad design header token: " + tok);
      std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      if (key == "v")
        v = std::stoi(val);
      else if (key == "t")
        t = std::stoi(val);
      else if (key == "lambda") {
        auto q = parse_rational(val);
        if (!q) throw std::runtime_error("bad lambda: " + val);
        lambda = *q;
      } else {
        throw std::runtime_error("unknown design header key: " + key);
      }
    }
  }
  if (v < 1 || t < 0) throw std::runtime_error("incomplete design header");
  std::vector<std::vector<int>> blocks;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<int> blk;
    int x;
    while (ls >> x) blk.push_back(x);
    if (!blk.empty()) blocks.push_back(std::move(blk));
  }
  return DesignFile{BlockDesign::from_blocks(v, blocks), t, lambda};
}

void save_design(const std::string& path, const BlockDesign& d, int t,
                 const Rational& lambda) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write design file: " + path);
  out << "v=" << d.v() << " t=" << t << " lambda=" << lambda.get_str() << "\n";
  for (const auto& blk : d.blocks()) {
    for (size_t i = 0; i < blk.size(); ++i) out << (i ? " " : "") << blk[i];
    out << "\n";
  }
}

OrthogonalArray load_oa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open OA file: " + path);
  OrthogonalArray a;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty()) continue;
    std::vector<int8_t> row;
    for (char ch : line) {
      if (ch == '+')
        row.push_back(1);
      else if (ch == '-')
        row.push_back(-1);
      else
        throw std::runtime_error("bad OA character");
    }
    if (a.rows.empty()) a.l = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != a.l)
      throw std::runtime_error("ragged OA file");
    a.rows.push_back(std::move(row));
  }
  if (a.rows.empty()) throw std::runtime_error("empty OA file");
  return a;
}

void save_oa(const std::string& path, const OrthogonalArray& a) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write OA file: " + path);
  for (const auto& row : a.rows) {
    for (int8_t x : row) out << (x > 0 ? '+' : '-');
    out << "\n";
  }
}

std::string data_dir() {
  if (const char* env = std::getenv("CUBFORGE_DATA"); env && *env) return env;
  return CUBFORGE_SOURCE_DATA_DIR;
}

DesignFile catalog_design(const std::string& name) {
  return load_design(data_dir() + "/" + name + ".design");
}

}  // namespace cubforge::designs
