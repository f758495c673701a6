// Regenerates the design catalog under data/. The shipped files are the
// committed outputs of this tool; rerun after changing a construction.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cubforge/designs.hpp"

using namespace cubforge;
using designs::BlockDesign;

namespace {

// lines {i, i+4, i+5} mod 7 extended by a new point, plus their complements
BlockDesign make_sqs8() {
  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < 7; ++i) {
    std::vector<int> line = {i, (i + 4) % 7, (i + 5) % 7};
    std::vector<int> ext = line;
    ext.push_back(7);
    blocks.push_back(ext);
    std::vector<int> comp;
    for (int p = 0; p < 7; ++p)
      if (p != line[0] && p != line[1] && p != line[2]) comp.push_back(p);
    blocks.push_back(comp);
  }
  return BlockDesign::from_blocks(8, blocks);
}

BlockDesign make_fano() {
  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < 7; ++i)
    blocks.push_back({i, (i + 1) % 7, (i + 3) % 7});
  return BlockDesign::from_blocks(7, blocks);
}

// GF(9) = F3[i]/(i^2 + 1); elements a + 3b for a, b in {0,1,2}; infinity = 9.
struct GF9 {
  static int add(int x, int y) {
    return (x % 3 + y % 3) % 3 + 3 * ((x / 3 + y / 3) % 3);
  }
  static int neg(int x) { return (3 - x % 3) % 3 + 3 * ((3 - x / 3) % 3); }
  static int mul(int x, int y) {
    int a = x % 3, b = x / 3, c = y % 3, d = y / 3;
    int re = (a * c + 2 * b * d) % 3;  // i^2 = -1 = 2
    int im = (a * d + b * c) % 3;
    return re + 3 * im;
  }
  static int inv(int x) {
    for (int y = 1; y < 9; ++y)
      if (mul(x, y) == 1) return y;
    return -1;
  }
};

// The 3-(10,4,1) design: images of {0,1,2,inf} under all Moebius maps.
BlockDesign make_inversive_plane() {
  const int INF = 9;
  std::set<std::vector<int>> blocks;
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b)
      for (int c = 0; c < 9; ++c)
        for (int d = 0; d < 9; ++d) {
          int det = GF9::add(GF9::mul(a, d), GF9::neg(GF9::mul(b, c)));
          if (det == 0) continue;
          auto apply = [&](int z) {
            if (z == INF) {
              if (c == 0) return INF;
              return GF9::mul(a, GF9::inv(c));
            }
            int num = GF9::add(GF9::mul(a, z), b);
            int den = GF9::add(GF9::mul(c, z), d);
            if (den == 0) return INF;
            return GF9::mul(num, GF9::inv(den));
          };
          std::vector<int> img = {apply(0), apply(1), apply(2), apply(INF)};
          std::sort(img.begin(), img.end());
          blocks.insert(img);
        }
  std::vector<std::vector<int>> bl(blocks.begin(), blocks.end());
  return BlockDesign::from_blocks(10, bl);
}

// Symmetric 2-(25,9,3) design by exact backtracking. No difference set
// exists over a group of order 25 (exhausted separately), so the search
// works on raw 9-subsets, pruned hard by the symmetric-design property that
// every pair of blocks meets in exactly lambda points.
BlockDesign make_sym_25_9_3() {
  constexpr int V = 25, K = 9, LAMBDA = 3, NBLOCKS = 25, RDEG = 9;
  std::vector<uint32_t> all9;
  uint32_t c = (1u << K) - 1;
  while (c < (1u << V)) {
    all9.push_back(c);
    uint32_t lo = c & -c, hi = c + lo;
    c = (((c ^ hi) >> 2) / lo) | hi;
  }
  std::vector<int> deg(V, 0);
  std::vector<std::vector<int>> paircnt(V, std::vector<int>(V, 0));
  std::vector<uint32_t> saturated(V, 0);
  std::vector<uint32_t> chosen;
  auto apply = [&](uint32_t blk, int delta) {
    std::vector<int> pts;
    for (uint32_t m = blk; m; m &= m - 1) pts.push_back(__builtin_ctz(m));
    for (int p : pts) deg[p] += delta;
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j) {
        int a = pts[i], b = pts[j];
        paircnt[a][b] += delta;
        paircnt[b][a] += delta;
        if (paircnt[a][b] == LAMBDA) {
          saturated[a] |= 1u << b;
          saturated[b] |= 1u << a;
        } else {
          saturated[a] &= ~(1u << b);
          saturated[b] &= ~(1u << a);
        }
      }
  };
  auto candidate_ok = [&](uint32_t cand) {
    for (uint32_t m = cand; m; m &= m - 1) {
      int p = __builtin_ctz(m);
      if (deg[p] >= RDEG) return false;
      if (cand & saturated[p] & ~(1u << p)) return false;
    }
    return true;
  };
  std::function<bool(const std::vector<uint32_t>&)> rec =
      [&](const std::vector<uint32_t>& cands) -> bool {
    if (chosen.size() == NBLOCKS) {
      for (int p = 0; p < V; ++p)
        if (deg[p] != RDEG) return false;
      return true;
    }
    int pivot = -1;
    for (int p = 0; p < V; ++p)
      if (deg[p] < RDEG) {
        pivot = p;
        break;
      }
    if (pivot < 0) return false;
    if (RDEG - deg[pivot] >
        NBLOCKS - static_cast<long>(chosen.size()))
      return false;
    for (uint32_t cand : cands) {
      if (!(cand >> pivot & 1) || !candidate_ok(cand)) continue;
      apply(cand, +1);
      chosen.push_back(cand);
      std::vector<uint32_t> next;
      next.reserve(cands.size());
      for (uint32_t d : cands) {
        if (d == cand) continue;
        if (__builtin_popcount(d & cand) != LAMBDA) continue;
        if ((d >> pivot & 1) && d < cand) continue;
        next.push_back(d);
      }
      if (rec(next)) return true;
      chosen.pop_back();
      apply(cand, -1);
    }
    return false;
  };
  uint32_t first = (1u << K) - 1;
  apply(first, +1);
  chosen.push_back(first);
  std::vector<uint32_t> cands;
  for (uint32_t d : all9)
    if (d != first && __builtin_popcount(d & first) == LAMBDA)
      cands.push_back(d);
  if (!rec(cands))
    throw std::runtime_error("no symmetric 2-(25,9,3) design found");
  std::vector<uint64_t> masks(chosen.begin(), chosen.end());
  return BlockDesign(25, masks);
}

void emit(const std::string& dir, const std::string& name,
          const BlockDesign& d, int t, long lambda) {
  auto rep = designs::verify_design(d, t);
  if (!rep.balanced_at_t || !rep.lambda_by_t[t] ||
      *rep.lambda_by_t[t] != lambda)
    throw std::runtime_error(name + ": design does not verify as declared");
  designs::save_design(dir + "/" + name + ".design", d, t, Rational(lambda));
  std::printf("%-18s v=%-3d b=%-3d t=%d lambda=%ld%s\n", name.c_str(), d.v(),
              d.block_count(), t, lambda, rep.regular ? " (regular)" : "");
}

}  // namespace

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : designs::data_dir();
  emit(dir, "fano", make_fano(), 2, 1);
  emit(dir, "sqs8", make_sqs8(), 3, 1);
  emit(dir, "invplane_10_4_1", make_inversive_plane(), 3, 1);
  emit(dir, "sym_25_9_3", make_sym_25_9_3(), 2, 3);
  return 0;
}
