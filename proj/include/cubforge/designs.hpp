#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubforge/field.hpp"
#include "cubforge/rational.hpp"

namespace cubforge::designs {

// Incidence structure on points {0..v-1}; blocks pairwise distinct, nonempty.
// v <= 64 so blocks are stored as bitmasks.
class BlockDesign {
 public:
  BlockDesign(int v, std::vector<uint64_t> block_masks);
  static BlockDesign from_blocks(int v,
                                 const std::vector<std::vector<int>>& blocks);

  int v() const { return v_; }
  int block_count() const { return static_cast<int>(masks_.size()); }
  const std::vector<uint64_t>& masks() const { return masks_; }
  std::vector<std::vector<int>> blocks() const;
  std::map<int, int> size_multiplicities() const;

 private:
  int v_;
  std::vector<uint64_t> masks_;
};

struct DesignReport {
  int v = 0;
  int b = 0;
  std::map<int, int> block_sizes;  // size -> count
  // lambda_by_t[t'] is the constant coverage count at level t' when coverage
  // is constant, else nullopt. Index 0..t.
  std::vector<std::optional<Integer>> lambda_by_t;
  bool balanced_at_t = false;  // constant coverage at the requested t
  bool regular = false;        // constant coverage at every t' <= t
  int max_constant_level = -1;

  bool is_t_design() const {
    return balanced_at_t && block_sizes.size() == 1;
  }
};

DesignReport verify_design(const BlockDesign& d, int t);

// Number of blocks of a t-(v,k,lambda) design containing a fixed t'-subset:
// lambda * C(v-t', t-t') / C(k-t', t-t').
Rational block_count_formula(int v, int k, int t, const Rational& lambda,
                             int t_prime);

// Point-deletion: blocks avoiding x kept, blocks through x shrunk by x.
BlockDesign derive_design(const BlockDesign& d, int x);

// Fisher-type lower bound for regular 2e-wise balanced designs with f
// distinct block sizes: sum_{i=0}^{f-1} C(v, e-i).
Integer xiang_bound(int v, int e, int f);

struct SearchLimits {
  int max_v = 10;
  uint64_t max_nodes = 50'000'000;
};

// Exhaustive search for a t-(v,K,lambda) design; nullopt when none exists
// within the limits. Throws when v exceeds the cap.
std::optional<BlockDesign> search_design(int v, const std::vector<int>& sizes,
                                         int t, long lambda,
                                         const SearchLimits& lim = {});

// ---------------------------------------------------------------------------

// N x l matrix with entries +-1.
struct OrthogonalArray {
  int l = 0;
  std::vector<std::vector<int8_t>> rows;

  int n() const { return static_cast<int>(rows.size()); }
};

struct OaReport {
  bool ok = false;
  int strength_checked = 0;
  Rational index_lambda;  // N / 2^t when ok
  std::optional<std::vector<int>> violating_columns;
  bool centrally_symmetric = false;
  bool rows_distinct = false;
};

OaReport verify_oa(const OrthogonalArray& a, int t);

OrthogonalArray trivial_oa(int l);

// Rows = the span of the generator rows over F2, with 0 -> -1, 1 -> +1.
OrthogonalArray oa_from_linear_code(
    const std::vector<std::vector<uint8_t>>& generator_rows);

// OA(256, 16, 2, 4): Gray image of the quaternary Kerdock code of length 8.
OrthogonalArray nordstrom_robinson();

// OA(1024, 31, 2, 4): dual of the two-error-correcting BCH code of length 31,
// rows tr(a x + b x^3) over GF(32).
OrthogonalArray dual_bch_oa();

// Keep the first l columns.
OrthogonalArray oa_subarray(const OrthogonalArray& a, int l);

// v x b matrix: column of block B carries alpha on rows in B, beta elsewhere.
std::vector<std::vector<FieldElement>> generalized_incidence(
    const BlockDesign& d, const FieldElement& alpha, const FieldElement& beta);

// --- file formats ----------------------------------------------------------
// Design file: "v=<int> t=<int> lambda=<rational>" then one block per line of
// whitespace-separated 0-based point indices.
struct DesignFile {
  BlockDesign design;
  int declared_t;
  Rational declared_lambda;
};
DesignFile load_design(const std::string& path);
void save_design(const std::string& path, const BlockDesign& d, int t,
                 const Rational& lambda);

// OA file: one row per line of '+'/'-' characters.
OrthogonalArray load_oa(const std::string& path);
void save_oa(const std::string& path, const OrthogonalArray& a);

// Catalog lookup in the data directory (CUBFORGE_DATA overrides the
// compiled-in default). Known names: fano, sqs8, invplane_10_4_1, sym_25_9_3.
std::string data_dir();
DesignFile catalog_design(const std::string& name);

}  // namespace cubforge::designs
