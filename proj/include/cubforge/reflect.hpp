#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubforge/cubature.hpp"
#include "cubforge/field.hpp"
#include "cubforge/rational.hpp"

namespace cubforge::reflect {

// sum over distinct monomials with the given exponent pattern, e.g.
// pattern {4,2} -> sum_{i != j} x_i^4 x_j^2.
struct SymTerm {
  FieldElement coeff;
  std::vector<unsigned> pattern;
};
struct SymPoly {
  std::vector<SymTerm> terms;
};

// c * x1^a * x2^c2 * p^b with p = x_2^2 + ... + x_m^2.
struct ZonalTerm {
  Rational coeff;
  unsigned x1_pow = 0;
  unsigned x2_pow = 0;
  unsigned p_pow = 0;
};
struct ZonalPoly {
  std::vector<ZonalTerm> terms;
};

// A G-invariant harmonic polynomial, either written out as a symmetric
// combination or given as the group sum of a zonal seed h.
struct InvariantSpec {
  std::string name;
  int degree = 0;
  enum class Kind { sym, zonal_orbit_sum, sym_orbit_sum } kind = Kind::sym;
  SymPoly sym;      // kind sym and sym_orbit_sum
  ZonalPoly zonal;  // kind zonal_orbit_sum
};

struct ReflectionGroupData {
  std::string label;  // F4, H3, H4, E6, E7, E8, or A/B/D with a rank
  int rank = 0;
  int dim = 0;  // ambient dimension (rank, except A_{m-1} acting on R^m)
  std::vector<std::vector<FieldElement>> roots;
  std::vector<std::vector<FieldElement>> corners;  // (v_i, alpha_i) = 1
  std::vector<FieldElement> corner_norm2;
  std::vector<long> orbit_sizes;  // stated N_i; empty for A/B/D
  std::vector<int> exponents;
  Integer group_order;
  std::vector<InvariantSpec> invariants;  // the six exceptional groups only
};

// Labels: F4 H3 H4 E6 E7 E8, plus parametrized A, B, D (pass the rank).
ReflectionGroupData group_data(const std::string& label, int rank = 0);
std::vector<std::string> exceptional_labels();

// --- orbits -----------------------------------------------------------------

struct OrbitOptions {
  long cap = 1'000'000;
};

// BFS closure of x under the generating reflections, exact coordinates.
std::vector<std::vector<FieldElement>> orbit(const ReflectionGroupData& g,
                                             const std::vector<FieldElement>& x,
                                             const OrbitOptions& opt = {});

// Streaming variant; returns the orbit size.
long orbit_scan(const ReflectionGroupData& g,
                const std::vector<FieldElement>& x,
                const std::function<void(const std::vector<FieldElement>&)>& f,
                const OrbitOptions& opt = {});

// --- invariant theory ---------------------------------------------------------

// Coefficients of prod_{i >= 2} 1/(1 - t^(1+d_i)) up to degree `up_to`:
// dimensions of the G-invariant harmonic spaces.
std::vector<long> molien_dims(const ReflectionGroupData& g, int up_to);

// Exact value of the invariant at x. Zonal group sums are evaluated as
// (|G| / |x^G|) * sum over the orbit of the seed polynomial.
FieldElement eval_invariant(const InvariantSpec& spec,
                            const ReflectionGroupData& g,
                            const std::vector<FieldElement>& x,
                            const OrbitOptions& opt = {});

struct UVector {
  std::string name;
  int degree = 0;
  std::vector<FieldElement> values;  // per corner vector, at v_k / |v_k|
};

UVector u_vector(const ReflectionGroupData& g, const InvariantSpec& spec);
// All invariants of the group, evaluated once and cached per label.
const std::vector<UVector>& cached_u_vectors(const ReflectionGroupData& g);

bool check_harmonic(const InvariantSpec& spec, const ReflectionGroupData& g);
// Spot check f(s_alpha(x)) = f(x) at pseudorandom rational points (written-out
// symmetric combinations only; group sums are invariant by construction).
bool check_invariance(const InvariantSpec& spec, const ReflectionGroupData& g,
                      unsigned seed = 1);

// --- Euclidean design conditions ----------------------------------------------

struct OrbitRadius {
  int corner_index = 0;  // 0-based
  cubature::RadialScale radius;
};

// Conditions sum_k w_k N_k r_k^(2j+l) f(v_k') = 0 for every invariant f of
// degree l <= t and 0 <= j <= (t-l)/2; exact where radius powers are
// rational. Throws when an invariant basis is missing for a needed degree.
cubature::VerificationReport euclidean_design_check(
    const ReflectionGroupData& g, const std::vector<OrbitRadius>& orbits,
    const std::vector<Rational>& weights, int t);

// --- nonexistence certificates -----------------------------------------------

struct PositivityCertificate {
  std::vector<std::string> vector_names;
  std::vector<FieldElement> coefficients;
  std::vector<FieldElement> combination;  // entrywise positive
};

// Searches (by exact Fourier-Motzkin elimination) for a combination of the
// even-degree u-vectors up to 2s with all entries positive. nullopt = no
// such combination exists (a valid outcome, not an error).
std::optional<PositivityCertificate> certify_nonexistence(
    const ReflectionGroupData& g, int two_s);

// Validates a proposed combination exactly.
bool validate_certificate(const ReflectionGroupData& g,
                          const PositivityCertificate& cert);

// --- weight classification ------------------------------------------------------

struct AffineExpr {
  Rational constant;
  std::map<int, Rational> coeffs;  // over free corner indices

  Rational eval(const std::map<int, Rational>& values) const;
};

struct WeightFamily {
  bool feasible = false;
  int n = 0;
  std::vector<int> free_indices;     // 0-based corner indices
  std::vector<AffineExpr> weights;   // one per corner index
  // exact nonnegativity interval when there is a single free parameter
  std::optional<std::pair<Rational, Rational>> interval;
};

// Solves { u_l . (N o w) = 0 : l <= t, dim > 0 } with sum N_k w_k = 1 over
// the rationals; free parameters chosen in corner-vector index order.
WeightFamily classify_weights(const ReflectionGroupData& g, int t);

std::vector<Rational> family_sample(const WeightFamily& fam,
                                    const std::map<int, Rational>& frees);

// An exact interior-ish nonnegative member of the family, found by
// Fourier-Motzkin over the free parameters; nullopt when the nonnegative
// region is empty.
std::optional<std::map<int, Rational>> feasible_frees(const WeightFamily& fam);

// --- orbit designs ----------------------------------------------------------------

// Equal-weight spherical formula on the normalized orbit of x.
cubature::CubatureFormula sphere_design_from_orbit(
    const ReflectionGroupData& g, const std::vector<FieldElement>& x,
    const OrbitOptions& opt = {});

// --- weight-region data files --------------------------------------------------
// Text description of affinely parametrized weight families with ordered
// variable bounds; used for the published E7/E8 classifications.

struct RegionFile {
  int n = 0;  // weight count
  struct Bound {
    bool present = false;
    bool strict = false;
    AffineExpr expr;  // over previously bound variables (by weight index)
  };
  struct Directive {
    int var = 0;  // weight index being pinned or bounded
    bool is_set = false;
    AffineExpr value;  // for set
    Bound lo, hi;      // for bind
  };
  struct Region {
    std::string name;
    std::vector<Directive> steps;
  };
  std::vector<std::pair<int, AffineExpr>> shared_lets;  // dependent weights
  struct RegionLets {
    std::vector<std::pair<int, AffineExpr>> lets;
  };
  std::vector<Region> regions;
  std::vector<RegionLets> region_lets;  // parallel to regions
};

RegionFile load_regions(const std::string& path);

// Weight vectors inside the region; `fractions` picks the interior points,
// e.g. {1/3, 2/3} for two samples per free direction.
std::vector<std::vector<Rational>> sample_region(
    const RegionFile& rf, size_t region_index,
    const std::vector<Rational>& fractions);

}  // namespace cubforge::reflect
