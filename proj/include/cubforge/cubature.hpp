#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cubforge/field.hpp"
#include "cubforge/moments.hpp"
#include "cubforge/rational.hpp"

namespace cubforge::cubature {

// Radius stored as its q-th power: value = s^(1/q), s > 0 rational.
struct RadialScale {
  Rational s = 1;
  unsigned q = 1;

  // Exact value^k when representable as a rational.
  std::optional<Rational> pow(unsigned k) const;
  BigFloat to_float(int prec = BigFloat::kDefaultPrec) const;
  RadialScale reduced() const;  // minimal exponent representation
  bool same_value(const RadialScale& o) const;
};

struct CubPoint {
  RadialScale scale;                // point = scale * dir
  std::vector<FieldElement> dir;

  FieldElement dir_norm2() const;
  bool dir_is_zero() const;
};

enum class Domain { sphere, gaussian, orthant };
std::string domain_name(Domain d);

// Explicit weighted points.
struct PointSet {
  std::vector<CubPoint> pts;
  std::vector<Rational> weights;
};

// All coordinate placements of (alpha ... alpha, beta ... beta) with l alphas,
// scaled by `scale`; every point carries `point_weight`.
struct LPatternOrbit {
  int l = 0;
  FieldElement alpha = 1;
  FieldElement beta = 0;
  RadialScale scale;
  Rational point_weight;
};

// All sign changes on the nonzero coordinates of `rep`.
struct SignOrbit {
  CubPoint rep;
  Rational point_weight;
};

using Component = std::variant<PointSet, LPatternOrbit, SignOrbit>;

long component_size(const Component& c, int m);
Rational component_mass(const Component& c, int m);

struct CubatureFormula {
  Domain domain = Domain::orthant;
  int m = 0;
  std::vector<Component> comps;
  bool centrally_symmetric = false;  // annotation; never inferred silently
  std::optional<int> stated_index;
  std::optional<int> stated_degree;
  std::vector<std::string> notes;   // catalog remarks, e.g. corrected radii
  std::vector<std::string> trace;   // provenance steps

  long point_count() const;
  Rational total_weight() const;
  void note(std::string s) { notes.push_back(std::move(s)); }
  void step(std::string s) { trace.push_back(std::move(s)); }
};

struct FailedMonomial {
  moments::Exponent exponent;
  std::string got;
  std::string want;
};

struct VerificationReport {
  bool valid = false;
  bool exact = true;  // whole check ran in exact arithmetic
  long monomials_checked = 0;
  std::vector<FailedMonomial> failures;

  std::string summary() const;
};

// Exact check of sum w(x) x^alpha against the domain moment for every
// monomial of degree exactly q. Sphere-domain points are normalized to the
// unit sphere. Falls back to 256-bit floats (tolerance 2^-128) per monomial
// when a radius power is irrational.
VerificationReport verify_index(const CubatureFormula& f, int q);

// Same over all monomials of degree <= t; odd degrees are skipped only when
// the formula is annotated centrally symmetric (sphere/gaussian domains).
VerificationReport verify_degree(const CubatureFormula& f, int t);

// Transforms ----------------------------------------------------------------

// Gaussian index-q formula -> spherical index-q formula.
CubatureFormula to_sphere(const CubatureFormula& f, int q);

// One representative per antipodal pair, weight doubled.
CubatureFormula halve_antipodal(const CubatureFormula& f);
// Inverse of halve_antipodal: split every point into +-x with half weight.
CubatureFormula double_antipodal(const CubatureFormula& f);

// Orthant points z -> sign orbits of sqrt(z) with weight w / 2^wt(z).
CubatureFormula sqrt_points(const CubatureFormula& f);
// Sign-orbit formula -> orthant points z = rep^2 with weight w * 2^wt.
CubatureFormula square_points(const CubatureFormula& f);

enum class PatternGroup { L, signs, B };

std::vector<CubPoint> pattern_orbit(int m, int l, const FieldElement& alpha,
                                    const FieldElement& beta, PatternGroup g,
                                    const RadialScale& scale = {});

// Materialization and dedup --------------------------------------------------

std::vector<std::pair<CubPoint, Rational>> materialize(
    const CubatureFormula& f, long cap = 2'000'000);
CubatureFormula materialized(const CubatureFormula& f, long cap = 2'000'000);
// Canonical exact key; equal points (as vectors in R^m) get equal keys.
std::string point_key(const CubPoint& p);
CubPoint negated(const CubPoint& p);
// Merge coincident points, summing weights; drops zero-weight points.
CubatureFormula dedup(const CubatureFormula& f);

// Catalog of the explicit orthant hosts -------------------------------------
// Names: lem42i (m>=3), lem42ii (m=1 mod 3), lem62i (m=2 mod 6, m>=8),
// lem62ii (m=1 mod 6, m>=7), ex45 (m=7), ex46 (m=9).
CubatureFormula catalog_formula(const std::string& name, int m);
std::vector<std::string> catalog_names();

// Solves the index-3 moment system for the orbit radii of a host with
// orbit pattern {all-coordinates, axis, joined blocks of sizes ks} and the
// stated per-point weights; used as the oracle for the catalog constants.
struct Index3Radii {
  Rational all_cubed;    // all-coordinates orbit radius^3
  Rational axis_cubed;   // axis orbit radius^3
  Rational block_cubed;  // joined block-orbit radius^3
};
Index3Radii solve_index3_radii(int m, const std::vector<int>& ks,
                               const Rational& w_all, const Rational& w_axis,
                               const Rational& w_block);

// File format ----------------------------------------------------------------
CubatureFormula load_formula(const std::string& path);
void save_formula(const std::string& path, const CubatureFormula& f);

}  // namespace cubforge::cubature
