#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubforge/cubature.hpp"
#include "cubforge/field.hpp"

namespace cubforge::hilbert {

using LinearForm = std::vector<FieldElement>;

// lhs_multiplier * (sum x_i^2)^(q/2) = sum_i coeff_i * <x, L_i>^q
struct HilbertIdentity {
  int m = 0;
  int q = 0;  // even
  Rational lhs_multiplier = 1;
  std::vector<std::pair<FieldElement, LinearForm>> terms;

  long term_count() const { return static_cast<long>(terms.size()); }
};

struct IdentityCheck {
  bool valid = false;
  long monomials = 0;
  std::optional<moments::Exponent> failing_monomial;
  std::string got, want;
};

// Exact multinomial expansion of both sides.
IdentityCheck verify_identity(const HilbertIdentity& id);

// Dimension lower bound C(m + q/2 - 1, m - 1) on the number of forms.
Integer form_count_lower_bound(int m, int q);

// Spherical index-q formula -> identity with terms (w_i / c_q, x_i).
HilbertIdentity cubature_to_identity(const cubature::CubatureFormula& f,
                                     int q);

// Identity -> spherical index-q formula: points L_i (normalized on
// verification), weights coeff_i |L_i|^q c_q / lhs.
cubature::CubatureFormula identity_to_cubature(const HilbertIdentity& id);

// Scale every form so its first nonzero coefficient is 1 (folding the factor
// into the coefficient), merge equal forms, and sort; q even, so antipodal
// forms are also folded together.
HilbertIdentity canonicalized(const HilbertIdentity& id);
bool same_identity(const HilbertIdentity& a, const HilbertIdentity& b);

struct RationalityReport {
  bool all_rational = false;
  int field_degree = 1;            // in {1, 2, 4, 8}
  std::vector<int> radicands;      // generators among {2, 3, 5, 6, 10, 15, 30}
  std::vector<std::string> unsupported;  // coefficients outside the tower
};
RationalityReport rationality_report(const HilbertIdentity& id);

// Catalog. Names: kurschak (param k = 1, 2, 3...), ns_family (param a),
// schur, hurwitz, sawa91, reznick.
HilbertIdentity catalog_identity(const std::string& name,
                                 const std::optional<Rational>& param = {});
std::vector<std::string> catalog_identity_names();

// Infeasibility of lhs*(sum x^2)^(q/2) as an R-linear combination of q-th
// powers of forms with coefficients in {0, -1, +1}.
struct Pm1Report {
  bool representable = false;
  int m = 0, q = 0;
  long forms = 0;
  long rank_a = 0, rank_aug = 0;
  // the two-monomial ratio obstruction for q = 8
  std::string ratio_note;
  // solution over the form classes when representable (q = 4 control)
  std::vector<Rational> solution;
};
Pm1Report no_pm1_representation(int m, int q = 8);

// File format: header "m q lhs", then "coeff | a1, a2, ..., am" per line.
HilbertIdentity load_identity(const std::string& path);
void save_identity(const std::string& path, const HilbertIdentity& id);
// Grouped display form with +- orbits collapsed.
std::string render_identity(const HilbertIdentity& id);

}  // namespace cubforge::hilbert
