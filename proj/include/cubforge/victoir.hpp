#pragma once

#include <string>
#include <vector>

#include "cubforge/cubature.hpp"
#include "cubforge/designs.hpp"

namespace cubforge::victoir {

// Reference to one component of a host formula.
struct OrbitSlot {
  size_t comp_index = 0;
};

// Slots whose component is an L-pattern orbit with the given pattern length.
std::vector<OrbitSlot> find_l_slots(const cubature::CubatureFormula& f, int l);
// Slots whose component is a sign orbit with the given support size.
std::vector<OrbitSlot> find_sign_slots(const cubature::CubatureFormula& f,
                                       int wt);

// Replace an L-pattern orbit by the columns of the generalized incidence
// matrix of a single-block-size design of strength >= the host's stated
// index/degree; the orbit mass is spread evenly over the b columns.
cubature::CubatureFormula substitute_design(
    const cubature::CubatureFormula& f, const OrbitSlot& slot,
    const designs::BlockDesign& d, const FieldElement& alpha,
    const FieldElement& beta);

// Replace a family of L-pattern orbits (one per block size k_i, weights in
// the proportion c * b_i / (C(m,k_i) b)) by the b incidence columns with
// weight c/b each.
cubature::CubatureFormula substitute_regular(
    const cubature::CubatureFormula& f, const std::vector<OrbitSlot>& slots,
    const designs::BlockDesign& d, const FieldElement& alpha,
    const FieldElement& beta);

// Replace a sign orbit by the rows of an orthogonal array of strength >= the
// host's stated index/degree; row signs are applied to the nonzero
// coordinates of the representative in increasing coordinate order.
cubature::CubatureFormula substitute_oa(const cubature::CubatureFormula& f,
                                        const OrbitSlot& slot,
                                        const designs::OrthogonalArray& a);

struct PipelineResult {
  cubature::CubatureFormula formula;
  std::vector<std::string> log;
};

// Named end-to-end constructions: ex45_s6_91, ex46_s8_457, main2i_m16,
// main2ii_m25.
PipelineResult pipeline(const std::string& name);
std::vector<std::string> pipeline_names();

}  // namespace cubforge::victoir
