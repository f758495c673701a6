#pragma once

#include <vector>

#include "cubforge/rational.hpp"

namespace cubforge::moments {

// Exponent vector of a monomial; length = ambient dimension.
using Exponent = std::vector<unsigned>;

unsigned degree(const Exponent& a);

// Normalized surface measure on S^{m-1}:
//   0 for odd monomials, else prod (a_i-1)!! * (m-2)!!/(m+q-2)!!.
Rational sphere_moment(int m, const Exponent& a);

// c_q = integral of y_1^q over the normalized sphere; q must be even.
Rational c_q(int m, int q);

// Standard Gaussian N(0, I): prod (a_i-1)!!, 0 for odd monomials.
Rational gaussian_moment(const Exponent& a);

// First-orthant image of the Gaussian under coordinate squaring:
// moment of x^a equals the Gaussian moment of x^(2a), i.e. prod (2a_i-1)!!.
Rational orthant_moment(const Exponent& a);

enum class RadialWeight { gaussian };

// Ratio of the q-th to the 0-th radial moment of the weight, i.e. E|x|^q for
// the normalized measure; for the Gaussian and even q this is
// (m+q-2)!!/(m-2)!!.
Rational radial_factor(RadialWeight w, int m, int q);

// All exponent vectors of length m with given total degree, graded
// lexicographic order.
std::vector<Exponent> exponents_of_degree(int m, int q);

}  // namespace cubforge::moments
