#include <doctest.h>

#include <cmath>

#include "cubforge/moments.hpp"

using namespace cubforge;
using namespace cubforge::moments;

namespace {

// Independent oracle: Simpson quadrature of int_{-1}^{1} t^q (1-t^2)^((m-3)/2)
// normalized, which is the sphere moment of y_1^q.
double sphere_axis_moment_quad(int m, int q) {
  auto f = [&](double t, int power) {
    return std::pow(t, power) * std::pow(1 - t * t, (m - 3) / 2.0);
  };
  const int n = 40000;
  double h = 2.0 / n;
  double num = 0, den = 0;
  for (int i = 0; i <= n; ++i) {
    double t = -1 + i * h;
    double wsimp = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    num += wsimp * f(t, q);
    den += wsimp * f(t, 0);
  }
  return num / den;
}

// int_0^inf x^k exp(-x^2/2) dx / int_0^inf exp(-x^2/2) dx by Simpson on [0, 40]
double gaussian_halfline_moment_quad(int k) {
  const int n = 200000;
  const double top = 40;
  double h = top / n;
  double num = 0, den = 0;
  for (int i = 0; i <= n; ++i) {
    double x = i * h;
    double wsimp = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    double g = std::exp(-x * x / 2);
    num += wsimp * std::pow(x, k) * g;
    den += wsimp * g;
  }
  return num / den;
}

}  // namespace

TEST_CASE("sphere moments") {
  CHECK(sphere_moment(3, {2, 0, 0}) == ratio(1, 3));
  CHECK(sphere_moment(5, {1, 0, 0, 0, 0}) == 0);
  // frozen from the quadrature oracle below: m=7, y1^6 -> 5/231
  CHECK(sphere_moment(7, {6, 0, 0, 0, 0, 0, 0}) == ratio(5, 231));
  double oracle = sphere_axis_moment_quad(7, 6);
  CHECK(std::abs(oracle - 5.0 / 231.0) < 1e-9);
  double mixed = sphere_axis_moment_quad(5, 4);
  CHECK(std::abs(mixed -
                 sphere_moment(5, {4, 0, 0, 0, 0}).get_d()) < 1e-9);
}

TEST_CASE("c_q") {
  CHECK(c_q(7, 6) == ratio(5, 231));
  CHECK(c_q(9, 0) == 1);
  CHECK(c_q(4, 2) == ratio(1, 4));
  CHECK_THROWS_AS(c_q(4, 3), std::domain_error);
}

TEST_CASE("gaussian moments") {
  CHECK(gaussian_moment({2}) == 1);
  CHECK(gaussian_moment({4, 2}) == 3);
  CHECK(gaussian_moment({1, 2}) == 0);
  // oracle: E X^4 = 3, E X^6 = 15 on the half line (even powers agree)
  CHECK(std::abs(gaussian_halfline_moment_quad(4) - 3.0) < 1e-6);
  CHECK(std::abs(gaussian_halfline_moment_quad(6) - 15.0) < 1e-5);
}

TEST_CASE("orthant moments") {
  CHECK(orthant_moment({1}) == 1);
  CHECK(orthant_moment({2}) == 3);
  CHECK(orthant_moment({1, 1}) == 1);
  CHECK(orthant_moment({3}) == 15);
  CHECK(orthant_moment({2, 1}) == 3);
}

TEST_CASE("radial factors") {
  CHECK(radial_factor(RadialWeight::gaussian, 3, 2) == 3);
  CHECK(radial_factor(RadialWeight::gaussian, 5, 0) == 1);
  CHECK(radial_factor(RadialWeight::gaussian, 2, 4) == 8);
}

TEST_CASE("consistency triangle m <= 9, degree <= 10") {
  for (int m = 2; m <= 9; ++m) {
    for (int q = 0; q <= 10; q += 2) {
      Rational rf = radial_factor(RadialWeight::gaussian, m, q);
      for (const auto& e : exponents_of_degree(m, q)) {
        CHECK(gaussian_moment(e) == sphere_moment(m, e) * rf);
      }
    }
  }
}

TEST_CASE("orthant and gaussian cohere under squaring") {
  for (int m = 1; m <= 5; ++m)
    for (int d = 0; d <= 5; ++d)
      for (const auto& e : exponents_of_degree(m, d)) {
        Exponent doubled(e);
        for (auto& x : doubled) x *= 2;
        CHECK(orthant_moment(e) == gaussian_moment(doubled));
      }
}

TEST_CASE("sphere second moments sum to one") {
  for (int m = 2; m <= 9; ++m) {
    Rational total = 0;
    for (int i = 0; i < m; ++i) {
      Exponent e(m, 0);
      e[i] = 2;
      total += sphere_moment(m, e);
    }
    CHECK(total == 1);
  }
}
