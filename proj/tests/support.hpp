#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "frobweb/scalar.hpp"

namespace testsupport {

using frobweb::Complex;
using frobweb::Point;

inline bool near(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

inline bool rel_near(Complex a, Complex b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Deterministic points in a real rectangle.
inline std::vector<Point> real_points(unsigned seed, int n, double x0, double x1, double y0,
                                      double y1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    const double x = ux(rng);
    out.push_back({x, uy(rng)});
  }
  return out;
}

/// Deterministic complex points with real parts in a rectangle and small
/// imaginary parts.
inline std::vector<Point> complex_points(unsigned seed, int n, double x0, double x1, double y0,
                                         double y1, double im = 0.2) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1), ui(-im, im);
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    const Complex x{ux(rng), ui(rng)};
    const Complex y{uy(rng), ui(rng)};
    out.push_back({x, y});
  }
  return out;
}

}  // namespace testsupport
