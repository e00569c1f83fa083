#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace frobweb {

using Complex = std::complex<double>;

/// Small exact rationals: monomial exponents and symmetry weights.
/// Compare only against Ratio operands: with C++20 rewritten comparisons,
/// boost 1.74 rational==int recurses forever.
using Ratio = boost::rational<std::int64_t>;

/// Arbitrary-precision rationals for exact polynomial coefficients.
using Exact = boost::multiprecision::cpp_rational;

struct Point {
  Complex x;
  Complex y;
};

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline double to_double(const Ratio& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline double to_double(const Exact& r) { return static_cast<double>(r); }

inline Exact to_exact(const Ratio& r) {
  return Exact(r.numerator()) / Exact(r.denominator());
}

inline bool is_integer(const Ratio& r) { return r.denominator() == 1; }

/// Total order used for root sorting: real part first (with a relative
/// tolerance so conjugate pairs are not split by rounding), then imaginary.
inline bool lex_less(Complex a, Complex b, double tol = 1e-12) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (std::abs(a.real() - b.real()) > tol * scale) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace frobweb
