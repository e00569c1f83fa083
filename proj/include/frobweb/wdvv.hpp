#pragma once

#include "frobweb/web.hpp"

namespace frobweb {

struct Residual3 {
  Complex r1, r2, r3;
  double max_abs() const;
};

/// S_x - A_y/2, A_x - 2B_y, B_x - S B_y - B S_y + A A_y/2.
Residual3 wdvv0_residual(const CubicWeb& web, Point p);

/// The same three residuals as exact polynomials (polynomial webs only).
struct ExactResidual3 {
  ExactPoly r1, r2, r3;
  bool is_zero() const { return r1.is_zero() && r2.is_zero() && r3.is_zero(); }
};
ExactResidual3 wdvv0_residual_exact(const CubicWeb& web);

/// Residuals of the hydrodynamic system for <e,e> = 1, each equation
/// solved for the x-derivative. DenominatorZero where AS - B vanishes.
Residual3 wdvv1_residual(const CubicWeb& web, Point p);

enum class PotentialKind {
  kKind0,  // <e,e> = 0: f_xxx = f_yyy f_yxx - f_yyx^2
  kKind1,  // <e,e> = 1: f_xxx f_yyy - f_xxy f_xyy = 1
};

struct Potential {
  ExactPoly f;
  PotentialKind kind = PotentialKind::kKind0;
  Weights weights;
};

/// f with f_yyy = S, f_yyx = A/2, f_yxx = B, f_xxx = BS - A^2/4 for a
/// polynomial web. Monomials of total degree <= 2 are never produced, so
/// the integration constants are zero. NotIntegrable when the four third
/// partials are inconsistent, NotHomogeneous when f has two weighted degrees.
Potential reconstruct_potential(const CubicWeb& web);

ExactPoly associativity_residual_exact(const Potential& f);
Complex associativity_residual(const Potential& f, Point p);

/// kind0: S = f_yyy, A = 2 f_yyx, B = f_yxx. kind1: the binary cubic
/// f_yyy dy^3 + f_yyx dy^2 dx - f_yxx dy dx^2 - f_xxx dx^3, which is monic
/// after division by f_yyy (DivisionByZeroField if f_yyy is identically 0).
CubicWeb characteristic_web(const Potential& f);

}  // namespace frobweb
