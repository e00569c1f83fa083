#pragma once

#include <array>
#include <memory>
#include <span>

#include "frobweb/web.hpp"

namespace frobweb {

namespace detail {
inline Complex value_of(const Complex& c) { return c; }
inline Complex value_of(const Jet2& j) { return j.v; }
}  // namespace detail

/// ybar = y + r x^k applied to a polynomial web.
CubicWeb shear_web(const CubicWeb& web, const Exact& r, int k);

/// r such that the sheared web satisfies the first WDVV0 equation
/// identically; the other two are then checked exactly. Each coefficient of
/// the first residual is a polynomial in r, recovered by exact interpolation
/// from integer samples. When the shear breaks the symmetry (k w_x != w_y)
/// only r = 0 is admissible.
Exact shear_fit(const CubicWeb& web, int k);

/// Integration controls. Tolerances are per step; max_step also bounds the
/// knot spacing of the stored profile.
struct OdeOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  double max_step = 0.01;
  double blowup_norm = 1e8;
};

/// (s, a, b) with s' = a, a' = 6b, b' = 4sb - a^2.
template <class T>
std::array<T, 3> parabolic_rhs(const std::array<T, 3>& u) {
  return {u[1], 6.0 * u[2], 4.0 * u[0] * u[2] - u[1] * u[1]};
}

/// Right-hand side of the reduced hyperbolic system in (sigma, alpha, beta)
/// with reduction constant k. DenominatorZero where
/// 1 - k s sigma + k^2 s^2 alpha - k^3 s^3 beta vanishes.
template <class T>
std::array<T, 3> hyperbolic_rhs(const T& s, const std::array<T, 3>& u, double k) {
  const T &sg = u[0], &al = u[1], &be = u[2];
  const T ks = k * s;
  const T den = 1.0 - ks * sg + ks * ks * al - ks * ks * ks * be;
  if (std::abs(detail::value_of(den)) < 1e-12) {
    throw Error(ErrorKind::kDenominatorZero, "reduced hyperbolic system is singular here");
  }
  const double k1 = k + 1.0;
  return {(k1 * al - k * k1 * s * (sg * al - 3.0 * be) + k * k * k1 * s * s * sg * be) / den,
          (6.0 * k1 * be - 2.0 * k * k1 * s * (al * al - sg * be) +
           2.0 * k * k * k1 * s * s * al * be) /
              den,
          (-k1 * (al * al - 4.0 * sg * be) - 2.0 * k * k1 * s * al * be +
           3.0 * k * k * k1 * s * s * be * be) /
              den};
}

struct ReducedFamily {
  std::shared_ptr<const Profile> profile;
  CubicWeb web;
  std::array<Complex, 3> initial;
  /// Exponent r of the first integral s = x y^r (0 for the parabolic case).
  Ratio r{0};
  int m0 = 0;
};

/// S = y s(x), A = y^2 a(x), B = y^3 b(x) with weights (0, 1), integrated
/// over [x0, x1] (must contain 0). BlowUp if the state norm passes
/// options.blowup_norm before the end of the range.
ReducedFamily integrate_parabolic(Complex s0, Complex a0, Complex b0, double x0, double x1,
                                  const OdeOptions& options = {});

/// S = y^(1+r) sigma(s), A = y^(2+2r) alpha(s), B = y^(3+3r) beta(s),
/// s = x y^r, r = k = (1 + m0)/2, weights (1 + m0, -2), over [s0, s1].
ReducedFamily integrate_hyperbolic(Complex sigma0, Complex alpha0, Complex beta0, int m0,
                                   double s0, double s1, const OdeOptions& options = {});

/// b0 such that the parabolic family has limit invariant [1 : tan^2 L / -27]:
/// 27 b0 = 9 a0 s0 - 2 s0^3 + 2 tan L (3 a0 - s0^2)^(3/2).
Complex parabolic_initial_for_L(Complex L, Complex s0 = 0.0, Complex a0 = 1.0 / 3.0);

/// u = F'/F for 3FF'' - 6F'^2 - 2 sqrt3 tan(2 sqrt3 x + L) F F' + F^2 = 0,
/// i.e. u' = u^2 + (2/sqrt3) tan(2 sqrt3 x + L) u - 1/3, with F(0) = 1.
/// Profile components: 0 is u, 1 is log F. PoleCrossing if tan has a pole
/// on [x0, x1]; BlowUp as for the other integrators.
std::shared_ptr<const Profile> riccati_F(Complex L, Complex u0, double x0, double x1,
                                         const OdeOptions& options = {});

/// F, F', F'' at x from a riccati_F profile.
std::array<Complex, 3> riccati_F_jet(const Profile& profile, double x);

/// 3FF'' - 6F'^2 - 2 sqrt3 tan(2 sqrt3 x + L) F F' + F^2 relative to F^2.
Complex fparabolic_residual(Complex F, Complex dF, Complex d2F, Complex L, double x);

/// Adaptive dopri5 on a complex system split into real and imaginary parts,
/// integrating from 0 to each end of [t0, t1] and recording every accepted
/// step (spacing at most options.max_step). The right-hand side signature
/// matches Profile so the same function feeds the stored interpolant.
std::shared_ptr<const Profile> integrate_profile(const ProfileRhs& rhs,
                                                 std::span<const Complex> u0, double t0,
                                                 double t1, const OdeOptions& options);

}  // namespace frobweb
