#pragma once

#include <array>
#include <vector>

#include "frobweb/web.hpp"

namespace frobweb {

/// gamma = g1 dx + g2 dy at a point, with the discriminant D used to build it.
struct ConnectionData {
  Complex g1;
  Complex g2;
  Complex D;
};

namespace detail {

inline Complex scaled(int n, const Complex& r) { return static_cast<double>(n) * r; }
inline Jet2 scaled(int n, const Jet2& r) { return static_cast<double>(n) * r; }
inline ExactPoly scaled(int n, const ExactPoly& r) { return r * Exact(n); }

}  // namespace detail

/// Numerators gamma1, gamma2 and the discriminant D, with gamma =
/// (gamma1 dx + gamma2 dy)/(-D). R is Complex, Jet2 or ExactPoly.
template <class R>
struct GammaParts {
  R gamma1, gamma2, D;
};

template <class R>
GammaParts<R> gamma_parts(const R& S, const R& A, const R& B, const R& Sx, const R& Sy,
                          const R& Ax, const R& Ay, const R& Bx, const R& By) {
  using detail::scaled;
  const R SS = S * S, AA = A * A, SA = S * A, SB = S * B, AB = A * B;
  const R sa_9b = SA - scaled(9, B);
  const R three_a_ss = scaled(3, A) - SS;

  R g1 = (scaled(4, B * SS) - scaled(3, AB) - S * AA) * Sx;
  g1 += B * sa_9b * Sy;
  g1 += (scaled(2, AA) - scaled(6, SB)) * Ax;
  g1 += scaled(2, B * three_a_ss) * Ay;
  g1 += (scaled(9, B) - SA) * Bx;
  g1 += (A * SS - scaled(4, AA) + scaled(3, SB)) * By;

  R g2 = (scaled(6, SB) - scaled(2, AA)) * Sx;
  g2 -= scaled(2, B * three_a_ss) * Sy;
  g2 += sa_9b * Ax;
  g2 += (scaled(4, AA) - A * SS - scaled(3, SB)) * Ay;
  g2 += (scaled(6, A) - scaled(2, SS)) * Bx;
  g2 += (scaled(2, SS * S) + scaled(18, B) - scaled(8, SA)) * By;

  R D = scaled(18, SA * B) + SA * SA - scaled(4, AA * A) - scaled(27, B * B) -
        scaled(4, B * SS * S);
  return {std::move(g1), std::move(g2), std::move(D)};
}

/// Exact connection data of a polynomial web; curvature = N / D^2.
struct ExactConnection {
  ExactPoly gamma1, gamma2, D, N;
};

/// Memoized on the web; throws InvalidArgument for non-polynomial webs.
const ExactConnection& exact_connection(const CubicWeb& web);

/// gamma at a point. OnDiscriminant when |D| < 1e-12 of its natural scale.
ConnectionData gamma_at(const CubicWeb& web, Point p);

/// gamma as jets: value and first partials of g1, g2 are valid.
struct GammaJets {
  Jet2 g1, g2, D;
};
GammaJets gamma_jets(const CubicWeb& web, Point p);

/// c with d(gamma) = c dx^dy. Exact rational evaluation for polynomial webs
/// (an exactly zero numerator returns exactly 0), forward-mode jets otherwise.
Complex curvature_at(const CubicWeb& web, Point p);

/// Richardson-extrapolated central differences of the gamma components.
Complex curvature_fd(const CubicWeb& web, Point p, double h = 1e-3);

enum class KConvention {
  kPositive,  // dK/K = gamma
  kNegative,  // dk = -gamma k
};

struct IntegrationOptions {
  KConvention convention = KConvention::kPositive;
  double rel_tol = 1e-10;
  /// Curvature bound checked at quadrature nodes; NotFlat above it.
  double flatness_tol = 1e-6;
  bool check_flat = true;
};

/// K at the end of the polyline given K at its start. Romberg quadrature
/// per segment; PathCrossesDiscriminant if a node lies on D = 0.
Complex integrating_factor(const CubicWeb& web, const std::vector<Point>& path, Complex K_start,
                           const IntegrationOptions& options = {});

/// gamma in the coordinates xbar = g, ybar = f, at the image point of `jet`.
/// Input gamma is at jet.source; D of the result is that of the
/// transformed monic cubic.
ConnectionData gamma_pullback(const CubicWeb& web, const DiffeoJet& jet,
                              const ConnectionData& gamma);

/// Covector c dx + d dy.
struct Covector {
  Complex dx;
  Complex dy;
};

struct WebForms {
  std::array<Covector, 3> sigma;
  /// Coefficient of dy^dx in Omega = sigma1 ^ sigma2.
  Complex omega;
  /// d sigma_i = h_i Omega, by finite differences with root tracking.
  std::array<Complex, 3> h;
  /// h2 s1 - h1 s2, h3 s2 - h2 s3, h1 s3 - h3 s1; each equals gamma.
  std::array<Covector, 3> pairings;
};

WebForms web_forms_at(const CubicWeb& web, Point p, double h = 1e-4);

}  // namespace frobweb
