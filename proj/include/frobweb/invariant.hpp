#pragma once

#include <array>
#include <vector>

#include "frobweb/web.hpp"

namespace frobweb {

/// a4 dy^4 + 4 a3 dy^3 dx + 6 a2 dy^2 dx^2 + 4 a1 dy dx^3 + a0 dx^4: the web
/// cubic times the symmetry-annihilating form w_x x dy - w_y y dx.
struct QuarticCoeffs {
  Complex a0, a1, a2, a3, a4;
};

QuarticCoeffs quartic_at(const CubicWeb& web, Point p);

struct IJ {
  Complex i;
  Complex j;
};

IJ ij_from_quartic(const QuarticCoeffs& q);
IJ ij_at(const CubicWeb& web, Point p);

/// Projective point [first : second].
struct ProjectivePair {
  Complex first;
  Complex second;
};

/// [0:1] if |i^3| < 1e-10 |j^2|, [1:0] symmetrically, else [1 : j^2/i^3].
ProjectivePair normalize_pair(Complex i3, Complex j2);

enum class InvariantKind { kPair, kVaries };

struct LimitInvariant {
  InvariantKind kind = InvariantKind::kPair;
  ProjectivePair value{};
  /// Along the approach: whichever of j^2/i^3, i^3/j^2 stays bounded, NaN
  /// where undefined. Elliptic: j^2/i^3 at (1, y), y in {0.5, 1, 2}.
  std::vector<Complex> samples;
};

/// Limit of [i^3 : j^2] at the singular point (the origin, where the
/// symmetry vanishes). Parabolic (w_x = 0) and hyperbolic (w_x w_y < 0)
/// webs are sampled at (x_n, 1), x_n = 2^-(4+n), n = 0..7; i and j are
/// Neville-extrapolated to x = 0 on the last four samples (the oriented
/// ratio instead when both vanish there). NoLimit when the extrapolants
/// from the last two windows disagree.
LimitInvariant limit_invariant(const CubicWeb& web);

/// The six cross-ratio values of (p1, p2, p3, p_X), sorted by lex_less.
/// p_X = w_y y / (w_x x) is the slope of the symmetry; vertical when
/// w_x x = 0. CoincidentDirection if p_X meets a web direction.
std::array<Complex, 6> cross_ratio_set(const CubicWeb& web, Point p);

/// {l, 1/l, 1-l, 1/(1-l), l/(l-1), (l-1)/l} sorted by lex_less.
std::array<Complex, 6> cross_ratio_orbit(Complex lambda);

struct Fingerprint {
  /// Coprime integers, first nonzero entry positive.
  std::array<long long, 2> weights{};
  /// Root partition at the base point; empty when the web has no jet there.
  std::vector<int> multiplicity;
  LimitInvariant invariant;
};

std::array<long long, 2> reduce_weights(const Weights& w);
Fingerprint fingerprint(const CubicWeb& web);
bool same_fingerprint(const Fingerprint& a, const Fingerprint& b, double tol = 1e-6);

}  // namespace frobweb
