#include "frobweb/wdvv.hpp"

#include <algorithm>
#include <cmath>

namespace frobweb {

namespace {

constexpr double kDenominatorGuard = 1e-12;

const ExactMonic& require_exact(const CubicWeb& web) {
  const ExactMonic* m = web.exact_monic();
  if (!m) throw Error(ErrorKind::kInvalidArgument, "web coefficients are not exact polynomials");
  return *m;
}

/// Adds c x^m y^n / (falling product) to f, where the product runs over
/// the exponents the third antiderivative passes through.
void add_antiderivative(ExactPoly& f, const ExactPoly& g, int y_steps, int x_steps,
                        bool y_free_only) {
  for (const auto& [mono, c] : g.terms()) {
    if (y_free_only && mono.second != Ratio(0)) continue;
    Ratio m = mono.first, n = mono.second;
    Exact scale = c;
    for (int k = 0; k < y_steps; ++k) {
      n += 1;
      if (n == Ratio(0)) throw Error(ErrorKind::kNotIntegrable, "antiderivative needs a logarithm");
      scale /= to_exact(n);
    }
    for (int k = 0; k < x_steps; ++k) {
      m += 1;
      if (m == Ratio(0)) throw Error(ErrorKind::kNotIntegrable, "antiderivative needs a logarithm");
      scale /= to_exact(m);
    }
    f.add_term(m, n, scale);
  }
}

ExactPoly third(const ExactPoly& f, int nx, int ny) {
  ExactPoly out = f;
  for (int k = 0; k < nx; ++k) out = out.dx();
  for (int k = 0; k < ny; ++k) out = out.dy();
  return out;
}

}  // namespace

double Residual3::max_abs() const { return std::max({std::abs(r1), std::abs(r2), std::abs(r3)}); }

Residual3 wdvv0_residual(const CubicWeb& web, Point p) {
  const MonicJets m = web.monic_jets(p, 1);
  const Jet2 &S = m.S, &A = m.A, &B = m.B;
  return {S.dx - 0.5 * A.dy, A.dx - 2.0 * B.dy, B.dx - S.v * B.dy - B.v * S.dy + 0.5 * A.v * A.dy};
}

ExactResidual3 wdvv0_residual_exact(const CubicWeb& web) {
  const ExactMonic& m = require_exact(web);
  const Exact half = Exact(1) / 2;
  return {m.S.dx() - m.A.dy() * half, m.A.dx() - m.B.dy() * Exact(2),
          m.B.dx() - m.S * m.B.dy() - m.B * m.S.dy() + m.A * m.A.dy() * half};
}

Residual3 wdvv1_residual(const CubicWeb& web, Point p) {
  const MonicJets m = web.monic_jets(p, 1);
  const Complex S = m.S.v, A = m.A.v, B = m.B.v;
  const Complex Sy = m.S.dy, Ay = m.A.dy, By = m.B.dy;
  const Complex den = 2.0 * (A * S - B);
  if (std::abs(den) <= kDenominatorGuard * std::max({1.0, std::abs(A * S), std::abs(B)})) {
    throw Error(ErrorKind::kDenominatorZero, "AS - B vanishes");
  }
  const Complex sx = ((A * A - A * S * S + 2.0 * S * B) * Sy + (S * S * S - A * S + 2.0 * B) * Ay -
                      (A + S * S) * By) /
                     den;
  const Complex ax = (-A * Sy + S * Ay + By) / 2.0;
  const Complex bx = ((A * A * A + 4.0 * B * B - 3.0 * A * S * B) * Sy +
                      (2.0 * A * B - S * A * A + B * S * S) * Ay +
                      (2.0 * A * S * S - 3.0 * S * B - A * A) * By) /
                     den;
  return {m.S.dx - sx, m.A.dx - ax, m.B.dx - bx};
}

Potential reconstruct_potential(const CubicWeb& web) {
  const ExactMonic& m = require_exact(web);
  const Exact half = Exact(1) / 2, quarter = Exact(1) / 4;
  const ExactPoly fyyy = m.S;
  const ExactPoly fxyy = m.A * half;
  const ExactPoly fxxy = m.B;
  const ExactPoly fxxx = m.B * m.S - m.A * m.A * quarter;

  // y-exponents >= 3 (and all non-integer ones) come from f_yyy; the rest
  // from the y-free parts of the mixed and pure-x partials.
  ExactPoly f;
  add_antiderivative(f, fyyy, 3, 0, false);
  add_antiderivative(f, fxyy, 2, 1, true);
  add_antiderivative(f, fxxy, 1, 2, true);
  add_antiderivative(f, fxxx, 0, 3, true);

  if (!(third(f, 0, 3) == fyyy && third(f, 1, 2) == fxyy && third(f, 2, 1) == fxxy &&
        third(f, 3, 0) == fxxx)) {
    throw Error(ErrorKind::kNotIntegrable, "third partials are inconsistent (WDVV0 fails)");
  }
  if (f.weighted_degrees(web.weights().wx, web.weights().wy).size() > 1) {
    throw Error(ErrorKind::kNotHomogeneous, "potential is not weighted homogeneous");
  }
  return {std::move(f), PotentialKind::kKind0, web.weights()};
}

ExactPoly associativity_residual_exact(const Potential& p) {
  const ExactPoly fxxx = third(p.f, 3, 0), fxxy = third(p.f, 2, 1);
  const ExactPoly fxyy = third(p.f, 1, 2), fyyy = third(p.f, 0, 3);
  if (p.kind == PotentialKind::kKind0) return fxxx - fyyy * fxxy + fxyy * fxyy;
  return fxxx * fyyy - fxxy * fxyy - ExactPoly(Exact(1));
}

Complex associativity_residual(const Potential& p, Point pt) {
  return associativity_residual_exact(p).eval(pt);
}

CubicWeb characteristic_web(const Potential& p) {
  const ExactPoly fxxx = third(p.f, 3, 0), fxxy = third(p.f, 2, 1);
  const ExactPoly fxyy = third(p.f, 1, 2), fyyy = third(p.f, 0, 3);
  if (p.kind == PotentialKind::kKind0) {
    return CubicWeb::monic(Field::polynomial(fyyy), Field::polynomial(fxyy * Exact(2)),
                           Field::polynomial(fxxy), p.weights, {0.0, 0.0}, "kind0 potential");
  }
  if (fyyy.is_zero()) throw Error(ErrorKind::kDivisionByZeroField, "f_yyy vanishes identically");
  return CubicWeb::binary(Field::polynomial(fyyy), Field::polynomial(fxyy),
                          Field::polynomial(-fxxy), Field::polynomial(-fxxx), p.weights,
                          {0.0, 0.0}, "kind1 potential");
}

}  // namespace frobweb
