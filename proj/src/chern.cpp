#include "frobweb/chern.hpp"

#include <algorithm>
#include <cmath>

namespace frobweb {

namespace {

constexpr double kDiscriminantGuard = 1e-12;

void guard_discriminant(Complex D, Complex S, Complex A, Complex B) {
  const double scale = discriminant_scale(S, A, B);
  if (!(std::abs(D) >= kDiscriminantGuard * scale) || scale == 0.0) {
    throw Error(ErrorKind::kOnDiscriminant, "point lies on the discriminant curve");
  }
}

std::array<Complex, 3> ordered_roots(const CubicWeb& web, Point p) {
  const RootTriple r = roots_at(web, p);
  if (r.p.size() != 3 || r.partition.size() != 3) {
    throw Error(ErrorKind::kOnDiscriminant, "point lies on the discriminant curve");
  }
  return {r.p[0], r.p[1], r.p[2]};
}

/// Roots at a nearby point, permuted to follow the reference labeling.
std::array<Complex, 3> tracked_roots(const CubicWeb& web, Point p,
                                     const std::array<Complex, 3>& ref) {
  const std::array<Complex, 3> r = ordered_roots(web, p);
  std::array<int, 3> perm{0, 1, 2}, best = perm;
  double best_cost = INFINITY;
  do {
    double cost = 0.0;
    for (int i = 0; i < 3; ++i) cost += std::abs(r[perm[i]] - ref[i]);
    if (cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {r[best[0]], r[best[1]], r[best[2]]};
}

/// sigma_i coefficients (dx, dy) for roots in a fixed labeling.
std::array<Covector, 3> sigma_forms(const std::array<Complex, 3>& p) {
  std::array<Covector, 3> out;
  for (int i = 0; i < 3; ++i) {
    const Complex diff = p[(i + 1) % 3] - p[(i + 2) % 3];
    out[i] = {-diff * p[i], diff};
  }
  return out;
}

Covector combine(Complex a, const Covector& s, Complex b, const Covector& t) {
  return {a * s.dx - b * t.dx, a * s.dy - b * t.dy};
}

Point shifted(Point p, Complex dx, Complex dy) { return {p.x + dx, p.y + dy}; }

}  // namespace

const ExactConnection& exact_connection(const CubicWeb& web) {
  const ExactMonic* m = web.exact_monic();
  if (!m) throw Error(ErrorKind::kInvalidArgument, "exact connection needs a polynomial web");
  return web.memo<ExactConnection>([m] {
    const ExactPoly &S = m->S, &A = m->A, &B = m->B;
    GammaParts<ExactPoly> g =
        gamma_parts(S, A, B, S.dx(), S.dy(), A.dx(), A.dy(), B.dx(), B.dy());
    const ExactPoly& D = g.D;
    ExactPoly N = g.gamma1.dy() * D - g.gamma1 * D.dy() - g.gamma2.dx() * D + g.gamma2 * D.dx();
    return ExactConnection{std::move(g.gamma1), std::move(g.gamma2), std::move(g.D),
                           std::move(N)};
  });
}

ConnectionData gamma_at(const CubicWeb& web, Point p) {
  const MonicJets m = web.monic_jets(p, 1);
  const GammaParts<Complex> g = gamma_parts(m.S.v, m.A.v, m.B.v, m.S.dx, m.S.dy, m.A.dx, m.A.dy,
                                            m.B.dx, m.B.dy);
  guard_discriminant(g.D, m.S.v, m.A.v, m.B.v);
  return {-g.gamma1 / g.D, -g.gamma2 / g.D, g.D};
}

GammaJets gamma_jets(const CubicWeb& web, Point p) {
  const MonicJets m = web.monic_jets(p, 2);
  const GammaParts<Jet2> g =
      gamma_parts(m.S, m.A, m.B, m.S.partial_x(), m.S.partial_y(), m.A.partial_x(),
                  m.A.partial_y(), m.B.partial_x(), m.B.partial_y());
  guard_discriminant(g.D.v, m.S.v, m.A.v, m.B.v);
  const Jet2 inv = reciprocal(g.D);
  return {(-(g.gamma1 * inv)).truncated(1), (-(g.gamma2 * inv)).truncated(1), g.D.truncated(1)};
}

Complex curvature_at(const CubicWeb& web, Point p) {
  if (web.exact_monic()) {
    const ExactConnection& ec = exact_connection(web);
    const MonicJets m = web.monic_jets(p, 0);
    const Complex D = ec.D.eval(p);
    guard_discriminant(D, m.S.v, m.A.v, m.B.v);
    if (ec.N.is_zero()) return 0.0;
    return ec.N.eval(p) / (D * D);
  }
  const GammaJets g = gamma_jets(web, p);
  return g.g2.dx - g.g1.dy;
}

Complex curvature_fd(const CubicWeb& web, Point p, double h) {
  auto diff = [&](double step) {
    const Complex g2x = (gamma_at(web, shifted(p, step, 0.0)).g2 -
                         gamma_at(web, shifted(p, -step, 0.0)).g2) / (2.0 * step);
    const Complex g1y = (gamma_at(web, shifted(p, 0.0, step)).g1 -
                         gamma_at(web, shifted(p, 0.0, -step)).g1) / (2.0 * step);
    return g2x - g1y;
  };
  return (4.0 * diff(h / 2.0) - diff(h)) / 3.0;
}

Complex integrating_factor(const CubicWeb& web, const std::vector<Point>& path, Complex K_start,
                           const IntegrationOptions& options) {
  if (path.size() < 2) return K_start;
  auto gamma_checked = [&](Point q) {
    try {
      return gamma_at(web, q);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kOnDiscriminant) {
        throw Error(ErrorKind::kPathCrossesDiscriminant, "integration path meets the discriminant");
      }
      throw;
    }
  };

  Complex total = 0.0;
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    const Point a = path[s], b = path[s + 1];
    const Complex dx = b.x - a.x, dy = b.y - a.y;
    auto at = [&](double t) { return Point{a.x + t * dx, a.y + t * dy}; };
    auto f = [&](double t) {
      const ConnectionData g = gamma_checked(at(t));
      return g.g1 * dx + g.g2 * dy;
    };
    // A real path crossing a real discriminant curve shows as a sign change.
    Complex prev_D = 0.0;
    for (int i = 0; i <= 32; ++i) {
      const Complex D = discriminant_at(web, at(i / 32.0));
      const bool real = std::abs(D.imag()) <= 1e-12 * std::abs(D);
      if (i > 0 && real && std::abs(prev_D.imag()) <= 1e-12 * std::abs(prev_D) &&
          (D.real() > 0.0) != (prev_D.real() > 0.0)) {
        throw Error(ErrorKind::kPathCrossesDiscriminant, "integration path crosses the discriminant");
      }
      prev_D = D;
    }
    if (options.check_flat) {
      for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const Complex c = [&] {
          try {
            return curvature_at(web, at(t));
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::kOnDiscriminant) throw;
            throw Error(ErrorKind::kPathCrossesDiscriminant, "integration path meets the discriminant");
          }
        }();
        if (std::abs(c) > options.flatness_tol) {
          throw Error(ErrorKind::kNotFlat, "web is not flat along the integration path");
        }
      }
    }
    // Romberg: trapezoid refinements with Richardson extrapolation.
    std::vector<Complex> prev{0.5 * (f(0.0) + f(1.0))}, row;
    Complex trap = prev[0];
    Complex result = trap;
    bool converged = false;
    for (int level = 1; level <= 20; ++level) {
      const int n = 1 << (level - 1);
      Complex mids = 0.0;
      for (int i = 0; i < n; ++i) mids += f((i + 0.5) / n);
      trap = 0.5 * trap + mids / (2.0 * n);
      row.assign(1, trap);
      double factor = 4.0;
      for (int j = 1; j <= level; ++j) {
        row.push_back(row[j - 1] + (row[j - 1] - prev[j - 1]) / (factor - 1.0));
        factor *= 4.0;
      }
      const Complex change = row.back() - prev.back();
      result = row.back();
      prev.swap(row);
      if (level >= 3 && std::abs(change) <= options.rel_tol * std::max(1.0, std::abs(result))) {
        converged = true;
        break;
      }
    }
    if (!converged) throw Error(ErrorKind::kNonFinite, "connection quadrature did not converge");
    total += result;
  }
  const Complex sign = options.convention == KConvention::kPositive ? 1.0 : -1.0;
  const Complex K = K_start * std::exp(sign * total);
  if (!is_finite(K)) throw Error(ErrorKind::kNonFinite, "integrating factor overflow");
  return K;
}

ConnectionData gamma_pullback(const CubicWeb& web, const DiffeoJet& jet,
                              const ConnectionData& gamma) {
  const Jet2 fx = jet.f.partial_x(), fy = jet.f.partial_y();
  const Jet2 gx = jet.g.partial_x(), gy = jet.g.partial_y();
  const Jet2 J = fy * gx - fx * gy;
  const double size = std::max({std::abs(fx.v), std::abs(fy.v), std::abs(gx.v), std::abs(gy.v)});
  if (std::abs(J.v) <= 1e-14 * size * size) {
    throw Error(ErrorKind::kJacobianSingular, "diffeomorphism jet is singular");
  }
  const MonicJets m = web.monic_jets(jet.source, 1);
  const Jet2 den = gx * gx * gx - m.S * gx * gx * gy + m.A * gx * gy * gy - m.B * gy * gy * gy;
  const double den_scale =
      std::pow(std::max({std::abs(gx.v), std::abs(gy.v) * std::max({1.0, std::abs(m.S.v),
                                                                     std::sqrt(std::abs(m.A.v)),
                                                                     std::cbrt(std::abs(m.B.v))})}),
               3.0);
  if (std::abs(den.v) <= 1e-14 * den_scale) {
    throw Error(ErrorKind::kDenominatorZero, "transformation denominator vanishes");
  }
  const Complex lx = 2.0 * J.dx / J.v - den.dx / den.v;
  const Complex ly = 2.0 * J.dy / J.v - den.dy / den.v;
  const Complex a = gamma.g1 + lx;
  const Complex b = gamma.g2 + ly;
  ConnectionData out{(a * fy.v - b * fx.v) / J.v, (b * gx.v - a * gy.v) / J.v, 0.0};
  const BinaryCoeffs k = pushforward_at(web, jet);
  if (k.k3 == Complex(1.0)) out.D = discriminant(k.k2, k.k1, k.k0);
  return out;
}

WebForms web_forms_at(const CubicWeb& web, Point p, double h) {
  const std::array<Complex, 3> r = ordered_roots(web, p);
  WebForms out;
  out.sigma = sigma_forms(r);
  out.omega = (r[0] - r[1]) * (r[1] - r[2]) * (r[2] - r[0]);

  auto sigma_at = [&](Complex dx, Complex dy) {
    return sigma_forms(tracked_roots(web, shifted(p, dx, dy), r));
  };
  // Central differences at h and h/2, Richardson-combined.
  auto derivs = [&](double step) {
    const auto xp = sigma_at(step, 0.0), xm = sigma_at(-step, 0.0);
    const auto yp = sigma_at(0.0, step), ym = sigma_at(0.0, -step);
    std::array<Complex, 3> curl;
    for (int i = 0; i < 3; ++i) {
      const Complex d_x = (xp[i].dy - xm[i].dy) / (2.0 * step);
      const Complex c_y = (yp[i].dx - ym[i].dx) / (2.0 * step);
      curl[i] = d_x - c_y;
    }
    return curl;
  };
  const auto coarse = derivs(h), fine = derivs(h / 2.0);
  for (int i = 0; i < 3; ++i) {
    out.h[i] = ((4.0 * fine[i] - coarse[i]) / 3.0) / (-out.omega);
  }
  const auto& s = out.sigma;
  const auto& hh = out.h;
  out.pairings = {combine(hh[1], s[0], hh[0], s[1]), combine(hh[2], s[1], hh[1], s[2]),
                  combine(hh[0], s[2], hh[2], s[0])};
  return out;
}

}  // namespace frobweb
