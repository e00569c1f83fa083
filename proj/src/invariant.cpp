#include "frobweb/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace frobweb {

namespace {

constexpr int kSamples = 8;
constexpr double kFirstSample = 0.0625;
constexpr double kWindowAgreement = 1e-4;
constexpr double kProjectiveZero = 1e-10;
constexpr double kCoincidence = 1e-10;
/// i^3 and j^2 both extrapolate to below this fraction of their samples.
constexpr double kVanishing = 1e-8;

/// Homogeneous direction (dx, dy).
struct Direction {
  Complex dx;
  Complex dy;
};

Complex bracket(const Direction& a, const Direction& b) { return a.dx * b.dy - a.dy * b.dx; }

double norm(const Direction& a) { return std::max(std::abs(a.dx), std::abs(a.dy)); }

/// Polynomial through (x_k, v_k) evaluated at 0.
Complex neville_at_zero(const std::vector<double>& x, std::vector<Complex> v) {
  const std::size_t n = x.size();
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t k = 0; k + m < n; ++k) {
      v[k] = (x[k + m] * v[k] - x[k] * v[k + 1]) / (x[k + m] - x[k]);
    }
  }
  return v[0];
}

struct CubeSquare {
  Complex i3;
  Complex j2;
};

CubeSquare cube_square(const CubicWeb& web, Point p) {
  const IJ ij = ij_at(web, p);
  return {ij.i * ij.i * ij.i, ij.j * ij.j};
}

bool projectively_equal(const ProjectivePair& a, const ProjectivePair& b, double tol) {
  const double na = std::max(std::abs(a.first), std::abs(a.second));
  const double nb = std::max(std::abs(b.first), std::abs(b.second));
  return std::abs(a.first * b.second - a.second * b.first) <= tol * na * nb;
}

LimitInvariant approach_limit(const CubicWeb& web, bool along_x) {
  std::vector<double> s(kSamples);
  std::vector<std::optional<IJ>> raw(kSamples);
  for (int n = 0; n < kSamples; ++n) {
    s[n] = std::ldexp(kFirstSample, -n);
    const Point p = along_x ? Point{s[n], 1.0} : Point{1.0, s[n]};
    try {
      raw[n] = ij_at(web, p);
    } catch (const Error&) {
      raw[n].reset();
    }
  }
  for (int n = kSamples - 5; n < kSamples; ++n) {
    if (!raw[n]) throw Error(ErrorKind::kNoLimit, "invariant undefined near the singular point");
  }

  auto window = [&](int end, auto component) {
    std::vector<double> xs(s.begin() + end - 4, s.begin() + end);
    std::vector<Complex> vs;
    for (int n = end - 4; n < end; ++n) vs.push_back(component(*raw[n]));
    return neville_at_zero(xs, vs);
  };
  auto settled = [&](auto component) {
    const Complex limit = window(kSamples, component);
    const Complex previous = window(kSamples - 1, component);
    double scale = 0.0;
    for (int n = kSamples - 4; n < kSamples; ++n) {
      scale = std::max(scale, std::abs(component(*raw[n])));
    }
    return std::pair{limit, is_finite(limit) && std::abs(limit - previous) <=
                                                    kWindowAgreement * std::max(scale, 1e-300)};
  };

  LimitInvariant out;
  out.kind = InvariantKind::kPair;
  // i and j are analytic along the approach, so they are extrapolated
  // separately; the ratio is extrapolated only when both tend to zero.
  const auto [i0, i_ok] = settled([](const IJ& v) { return v.i; });
  const auto [j0, j_ok] = settled([](const IJ& v) { return v.j; });
  double size = 0.0;
  for (int n = kSamples - 4; n < kSamples; ++n) {
    size = std::max(size, std::pow(std::abs(raw[n]->i), 3) + std::pow(std::abs(raw[n]->j), 2));
  }
  const Complex i3 = i0 * i0 * i0, j2 = j0 * j0;
  const bool both_vanish = std::abs(i3) + std::abs(j2) <= kVanishing * size;

  const CubeSquare last{std::pow(raw.back()->i, 3), std::pow(raw.back()->j, 2)};
  const bool j_over_i = std::abs(last.i3) >= std::abs(last.j2);
  for (int n = 0; n < kSamples; ++n) {
    if (!raw[n]) {
      out.samples.emplace_back(NAN, NAN);
      continue;
    }
    const Complex a = std::pow(raw[n]->i, 3), b = std::pow(raw[n]->j, 2);
    out.samples.push_back(j_over_i ? b / a : a / b);
  }
  if (!both_vanish) {
    if (!i_ok || !j_ok) {
      throw Error(ErrorKind::kNoLimit, "sampled invariant does not settle near the singular point");
    }
    out.value = normalize_pair(i3, j2);
    return out;
  }
  if (last.i3 == 0.0 && last.j2 == 0.0) {
    throw Error(ErrorKind::kNoLimit, "quartic invariants vanish along the approach");
  }
  auto ratio = [&](int end) {
    std::vector<double> xs(s.begin() + end - 4, s.begin() + end);
    std::vector<Complex> vs(out.samples.begin() + end - 4, out.samples.begin() + end);
    return neville_at_zero(xs, vs);
  };
  const Complex limit = ratio(kSamples), previous = ratio(kSamples - 1);
  if (!is_finite(limit) ||
      std::abs(limit - previous) > kWindowAgreement * std::max(1.0, std::abs(limit))) {
    throw Error(ErrorKind::kNoLimit, "sampled invariant does not settle near the singular point");
  }
  out.value = j_over_i ? normalize_pair(1.0, limit) : normalize_pair(limit, 1.0);
  return out;
}

LimitInvariant elliptic_limit(const CubicWeb& web) {
  LimitInvariant out;
  std::vector<ProjectivePair> pairs;
  for (double y : {0.5, 1.0, 2.0}) {
    const CubeSquare cs = cube_square(web, {1.0, y});
    pairs.push_back(normalize_pair(cs.i3, cs.j2));
    out.samples.push_back(cs.j2 / cs.i3);
  }
  const bool constant = projectively_equal(pairs[0], pairs[1], 1e-8) &&
                        projectively_equal(pairs[0], pairs[2], 1e-8);
  out.kind = constant ? InvariantKind::kPair : InvariantKind::kVaries;
  out.value = pairs[1];
  return out;
}

}  // namespace

QuarticCoeffs quartic_at(const CubicWeb& web, Point p) {
  const BinaryCoeffs k = web.binary_at(p);
  const Complex u = to_double(web.weights().wx) * p.x;
  const Complex w = to_double(web.weights().wy) * p.y;
  QuarticCoeffs q;
  q.a4 = u * k.k3;
  q.a3 = (u * k.k2 - w * k.k3) / 4.0;
  q.a2 = (u * k.k1 - w * k.k2) / 6.0;
  q.a1 = (u * k.k0 - w * k.k1) / 4.0;
  q.a0 = -w * k.k0;
  return q;
}

IJ ij_from_quartic(const QuarticCoeffs& q) {
  const Complex i = q.a0 * q.a4 - 4.0 * q.a1 * q.a3 + 3.0 * q.a2 * q.a2;
  const Complex j = q.a4 * q.a2 * q.a0 + 2.0 * q.a1 * q.a2 * q.a3 - q.a2 * q.a2 * q.a2 -
                    q.a4 * q.a1 * q.a1 - q.a0 * q.a3 * q.a3;
  return {i, j};
}

IJ ij_at(const CubicWeb& web, Point p) { return ij_from_quartic(quartic_at(web, p)); }

ProjectivePair normalize_pair(Complex i3, Complex j2) {
  if (std::abs(i3) < kProjectiveZero * std::abs(j2)) return {0.0, 1.0};
  if (std::abs(j2) < kProjectiveZero * std::abs(i3)) return {1.0, 0.0};
  if (i3 == 0.0) throw Error(ErrorKind::kNoLimit, "both invariants vanish");
  return {1.0, j2 / i3};
}

LimitInvariant limit_invariant(const CubicWeb& web) {
  const double wx = to_double(web.weights().wx);
  const double wy = to_double(web.weights().wy);
  if (wx == 0.0) return approach_limit(web, true);
  if (wy == 0.0) return approach_limit(web, false);
  if (wx * wy < 0.0) return approach_limit(web, true);
  return elliptic_limit(web);
}

std::array<Complex, 6> cross_ratio_orbit(Complex l) {
  std::array<Complex, 6> out{l, 1.0 / l, 1.0 - l, 1.0 / (1.0 - l), l / (l - 1.0), (l - 1.0) / l};
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) { return lex_less(a, b); });
  return out;
}

std::array<Complex, 6> cross_ratio_set(const CubicWeb& web, Point p) {
  const RootTriple roots = roots_at(web, p);
  std::vector<Direction> d;
  for (const Complex& r : roots.p) d.push_back({1.0, r});
  for (int k = 0; k < roots.vertical; ++k) d.push_back({0.0, 1.0});
  if (d.size() != 3) throw Error(ErrorKind::kDegenerateCubic, "web has fewer than three directions");
  const Direction X{to_double(web.weights().wx) * p.x, to_double(web.weights().wy) * p.y};
  if (norm(X) == 0.0) throw Error(ErrorKind::kCoincidentDirection, "symmetry vanishes here");
  d.push_back(X);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) {
      if (std::abs(bracket(d[a], d[b])) <= kCoincidence * norm(d[a]) * norm(d[b])) {
        throw Error(ErrorKind::kCoincidentDirection, "directions coincide; cross-ratio undefined");
      }
    }
  }
  // (a - c)(b - d) / ((b - c)(a - d)) in homogeneous form.
  const Complex l = bracket(d[0], d[2]) * bracket(d[1], d[3]) /
                    (bracket(d[1], d[2]) * bracket(d[0], d[3]));
  return cross_ratio_orbit(l);
}

std::array<long long, 2> reduce_weights(const Weights& w) {
  const long long l = std::lcm(w.wx.denominator(), w.wy.denominator());
  long long a = w.wx.numerator() * (l / w.wx.denominator());
  long long b = w.wy.numerator() * (l / w.wy.denominator());
  const long long g = std::gcd(a, b);
  if (g == 0) throw Error(ErrorKind::kInvalidArgument, "both weights vanish");
  a /= g;
  b /= g;
  if (a < 0 || (a == 0 && b < 0)) {
    a = -a;
    b = -b;
  }
  return {a, b};
}

Fingerprint fingerprint(const CubicWeb& web) {
  Fingerprint f;
  f.weights = reduce_weights(web.weights());
  try {
    f.multiplicity = multiplicity_at(web, web.base_point());
  } catch (const Error& e) {
    // y^r with non-integer r has no jet at y = 0; leave the partition empty.
    if (e.kind() != ErrorKind::kBranchViolation) throw;
  }
  f.invariant = limit_invariant(web);
  return f;
}

bool same_fingerprint(const Fingerprint& a, const Fingerprint& b, double tol) {
  if (a.weights != b.weights || a.multiplicity != b.multiplicity) return false;
  if (a.invariant.kind != b.invariant.kind) return false;
  if (a.invariant.kind == InvariantKind::kPair) {
    return projectively_equal(a.invariant.value, b.invariant.value, tol);
  }
  const auto& sa = a.invariant.samples;
  const auto& sb = b.invariant.samples;
  if (sa.size() != sb.size()) return false;
  for (std::size_t k = 0; k < sa.size(); ++k) {
    if (std::abs(sa[k] - sb[k]) > tol * std::max({1.0, std::abs(sa[k]), std::abs(sb[k])})) {
      return false;
    }
  }
  return true;
}

}  // namespace frobweb
