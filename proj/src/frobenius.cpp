#include "frobweb/frobenius.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <thread>

#include <Eigen/Dense>

#include "frobweb/chern.hpp"

namespace frobweb {

namespace {

constexpr double kDiscriminantGuard = 1e-12;
constexpr double kSingularBasis = 1e-12;
constexpr double kObstructed = 1e-6;
constexpr double kMarginFactor = 10.0;

TangentVector basis(int i) {
  TangentVector v;
  v[i] = 1.0;
  return v;
}

Point shifted(Point p, int axis, double h) {
  return axis == 1 ? Point{p.x + h, p.y} : Point{p.x, p.y + h};
}

Complex neville_at_zero(const std::vector<double>& t, const std::vector<Complex>& f) {
  std::vector<Complex> p = f;
  const std::size_t n = p.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      p[i] = (t[i + level] * p[i] - t[i] * p[i + 1]) / (t[i + level] - t[i]);
    }
  }
  return p[0];
}

/// Permutation of `roots` closest to `ref` in summed distance.
std::array<Complex, 3> match_roots(std::array<Complex, 3> roots, const std::array<Complex, 3>& ref) {
  std::array<int, 3> perm{0, 1, 2}, best = perm;
  double best_cost = INFINITY;
  do {
    double cost = 0.0;
    for (int i = 0; i < 3; ++i) cost += std::abs(roots[perm[i]] - ref[i]);
    if (cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {roots[best[0]], roots[best[1]], roots[best[2]]};
}

/// |D| / |grad D|, the first-order distance to D = 0.
double discriminant_distance(const CubicWeb& web, Point p) {
  const MonicJets m = web.monic_jets(p, 1);
  const Jet2 &S = m.S, &A = m.A, &B = m.B;
  const Jet2 D = 18.0 * S * A * B + S * S * A * A - 4.0 * A * A * A - 27.0 * B * B -
                 4.0 * B * S * S * S;
  const double grad = std::hypot(std::abs(D.dx), std::abs(D.dy));
  if (grad == 0.0) return std::abs(D.v) == 0.0 ? 0.0 : INFINITY;
  return std::abs(D.v) / grad;
}

/// c_abc = <d_a . d_b, d_c> in the flat basis.
using Tensor3 = std::array<std::array<std::array<Complex, 3>, 3>, 3>;

Tensor3 structure_constants(const IdempotentFrame& f, const Metric& g) {
  Tensor3 c{};
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      const TangentVector ab = multiply(f, basis(a), basis(b));
      for (int k = 0; k < 3; ++k) {
        c[a][b][k] = c[b][a][k] = g.inner(ab, basis(k));
      }
    }
  }
  return c;
}

struct PointResiduals {
  std::array<double, 7> r{};
};

enum Check { kUnity, kOrthogonality, kCommutativity, kProduct, kInvariance, kEuler, kPotentiality };

constexpr std::array<const char*, 7> kCheckNames = {"unity",      "orthogonality", "commutativity",
                                                    "product",    "invariance",    "euler",
                                                    "potentiality"};

/// L_E g by central differences of E; returns the fitted c and the residual.
std::pair<Complex, double> euler_conformality(const EulerField& E, const Metric& g, Point p,
                                              double h) {
  // dE[i][k] = d_i E^k at (t, x, y) = (1, p).
  std::array<std::array<Complex, 3>, 3> dE{};
  for (int i = 0; i < 3; ++i) {
    Complex t = 1.0;
    Point plus = p, minus = p;
    Complex tp = t, tm = t;
    if (i == 0) {
      tp += h;
      tm -= h;
    } else {
      plus = shifted(p, i, h);
      minus = shifted(p, i, -h);
    }
    const TangentVector ep = E.at(tp, plus), em = E.at(tm, minus);
    for (int k = 0; k < 3; ++k) dE[i][k] = (ep[k] - em[k]) / (2.0 * h);
  }
  std::array<std::array<Complex, 3>, 3> L{};
  Complex num = 0.0;
  double den = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // The metric is constant, so E^k d_k g_ij drops out.
      for (int k = 0; k < 3; ++k) L[i][j] += g.entry(k, j) * dE[i][k] + g.entry(i, k) * dE[j][k];
      num += L[i][j] * std::conj(g.entry(i, j));
      den += std::norm(g.entry(i, j));
    }
  }
  const Complex c = num / den;
  double res = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) res = std::max(res, std::abs(L[i][j] - c * g.entry(i, j)));
  }
  return {c, res};
}

PointResiduals verify_point(const FrobeniusGerm& germ, Point p, const VerifyOptions& o,
                            std::size_t index) {
  PointResiduals out;
  const double h = o.fd_step;
  const Metric& g = germ.metric();
  const IdempotentFrame f = germ.idempotents_at(p);

  // (a) unity and (b) orthogonality.
  const TangentVector sum = f.e[0] + f.e[1] + f.e[2];
  out.r[kUnity] = (sum - basis(0)).norm();
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      out.r[kOrthogonality] = std::max(out.r[kOrthogonality], std::abs(g.inner(f.e[i], f.e[j])));
    }
  }

  // Neighbour frames along x (axis 1) and y (axis 2), roots tracked from f.
  std::array<IdempotentFrame, 3> plus, minus;
  for (int axis = 1; axis <= 2; ++axis) {
    plus[axis] = germ.idempotents_near(shifted(p, axis, h), f);
    minus[axis] = germ.idempotents_near(shifted(p, axis, -h), f);
  }

  // (c) [e_i, e_j]; the fields do not depend on t.
  auto d_e = [&](int axis, int j) { return (plus[axis].e[j] - minus[axis].e[j]) * (0.5 / h); };
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      TangentVector br;
      for (int axis = 1; axis <= 2; ++axis) {
        br = br + d_e(axis, j) * f.e[i][axis] - d_e(axis, i) * f.e[j][axis];
      }
      out.r[kCommutativity] = std::max(out.r[kCommutativity], br.norm());
    }
  }

  // (d) product and (e) invariance on coordinate and random triples.
  std::mt19937_64 rng(o.seed + 7919u * static_cast<unsigned>(index));
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<std::array<TangentVector, 3>> triples;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) triples.push_back({basis(a), basis(b), basis(c)});
    }
  }
  for (int n = 0; n < o.random_triples; ++n) {
    std::array<TangentVector, 3> t;
    for (auto& v : t) {
      for (int k = 0; k < 3; ++k) v[k] = unit(rng);
    }
    triples.push_back(t);
  }
  for (const auto& [u, v, w] : triples) {
    const TangentVector uv = multiply(f, u, v), vw = multiply(f, v, w);
    const double assoc = (multiply(f, uv, w) - multiply(f, u, vw)).norm();
    const double comm = (uv - multiply(f, v, u)).norm();
    out.r[kProduct] = std::max({out.r[kProduct], assoc, comm});
    out.r[kInvariance] =
        std::max(out.r[kInvariance], std::abs(g.inner(uv, w) - g.inner(u, vw)));
  }

  // (f) Euler conformality at this point.
  out.r[kEuler] = euler_conformality(germ.euler(), g, p, h).second;

  // (g) d_d c_abc = d_a c_dbc; d_t of every c vanishes.
  std::array<Tensor3, 3> dc{};
  for (int axis = 1; axis <= 2; ++axis) {
    const Tensor3 cp = structure_constants(plus[axis], g), cm = structure_constants(minus[axis], g);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        for (int c = 0; c < 3; ++c) dc[axis][a][b][c] = (cp[a][b][c] - cm[a][b][c]) / (2.0 * h);
      }
    }
  }
  for (int d = 0; d < 3; ++d) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        for (int c = 0; c < 3; ++c) {
          out.r[kPotentiality] =
              std::max(out.r[kPotentiality], std::abs(dc[d][a][b][c] - dc[a][d][b][c]));
        }
      }
    }
  }
  return out;
}

}  // namespace

std::string_view germ_kind_name(GermKind kind) {
  return kind == GermKind::kKind0 ? "kind0" : "kind1";
}

TangentVector TangentVector::operator+(const TangentVector& o) const {
  return {{c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2]}};
}
TangentVector TangentVector::operator-(const TangentVector& o) const {
  return {{c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2]}};
}
TangentVector TangentVector::operator*(Complex s) const { return {{c[0] * s, c[1] * s, c[2] * s}}; }
double TangentVector::norm() const {
  return std::sqrt(std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]));
}

Metric Metric::make(GermKind kind, Complex delta) {
  if (delta == Complex(0.0)) throw Error(ErrorKind::kInvalidArgument, "metric needs delta != 0");
  return {kind, delta};
}

Complex Metric::entry(int i, int j) const {
  if (kind == GermKind::kKind0) {
    if ((i == 0 && j == 1) || (i == 1 && j == 0)) return 1.0;
    return i == 2 && j == 2 ? delta : Complex(0.0);
  }
  if ((i == 1 && j == 2) || (i == 2 && j == 1)) return 1.0;
  return i == 0 && j == 0 ? delta : Complex(0.0);
}

Complex Metric::inner(const TangentVector& u, const TangentVector& v) const {
  if (kind == GermKind::kKind0) return u[0] * v[1] + u[1] * v[0] + delta * u[2] * v[2];
  return delta * u[0] * v[0] + u[1] * v[2] + u[2] * v[1];
}

TangentVector EulerField::at(Complex t, Point p) const {
  return {{to_double(wt) * t, to_double(wx) * p.x, to_double(wy) * p.y}};
}

EulerField euler(const FrobeniusGerm& germ) {
  const Weights& w = germ.web().weights();
  const Ratio wt = germ.kind() == GermKind::kKind0 ? Ratio(2) * w.wy - w.wx
                                                   : (w.wx + w.wy) / Ratio(2);
  return {wt, w.wx, w.wy};
}

FrobeniusGerm::FrobeniusGerm(CubicWeb web, GermKind kind)
    : web_(std::move(web)), kind_(kind), metric_(Metric::make(kind, 1.0)) {}

EulerField FrobeniusGerm::euler() const { return frobweb::euler(*this); }

Complex FrobeniusGerm::K_at(Point p, Complex near) const {
  if (kind_ == GermKind::kKind0) return -1.0;
  const MonicJets m = web_.monic_jets(p, 0);
  const Complex q = m.S.v * m.A.v - m.B.v;
  if (q == Complex(0.0)) throw Error(ErrorKind::kDenominatorZero, "SA - B vanishes");
  const Complex K = -std::sqrt(q);
  if (near != Complex(0.0) && std::abs(-K - near) < std::abs(K - near)) return -K;
  return K;
}

std::array<Complex, 3> idempotent_t_components(GermKind kind, const std::array<Complex, 3>& p) {
  const Complex p1 = p[0], p2 = p[1], p3 = p[2];
  Complex a, b;
  if (kind == GermKind::kKind0) {
    a = (p2 * p3 - p1 * (p2 + p3)) / (2.0 * (p1 - p2) * (p1 - p3));
    b = (p1 * p3 - p2 * (p1 + p3)) / (2.0 * (p2 - p1) * (p2 - p3));
  } else {
    a = (p1 + p2) * (p1 + p3) / ((p1 - p2) * (p1 - p3));
    b = (p2 + p1) * (p2 + p3) / ((p2 - p1) * (p2 - p3));
  }
  return {a, b, 1.0 - a - b};
}

IdempotentFrame FrobeniusGerm::frame(Point p, const std::array<Complex, 3>& roots,
                                     Complex K) const {
  const Complex p1 = roots[0], p2 = roots[1], p3 = roots[2];
  const std::array<Complex, 3> den = {(p3 - p1) * (p1 - p2), (p1 - p2) * (p2 - p3),
                                      (p2 - p3) * (p3 - p1)};
  const std::array<Complex, 3> a = idempotent_t_components(kind_, roots);
  IdempotentFrame f{p, roots, K, {}};
  for (int i = 0; i < 3; ++i) f.e[i] = {{a[i], K / den[i], K * roots[i] / den[i]}};
  return f;
}

IdempotentFrame FrobeniusGerm::idempotents_at(Point p) const {
  if (web_.is_zero_web()) {
    throw Error(ErrorKind::kSingularBasis, "the zero web has a triple root everywhere");
  }
  const MonicJets m = web_.monic_jets(p, 0);
  const Complex S = m.S.v, A = m.A.v, B = m.B.v;
  const double scale = discriminant_scale(S, A, B);
  if (!(std::abs(discriminant(S, A, B)) >= kDiscriminantGuard * scale) || scale == 0.0) {
    throw Error(ErrorKind::kOnDiscriminant, "idempotents need three distinct roots");
  }
  return frame(p, solve_monic_cubic(S, A, B), K_at(p));
}

IdempotentFrame FrobeniusGerm::idempotents_near(Point p, const IdempotentFrame& ref) const {
  const IdempotentFrame raw = idempotents_at(p);
  return frame(p, match_roots(raw.roots, ref.roots), K_at(p, ref.K));
}

std::array<Complex, 3> idempotent_coordinates(const IdempotentFrame& f, const TangentVector& u) {
  Eigen::Matrix3cd M;
  double scale = 1.0;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) M(k, i) = f.e[i][k];
    scale *= f.e[i].norm();
  }
  const Complex det = M.determinant();
  if (!(std::abs(det) > kSingularBasis * scale)) {
    throw Error(ErrorKind::kSingularBasis, "idempotents do not span the tangent space");
  }
  Eigen::Vector3cd rhs(u[0], u[1], u[2]);
  const Eigen::Vector3cd x = M.partialPivLu().solve(rhs);
  return {x(0), x(1), x(2)};
}

TangentVector multiply(const IdempotentFrame& f, const TangentVector& u, const TangentVector& v) {
  const std::array<Complex, 3> a = idempotent_coordinates(f, u), b = idempotent_coordinates(f, v);
  return f.e[0] * (a[0] * b[0]) + f.e[1] * (a[1] * b[1]) + f.e[2] * (a[2] * b[2]);
}

TangentVector multiply(const FrobeniusGerm& germ, const TangentVector& u, const TangentVector& v,
                       Point p) {
  return multiply(germ.idempotents_at(p), u, v);
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult& VerificationReport::check(std::string_view name) const {
  for (const CheckResult& c : checks) {
    if (c.name == name) return c;
  }
  throw Error(ErrorKind::kInvalidArgument, "no check named " + std::string(name));
}

VerificationReport verify(const FrobeniusGerm& germ, const std::vector<Point>& grid,
                          const VerifyOptions& options) {
  if (!(options.fd_step > 0.0) || !(options.tolerance > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "fd_step and tolerance must be positive");
  }
  if (grid.empty()) throw Error(ErrorKind::kInvalidArgument, "empty verification grid");
  if (germ.web().is_zero_web()) {
    throw Error(ErrorKind::kSingularBasis, "the zero web has a triple root everywhere");
  }
  for (const Point& p : grid) {
    double dist = 0.0;
    try {
      dist = discriminant_distance(germ.web(), p);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kDegenerateCubic) throw;
    }
    if (!(dist >= kMarginFactor * options.fd_step)) {
      throw Error(ErrorKind::kGridTouchesDiscriminant,
                  "grid point within 10 fd_step of the discriminant");
    }
  }

  // Points are independent; chunks run on separate threads.
  std::vector<PointResiduals> results(grid.size());
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 8));
  const std::size_t chunk = (grid.size() + workers - 1) / workers;
  std::vector<std::future<void>> jobs;
  for (std::size_t begin = 0; begin < grid.size(); begin += chunk) {
    const std::size_t end = std::min(grid.size(), begin + chunk);
    jobs.push_back(std::async(std::launch::async, [&, begin, end] {
      for (std::size_t i = begin; i < end; ++i) results[i] = verify_point(germ, grid[i], options, i);
    }));
  }
  for (auto& j : jobs) j.get();

  VerificationReport report;
  report.fd_step = options.fd_step;
  report.tolerance = options.tolerance;
  report.euler_constant =
      euler_conformality(germ.euler(), germ.metric(), grid.front(), options.fd_step).first;
  for (std::size_t c = 0; c < kCheckNames.size(); ++c) {
    CheckResult r{kCheckNames[c], 0.0, static_cast<int>(grid.size()), false};
    for (const PointResiduals& pr : results) r.max_residual = std::max(r.max_residual, pr.r[c]);
    r.pass = r.max_residual < options.tolerance;
    report.checks.push_back(std::move(r));
  }
  return report;
}

std::vector<Point> rectangle_grid(double x0, double y0, double x1, double y1, int n) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "grid size must be positive");
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double u = n == 1 ? 0.5 : static_cast<double>(i) / (n - 1);
      const double v = n == 1 ? 0.5 : static_cast<double>(j) / (n - 1);
      out.push_back({x0 + u * (x1 - x0), y0 + v * (y1 - y0)});
    }
  }
  return out;
}

DeltaObstruction delta_obstruction(const CubicWeb& web, GermKind kind,
                                   const std::vector<Point>& sequence, Point target) {
  if (sequence.size() < 4) {
    throw Error(ErrorKind::kInvalidArgument, "delta_obstruction needs at least four points");
  }
  DeltaObstruction out;
  std::vector<double> dist;
  Complex K = -1.0;
  for (std::size_t n = 0; n < sequence.size(); ++n) {
    const Point p = sequence[n];
    if (n > 0) K = integrating_factor(web, {sequence[n - 1], p}, K);
    Complex inv;
    if (kind == GermKind::kKind0) {
      inv = -K;
    } else {
      const MonicJets m = web.monic_jets(p, 0);
      inv = (m.S.v * m.A.v - m.B.v) / (K * K);
    }
    out.K.push_back(K);
    out.inverse_delta.push_back(inv);
    dist.push_back(std::hypot(std::abs(p.x - target.x), std::abs(p.y - target.y)));
  }
  const std::size_t n = sequence.size();
  const std::vector<double> t(dist.end() - 4, dist.end());
  const std::vector<Complex> f(out.inverse_delta.begin() + static_cast<long>(n - 4),
                               out.inverse_delta.end());
  out.inverse_delta_limit = neville_at_zero(t, f);
  out.obstructed = std::abs(out.inverse_delta_limit) < kObstructed;
  if (!out.obstructed) out.delta = 1.0 / out.inverse_delta_limit;
  return out;
}

std::vector<Point> approach_sequence(Point start, Point target, int count) {
  if (count < 1) throw Error(ErrorKind::kInvalidArgument, "count must be positive");
  std::vector<Point> out;
  double s = 1.0;
  for (int n = 0; n < count; ++n, s *= 0.5) {
    out.push_back({target.x + s * (start.x - target.x), target.y + s * (start.y - target.y)});
  }
  return out;
}

double kind1_connection_check(const CubicWeb& web, const std::vector<Point>& grid) {
  double worst = 0.0;
  for (const Point& p : grid) {
    const MonicJets m = web.monic_jets(p, 1);
    const Jet2 q = m.S * m.A - m.B;
    if (std::abs(q.v) <= 1e-12 * std::max({1.0, std::abs(m.S.v * m.A.v), std::abs(m.B.v)})) {
      throw Error(ErrorKind::kDenominatorZero, "SA - B vanishes");
    }
    const ConnectionData g = gamma_at(web, p);
    worst = std::max(worst, std::abs(2.0 * g.g1 - q.dx / q.v) + std::abs(2.0 * g.g2 - q.dy / q.v));
  }
  return worst;
}

}  // namespace frobweb
