#include "frobweb/web.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace frobweb {

namespace {

constexpr double kZeroCoeff = 1e-14;
constexpr double kClusterTol = 1e-8;

double max_abs(const BinaryCoeffs& k) {
  return std::max({std::abs(k.k3), std::abs(k.k2), std::abs(k.k1), std::abs(k.k0)});
}

double cubic_residual(Complex p, Complex S, Complex A, Complex B) {
  const Complex value = ((p + S) * p + A) * p + B;
  const double a = std::abs(p);
  const double scale = a * a * a + std::abs(S) * a * a + std::abs(A) * a + std::abs(B);
  return scale == 0.0 ? 0.0 : std::abs(value) / scale;
}

std::array<Complex, 3> cardano(Complex S, Complex A, Complex B) {
  const Complex P = A - S * S / 3.0;
  const Complex Q = 2.0 * S * S * S / 27.0 - S * A / 3.0 + B;
  const Complex sq = std::sqrt(Q * Q / 4.0 + P * P * P / 27.0);
  const Complex u3a = -Q / 2.0 + sq;
  const Complex u3b = -Q / 2.0 - sq;
  const Complex u3 = std::abs(u3a) >= std::abs(u3b) ? u3a : u3b;
  std::array<Complex, 3> out;
  if (u3 == Complex(0.0)) {
    out.fill(-S / 3.0);
    return out;
  }
  const Complex u = std::pow(u3, 1.0 / 3.0);
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  Complex uk = u;
  for (auto& root : out) {
    root = uk - P / (3.0 * uk) - S / 3.0;
    uk *= omega;
  }
  return out;
}

std::array<Complex, 3> companion(Complex S, Complex A, Complex B) {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  m(0, 0) = -S;
  m(0, 1) = -A;
  m(0, 2) = -B;
  m(1, 0) = 1.0;
  m(2, 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(m, false);
  const auto& ev = solver.eigenvalues();
  return {ev(0), ev(1), ev(2)};
}

std::vector<int> cluster(const std::vector<Complex>& roots, int vertical) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(roots[i]), std::abs(roots[j])});
      if (std::abs(roots[i] - roots[j]) <= kClusterTol * scale) parent[find(i)] = find(j);
    }
  }
  std::vector<int> sizes(n, 0);
  for (std::size_t i = 0; i < n; ++i) ++sizes[find(i)];
  std::vector<int> out;
  for (int s : sizes) {
    if (s > 0) out.push_back(s);
  }
  if (vertical > 0) out.push_back(vertical);
  std::sort(out.rbegin(), out.rend());
  return out;
}

Jet2 jet_of(const Field& f, Point p, int order) { return f.eval_jet(p, order); }

}  // namespace

// ---------------------------------------------------------------------------

CubicWeb CubicWeb::monic(Field S, Field A, Field B, Weights w, Point base, std::string label) {
  CubicWeb web = binary(Field::constant(1.0), std::move(S), std::move(A), std::move(B), w, base,
                        std::move(label));
  return web;
}

CubicWeb CubicWeb::binary(Field K3, Field K2, Field K1, Field K0, Weights w, Point base,
                          std::string label) {
  if (w.wx == Ratio(0) && w.wy == Ratio(0)) {
    throw Error(ErrorKind::kInvalidArgument, "weights must not both be zero");
  }
  CubicWeb web;
  const ExactPoly* k3 = K3.exact();
  web.monic_ = k3 && *k3 == ExactPoly(Exact(1));
  web.k_ = {std::move(K3), std::move(K2), std::move(K1), std::move(K0)};
  web.weights_ = w;
  web.base_ = base;
  web.label_ = std::move(label);
  web.init_exact();
  return web;
}

void CubicWeb::init_exact() {
  const ExactPoly* k3 = k_[0].exact();
  const ExactPoly* k2 = k_[1].exact();
  const ExactPoly* k1 = k_[2].exact();
  const ExactPoly* k0 = k_[3].exact();
  if (!(k3 && k2 && k1 && k0) || k3->size() != 1) return;
  const auto& [mono, c] = *k3->terms().begin();
  const Exact inv = Exact(1) / c;
  auto divide = [&](const ExactPoly& q) { return q.shifted(-mono.first, -mono.second) * inv; };
  exact_ = std::make_shared<const ExactMonic>(ExactMonic{divide(*k2), divide(*k1), divide(*k0)});
}

CubicWeb CubicWeb::with_base(Point base) const {
  CubicWeb out = *this;
  out.base_ = base;
  return out;
}

BinaryCoeffs CubicWeb::binary_at(Point p) const {
  BinaryCoeffs k{k_[0].eval(p), k_[1].eval(p), k_[2].eval(p), k_[3].eval(p)};
  if (max_abs(k) < kZeroCoeff) {
    throw Error(ErrorKind::kDegenerateCubic, "all cubic coefficients vanish");
  }
  return k;
}

MonicJets CubicWeb::monic_jets(Point p, int order) const {
  if (monic_) return {jet_of(k_[1], p, order), jet_of(k_[2], p, order), jet_of(k_[3], p, order)};
  const Jet2 k3 = jet_of(k_[0], p, order);
  const Jet2 k2 = jet_of(k_[1], p, order);
  const Jet2 k1 = jet_of(k_[2], p, order);
  const Jet2 k0 = jet_of(k_[3], p, order);
  const double scale = std::max({std::abs(k3.v), std::abs(k2.v), std::abs(k1.v), std::abs(k0.v)});
  if (scale < kZeroCoeff) throw Error(ErrorKind::kDegenerateCubic, "all cubic coefficients vanish");
  if (std::abs(k3.v) <= kZeroCoeff * scale) {
    throw Error(ErrorKind::kDegenerateCubic, "leading coefficient vanishes; no monic form");
  }
  const Jet2 inv = reciprocal(k3);
  return {(k2 * inv).truncated(order), (k1 * inv).truncated(order), (k0 * inv).truncated(order)};
}

bool CubicWeb::is_zero_web() const {
  if (exact_) return exact_->S.is_zero() && exact_->A.is_zero() && exact_->B.is_zero();
  return monic_ && k_[1].is_zero_polynomial() && k_[2].is_zero_polynomial() &&
         k_[3].is_zero_polynomial();
}

// ---------------------------------------------------------------------------

std::array<Complex, 3> solve_monic_cubic(Complex S, Complex A, Complex B) {
  std::array<Complex, 3> roots = cardano(S, A, B);
  double worst = 0.0;
  for (Complex r : roots) worst = std::max(worst, cubic_residual(r, S, A, B));
  if (!(worst <= 1e-9)) roots = companion(S, A, B);
  for (Complex r : roots) {
    if (!is_finite(r)) throw Error(ErrorKind::kNonFinite, "non-finite cubic root");
  }
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) { return lex_less(a, b); });
  return roots;
}

Complex discriminant(Complex S, Complex A, Complex B) {
  return 18.0 * S * A * B + S * S * A * A - 4.0 * A * A * A - 27.0 * B * B - 4.0 * B * S * S * S;
}

double discriminant_scale(Complex S, Complex A, Complex B) {
  const double r = std::max({std::abs(S), std::sqrt(std::abs(A)), std::cbrt(std::abs(B))});
  return std::pow(r, 6.0);
}

RootTriple binary_roots(const BinaryCoeffs& k) {
  const double scale = max_abs(k);
  if (scale < kZeroCoeff) throw Error(ErrorKind::kDegenerateCubic, "all cubic coefficients vanish");
  auto zero = [&](Complex c) { return std::abs(c) <= kZeroCoeff * scale; };

  RootTriple out;
  if (!zero(k.k3)) {
    const auto r = solve_monic_cubic(k.k2 / k.k3, k.k1 / k.k3, k.k0 / k.k3);
    out.p.assign(r.begin(), r.end());
  } else if (!zero(k.k2)) {
    out.vertical = 1;
    const Complex b = k.k1 / k.k2;
    const Complex c = k.k0 / k.k2;
    const Complex sq = std::sqrt(b * b - 4.0 * c);
    const Complex q = -0.5 * (b + (std::real(std::conj(b) * sq) >= 0.0 ? sq : -sq));
    if (q == Complex(0.0)) {
      out.p = {0.0, 0.0};
    } else {
      out.p = {q, c / q};
    }
    std::sort(out.p.begin(), out.p.end(), [](Complex a, Complex b2) { return lex_less(a, b2); });
  } else if (!zero(k.k1)) {
    out.vertical = 2;
    out.p = {-k.k0 / k.k1};
  } else {
    out.vertical = 3;
  }
  out.partition = cluster(out.p, out.vertical);
  return out;
}

RootTriple roots_at(const CubicWeb& web, Point p) { return binary_roots(web.binary_at(p)); }

Complex discriminant_at(const CubicWeb& web, Point p) {
  const BinaryCoeffs k = web.binary_at(p);
  if (std::abs(k.k3) <= kZeroCoeff * max_abs(k)) {
    throw Error(ErrorKind::kDegenerateCubic, "leading coefficient vanishes; no monic form");
  }
  return discriminant(k.k2 / k.k3, k.k1 / k.k3, k.k0 / k.k3);
}

std::vector<int> multiplicity_at(const CubicWeb& web, Point p) {
  return roots_at(web, p).partition;
}

// ---------------------------------------------------------------------------

BinaryCoeffs pushforward_at(const CubicWeb& web, const DiffeoJet& jet) {
  const Complex J = jet.jacobian();
  const double size = std::max({std::abs(jet.f.dx), std::abs(jet.f.dy), std::abs(jet.g.dx),
                                std::abs(jet.g.dy)});
  if (std::abs(J) <= 1e-14 * size * size) {
    throw Error(ErrorKind::kJacobianSingular, "diffeomorphism jet is singular");
  }
  const BinaryCoeffs k = web.binary_at(jet.source);
  // Linear forms as (coefficient of dybar, coefficient of dxbar).
  using Lin = std::array<Complex, 2>;
  const Lin dx{-jet.g.dy / J, jet.f.dy / J};
  const Lin dy{jet.g.dx / J, -jet.f.dx / J};
  // Binary cubics as coefficients of dybar^i dxbar^(3-i), index i.
  auto mul = [](const std::vector<Complex>& a, const Lin& l) {
    std::vector<Complex> out(a.size() + 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      out[i + 1] += a[i] * l[0];
      out[i] += a[i] * l[1];
    }
    return out;
  };
  auto term = [&](Complex c, int ny) {
    std::vector<Complex> acc{c};
    for (int i = 0; i < ny; ++i) acc = mul(acc, dy);
    for (int i = ny; i < 3; ++i) acc = mul(acc, dx);
    return acc;
  };
  std::array<Complex, 4> sum{};
  const std::array<std::pair<Complex, int>, 4> parts{
      {{k.k3, 3}, {k.k2, 2}, {k.k1, 1}, {k.k0, 0}}};
  for (const auto& [c, ny] : parts) {
    const auto t = term(c, ny);
    for (int i = 0; i < 4; ++i) sum[i] += t[i];
  }
  BinaryCoeffs out{sum[3], sum[2], sum[1], sum[0]};
  if (std::abs(out.k3) > kZeroCoeff * max_abs(out)) {
    const Complex lead = out.k3;
    out = {1.0, out.k2 / lead, out.k1 / lead, out.k0 / lead};
  }
  return out;
}

DiffeoJet TriangularMap::jet(Point p) const {
  const Jet2 x = Jet2::var_x(p.x);
  const Jet2 y = Jet2::var_y(p.y);
  const Complex ac = to_double(a), bc = to_double(b), rc = to_double(r);
  return DiffeoJet{p, bc * y + rc * ipow(x, k), ac * x};
}

Point TriangularMap::apply(Point p) const {
  const Complex ac = to_double(a), bc = to_double(b), rc = to_double(r);
  return {ac * p.x, bc * p.y + rc * ipow(p.x, k)};
}

CubicWeb pushforward(const CubicWeb& web, const TriangularMap& map) {
  if (map.a == 0 || map.b == 0 || map.k < 1) {
    throw Error(ErrorKind::kJacobianSingular, "triangular map is not invertible");
  }
  const Weights w = web.weights();
  if (map.r != 0 && Ratio(map.k) * w.wx != w.wy) {
    throw Error(ErrorKind::kNotHomogeneous, "shear does not preserve the symmetry weights");
  }
  const ExactPoly* k3 = web.K3().exact();
  const ExactPoly* k2 = web.K2().exact();
  const ExactPoly* k1 = web.K1().exact();
  const ExactPoly* k0 = web.K0().exact();
  if (!(k3 && k2 && k1 && k0)) {
    throw Error(ErrorKind::kInvalidArgument, "global pushforward needs exact polynomial coefficients");
  }
  // p = (a pbar - c)/b with c = r k x^(k-1); polynomials in pbar as vectors.
  const ExactPoly c = ExactPoly::monomial(map.r * map.k, Ratio(map.k - 1), Ratio(0));
  const std::vector<ExactPoly> p{c * Exact(-1 / map.b), ExactPoly(map.a / map.b)};
  auto mul = [](const std::vector<ExactPoly>& u, const std::vector<ExactPoly>& v) {
    std::vector<ExactPoly> out(u.size() + v.size() - 1);
    for (std::size_t i = 0; i < u.size(); ++i) {
      for (std::size_t j = 0; j < v.size(); ++j) out[i + j] += u[i] * v[j];
    }
    return out;
  };
  std::vector<ExactPoly> total(4);
  std::vector<ExactPoly> power{ExactPoly(Exact(1))};
  const std::array<const ExactPoly*, 4> coeff{k0, k1, k2, k3};
  for (int deg = 0; deg <= 3; ++deg) {
    for (std::size_t i = 0; i < power.size(); ++i) total[i] += power[i] * *coeff[deg];
    power = mul(power, p);
  }
  // Back to the new coordinates: x = xbar/a, y = (ybar - r (xbar/a)^k)/b.
  const ExactPoly px = ExactPoly::x() * Exact(1 / map.a);
  Exact inv_ak = 1;
  for (int i = 0; i < map.k; ++i) inv_ak /= map.a;
  const ExactPoly py =
      (ExactPoly::y() - ExactPoly::monomial(map.r * inv_ak, Ratio(map.k), Ratio(0))) *
      Exact(1 / map.b);
  for (auto& t : total) t = t.substitute(px, py);
  if (total[3].is_constant() && !total[3].is_zero()) {
    const Exact lead = total[3].coefficient(Ratio(0), Ratio(0));
    for (auto& t : total) t = t * Exact(1 / lead);
  }
  const Point base = map.apply(web.base_point());
  return CubicWeb::binary(Field::polynomial(total[3]), Field::polynomial(total[2]),
                          Field::polynomial(total[1]), Field::polynomial(total[0]), w, base,
                          web.label() + " (pushed forward)");
}

// ---------------------------------------------------------------------------

Jet2 sqrt_cot(const Jet2& z) {
  const Complex zv = z.v;
  if (std::abs(zv) < 0.1) {
    // w cot w = sum c_n w^(2n).
    static constexpr double c[] = {1.0,
                                   -1.0 / 3.0,
                                   -1.0 / 45.0,
                                   -2.0 / 945.0,
                                   -1.0 / 4725.0,
                                   -2.0 / 93555.0,
                                   -1382.0 / 638512875.0,
                                   -4.0 / 18243225.0};
    Complex f0 = 0.0, f1 = 0.0, f2 = 0.0;
    for (int n = 7; n >= 0; --n) {
      f2 = f2 * zv + 2.0 * f1;
      f1 = f1 * zv + f0;
      f0 = f0 * zv + c[n];
    }
    return compose(z, f0, f1, f2);
  }
  const Complex w = std::sqrt(zv);
  const Complex t = std::cos(w) / std::sin(w);
  const Complex phi = w * t;
  const Complex phi_w = t - w * (1.0 + t * t);
  const Complex phi_ww = 2.0 * (1.0 + t * t) * (w * t - 1.0);
  const Complex f1 = phi_w / (2.0 * w);
  const Complex f2 = phi_ww / (4.0 * w * w) - phi_w / (4.0 * w * w * w);
  return compose(z, phi, f1, f2);
}

namespace {

ExactPoly mono(Exact c, int m, int n) { return ExactPoly::monomial(std::move(c), Ratio(m), Ratio(n)); }

Exact frac(long long p, long long q) { return Exact(p) / Exact(q); }

}  // namespace

CubicWeb catalog(std::string_view name, const CatalogParams& params) {
  const Point origin{0.0, 0.0};
  if (name == "form1") {
    if (params.m0 < 0) throw Error(ErrorKind::kInvalidArgument, "m0 must be non-negative");
    return CubicWeb::binary(Field::polynomial(mono(1, 0, params.m0)), Field(),
                            Field::polynomial(mono(-1, 0, 0)), Field(),
                            {Ratio(2 + params.m0), Ratio(2)}, origin, "form1");
  }
  if (name == "form2") {
    return CubicWeb::monic(Field(), Field::polynomial(mono(2, 1, 0)),
                           Field::polynomial(ExactPoly::y()), {Ratio(2), Ratio(3)}, origin,
                           "form2");
  }
  if (name == "form3") {
    return CubicWeb::monic(Field(), Field::polynomial(mono(1, 0, 1) + mono(frac(-2, 3), 2, 0)),
                           Field::polynomial(mono(frac(-2, 3), 1, 1) + mono(frac(4, 27), 3, 0)),
                           {Ratio(1), Ratio(2)}, origin, "form3");
  }
  if (name == "form4") {
    return CubicWeb::monic(
        Field(), Field::polynomial(mono(4, 1, 1) + mono(frac(-16, 9), 4, 0)),
        Field::polynomial(mono(1, 0, 2) + mono(frac(-32, 9), 3, 1) + mono(frac(64, 81), 6, 0)),
        {Ratio(1), Ratio(3)}, origin, "form4");
  }
  if (name == "form5") {
    Field B = Field::closed_form(
        [](const Jet2& x, const Jet2& y) {
          return ipow(y, 3) * sqrt_cot((16.0 / 3.0) * ipow(x, 3)) / 6.0;
        },
        "(2/sqrt27) x^(3/2) y^3 / tan((4/sqrt3) x^(3/2))");
    return CubicWeb::monic(Field(), Field::polynomial(mono(1, 1, 2)), std::move(B),
                           {Ratio(0), Ratio(1)}, origin, "form5");
  }
  if (name == "form6") {
    const Complex L = params.L;
    Field B = Field::closed_form(
        [L](const Jet2& x, const Jet2& y) {
          return (-2.0 / std::sqrt(27.0)) * ipow(y, 3) * tan(2.0 * std::sqrt(3.0) * x + L);
        },
        "-(2/sqrt27) y^3 tan(2 sqrt3 x + L)");
    return CubicWeb::monic(Field(), Field::polynomial(mono(1, 0, 2)), std::move(B),
                           {Ratio(0), Ratio(1)}, origin, "form6");
  }
  if (name == "form7" || name == "form8") {
    throw Error(ErrorKind::kUnsupportedForm,
                std::string(name) + " is realized only through integrate_hyperbolic");
  }
  throw Error(ErrorKind::kUnknownForm, "unknown normal form: " + std::string(name));
}

}  // namespace frobweb
