#include <cmath>
#include <numbers>

#include "doctest.h"
#include "frobweb/chern.hpp"
#include "support.hpp"

using namespace frobweb;
using testsupport::near;
using testsupport::rel_near;

namespace {

CubicWeb sab(Field S, Field A, Field B) {
  return CubicWeb::monic(std::move(S), std::move(A), std::move(B), {Ratio(1), Ratio(1)},
                         {0.0, 0.0}, "test");
}

ExactPoly mono(long long c, int m, int n) {
  return ExactPoly::monomial(Exact(c), Ratio(m), Ratio(n));
}

struct Region {
  const char* name;
  CatalogParams params;
  double x0, x1, y0, y1;
};

const Region kRegions[] = {
    {"form1", {0, {}}, -1.0, 1.0, 0.5, 1.5}, {"form1", {2, {}}, -1.0, 1.0, 0.5, 1.5},
    {"form2", {}, 0.2, 1.5, 0.2, 1.5},       {"form3", {}, 0.2, 1.5, 0.2, 1.5},
    {"form4", {}, 0.2, 1.5, 0.2, 1.5},       {"form5", {}, 0.1, 0.8, 0.5, 1.5},
    {"form6", {}, -0.5, 0.15, 0.5, 1.5},
};

}  // namespace

TEST_CASE("gamma vanishes identically for forms 2, 3, 4") {
  for (const char* name : {"form2", "form3", "form4"}) {
    const CubicWeb web = catalog(name);
    const ExactConnection& ec = exact_connection(web);
    CHECK(ec.gamma1.is_zero());
    CHECK(ec.gamma2.is_zero());
    for (const Point p : testsupport::complex_points(1, 20, 0.2, 1.2, 0.2, 1.2)) {
      const ConnectionData g = gamma_at(web, p);
      CHECK(std::abs(g.g1) < 1e-12);
      CHECK(std::abs(g.g2) < 1e-12);
    }
  }
}

TEST_CASE("form 6 connection in closed form") {
  for (const Complex L : {Complex(std::numbers::pi / 4), Complex(std::numbers::pi / 6),
                          Complex(1.0, 0.3)}) {
    const CubicWeb web = catalog("form6", {0, L});
    const ConnectionData g0 = gamma_at(web, {0.0, 1.0});
    CHECK(rel_near(g0.g1, 2.0 / std::sqrt(3.0) * std::tan(L), 1e-12));
    CHECK(std::abs(g0.g2) < 1e-12);
    for (const Point p : testsupport::complex_points(2, 20, -0.3, 0.1, 0.5, 1.5, 0.05)) {
      const ConnectionData g = gamma_at(web, p);
      const Complex expected = 2.0 / std::sqrt(3.0) * std::tan(2.0 * std::sqrt(3.0) * p.x + L);
      CHECK(rel_near(g.g1, expected, 1e-10));
      CHECK(std::abs(g.g2) < 1e-10);
    }
  }
  CHECK(near(gamma_at(catalog("form6"), {0.0, 1.0}).g1, 1.1547005383792515, 1e-14));
}

TEST_CASE("constant coefficients give a zero connection") {
  const CubicWeb web = sab(Field::constant(1.0), Field::constant(-2.0), Field::constant(0.5));
  const ConnectionData g = gamma_at(web, {0.3, 0.7});
  CHECK(g.g1 == Complex(0.0));
  CHECK(g.g2 == Complex(0.0));
}

TEST_CASE("curvature examples") {
  const CubicWeb bent = sab(Field(), Field(), Field::polynomial(mono(1, 1, 0) + mono(1, 0, 2)));
  CHECK(near(curvature_at(bent, {1.0, 1.0}), -1.0 / 6.0, 1e-14));
  // Hand formula: gamma = (B_x dx + 2 B_y dy)/(3B), dgamma = -2y/(3B^2).
  for (const Point p : testsupport::complex_points(4, 10, 0.5, 1.5, 0.5, 1.5)) {
    const Complex B = p.x + p.y * p.y;
    CHECK(rel_near(curvature_at(bent, p), -2.0 * p.y / (3.0 * B * B), 1e-12));
    CHECK(rel_near(curvature_fd(bent, p), -2.0 * p.y / (3.0 * B * B), 1e-7));
  }
  const CubicWeb straight = sab(Field(), Field(), Field::polynomial(mono(1, 1, 0)));
  CHECK(curvature_at(straight, {1.0, 1.0}) == Complex(0.0));
  CHECK(exact_connection(straight).N.is_zero());

  // Non-polynomial, non-flat: jet route against finite differences.
  const CubicWeb closed = sab(
      Field(), Field::closed_form([](const Jet2& x, const Jet2& y) { return 0.3 * exp(x) * y; }, "A"),
      Field::closed_form([](const Jet2& x, const Jet2& y) { return x + y * y; }, "B"));
  for (const Point p : testsupport::complex_points(5, 10, 0.5, 1.5, 0.5, 1.5)) {
    CHECK(rel_near(curvature_at(closed, p), curvature_fd(closed, p), 1e-7));
  }
}

TEST_CASE("every catalog form is flat") {
  unsigned seed = 50;
  for (const Region& r : kRegions) {
    const CubicWeb web = catalog(r.name, r.params);
    for (const Point p : testsupport::real_points(seed++, 50, r.x0, r.x1, r.y0, r.y1)) {
      const Complex c = curvature_at(web, p);
      if (web.exact_monic()) {
        CHECK(c == Complex(0.0));
      } else {
        CHECK(std::abs(c) < 1e-8);
      }
    }
    if (web.exact_monic()) CHECK(exact_connection(web).N.is_zero());
  }
}

TEST_CASE("on-discriminant guard") {
  CHECK_THROWS_AS(gamma_at(catalog("form2"), {0.0, 0.0}), Error);
  try {
    gamma_at(catalog("form6"), {0.1, 0.0});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kOnDiscriminant);
  }
}

TEST_CASE("integrating factor") {
  const CubicWeb f2 = catalog("form2");
  const std::vector<Point> path{{0.5, 0.5}, {1.0, 0.7}, {1.2, 1.3}};
  CHECK(near(integrating_factor(f2, path, -1.0), -1.0, 1e-15));

  for (const Complex L : {Complex(std::numbers::pi / 4), Complex(1.0, 0.3)}) {
    const CubicWeb f6 = catalog("form6", {0, L});
    for (double x : {-0.4, -0.1, 0.1}) {
      const Complex K0 = std::pow(std::cos(L), -1.0 / 3.0);
      const Complex K = integrating_factor(f6, {{0.0, 1.0}, {x, 1.0}}, K0);
      const Complex expected = std::pow(std::cos(2.0 * std::sqrt(3.0) * x + L), -1.0 / 3.0);
      CHECK(rel_near(K, expected, 1e-9));
    }
  }

  // Closed loop on a flat web.
  const CubicWeb f6 = catalog("form6");
  const std::vector<Point> loop{{0.0, 1.0}, {0.1, 1.2}, {-0.2, 1.4}, {-0.3, 0.8}, {0.0, 1.0}};
  CHECK(rel_near(integrating_factor(f6, loop, 2.5), 2.5, 1e-9));

  // The other sign convention inverts K.
  IntegrationOptions neg;
  neg.convention = KConvention::kNegative;
  const Complex Kp = integrating_factor(f6, {{0.0, 1.0}, {0.1, 1.0}}, 1.0);
  const Complex Kn = integrating_factor(f6, {{0.0, 1.0}, {0.1, 1.0}}, 1.0, neg);
  CHECK(rel_near(Kp * Kn, 1.0, 1e-12));

  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kInvalidArgument;
  };
  const CubicWeb bent = sab(Field(), Field(), Field::polynomial(mono(1, 1, 0) + mono(1, 0, 2)));
  CHECK(kind_of([&] { integrating_factor(bent, {{1.0, 1.0}, {1.5, 1.0}}, 1.0); }) ==
        ErrorKind::kNotFlat);
  CHECK(kind_of([&] { integrating_factor(f2, {{-0.3, -0.5}, {-0.3, 0.5}}, 1.0); }) ==
        ErrorKind::kPathCrossesDiscriminant);
  CHECK(kind_of([&] { integrating_factor(f2, {{0.5, 1.0}, {0.0, 0.0}}, 1.0); }) ==
        ErrorKind::kPathCrossesDiscriminant);
}

namespace {

// Map xbar = x + 0.2 y, ybar = y + 0.1 x^2 and its numerical inverse.
Jet2 map_f(const Jet2& x, const Jet2& y) { return y + 0.1 * x * x; }
Jet2 map_g(const Jet2& x, const Jet2& y) { return x + 0.2 * y; }

Point invert(Point target) {
  Point p = target;
  for (int it = 0; it < 60; ++it) {
    const Complex x = target.x - 0.2 * p.y;
    const Complex y = target.y - 0.1 * x * x;
    p = {x, y};
  }
  return p;
}

// gamma in new coordinates from finite differences of the transformed cubic.
ConnectionData oracle_gamma(const CubicWeb& web, Point image) {
  auto coeffs = [&](Complex dx, Complex dy) {
    const Point target{image.x + dx, image.y + dy};
    const Point src = invert(target);
    return pushforward_at(web, diffeo_jet(map_f, map_g, src));
  };
  const BinaryCoeffs c = coeffs(0.0, 0.0);
  auto d = [&](int which, bool along_x) {
    auto get = [&](const BinaryCoeffs& k) { return which == 0 ? k.k2 : which == 1 ? k.k1 : k.k0; };
    auto cd = [&](double h) {
      const Complex a = along_x ? get(coeffs(h, 0.0)) : get(coeffs(0.0, h));
      const Complex b = along_x ? get(coeffs(-h, 0.0)) : get(coeffs(0.0, -h));
      return (a - b) / (2.0 * h);
    };
    return (4.0 * cd(5e-4) - cd(1e-3)) / 3.0;
  };
  const GammaParts<Complex> g = gamma_parts(c.k2, c.k1, c.k0, d(0, true), d(0, false),
                                            d(1, true), d(1, false), d(2, true), d(2, false));
  return {-g.gamma1 / g.D, -g.gamma2 / g.D, g.D};
}

}  // namespace

TEST_CASE("connection pullback agrees with the transformed web") {
  const CubicWeb f6 = catalog("form6");
  const CubicWeb closed = sab(
      Field(), Field::closed_form([](const Jet2& x, const Jet2& y) { return 0.3 * exp(x) * y; }, "A"),
      Field::closed_form([](const Jet2& x, const Jet2& y) { return x + y * y; }, "B"));
  for (const CubicWeb* web : {&f6, &closed}) {
    for (const Point p : testsupport::real_points(9, 8, -0.3, 0.1, 0.7, 1.3)) {
      const DiffeoJet jet = diffeo_jet(map_f, map_g, p);
      const ConnectionData got = gamma_pullback(*web, jet, gamma_at(*web, p));
      const ConnectionData want = oracle_gamma(*web, jet.image());
      CHECK(rel_near(got.g1, want.g1, 1e-7));
      CHECK(rel_near(got.g2, want.g2, 1e-7));
      CHECK(rel_near(got.D, want.D, 1e-10));
    }
  }

  // Identity jet leaves gamma unchanged.
  const Point p{0.05, 1.1};
  const ConnectionData g = gamma_at(f6, p);
  const ConnectionData same = gamma_pullback(f6, shear(2, 0.0, p), g);
  CHECK(near(same.g1, g.g1, 1e-14));
  CHECK(near(same.g2, g.g2, 1e-14));

  // Pure scaling of a constant web keeps gamma zero.
  const CubicWeb constant = sab(Field::constant(1.0), Field::constant(-2.0), Field::constant(0.5));
  const DiffeoJet scale = TriangularMap{3, Exact(1) / 2, 0, 1}.jet({0.4, 0.9});
  const ConnectionData zero = gamma_pullback(constant, scale, gamma_at(constant, {0.4, 0.9}));
  CHECK(std::abs(zero.g1) < 1e-15);
  CHECK(std::abs(zero.g2) < 1e-15);

  // Form 3 under the fitted shear: both routes give zero.
  const CubicWeb f3 = catalog("form3");
  const TriangularMap sh{1, 1, Exact(-1) / 12, 2};
  const CubicWeb sheared = pushforward(f3, sh);
  const DiffeoJet jet = sh.jet({1.0, 1.0});
  const ConnectionData route1 = gamma_pullback(f3, jet, gamma_at(f3, {1.0, 1.0}));
  const ConnectionData route2 = gamma_at(sheared, jet.image());
  CHECK(near(route1.g1, route2.g1, 1e-12));
  CHECK(near(route1.g2, route2.g2, 1e-12));
  CHECK(rel_near(route1.D, route2.D, 1e-12));
}

TEST_CASE("normalized forms and the h pairings") {
  const WebForms w = web_forms_at(catalog("form1", {0, {}}), {0.3, 1.0});
  CHECK(near(w.omega, 2.0, 1e-14));
  const WebForms w2 = web_forms_at(catalog("form2"), {1.0, 1.0});
  CHECK(std::abs(w2.sigma[0].dx + w2.sigma[1].dx + w2.sigma[2].dx) < 1e-14);
  CHECK(std::abs(w2.sigma[0].dy + w2.sigma[1].dy + w2.sigma[2].dy) < 1e-14);

  const WebForms w6 = web_forms_at(catalog("form6"), {0.0, 1.0});
  const ConnectionData g6 = gamma_at(catalog("form6"), {0.0, 1.0});
  for (const Covector& c : w6.pairings) {
    CHECK(near(c.dx, g6.g1, 1e-6));
    CHECK(near(c.dy, g6.g2, 1e-6));
  }

  unsigned seed = 70;
  for (const Region& r : kRegions) {
    const CubicWeb web = catalog(r.name, r.params);
    for (const Point p : testsupport::real_points(seed++, 50, r.x0, r.x1, r.y0, r.y1)) {
      const WebForms f = web_forms_at(web, p);
      const ConnectionData g = gamma_at(web, p);
      const double scale = std::max(1.0, std::abs(g.g1) + std::abs(g.g2));
      for (const Covector& c : f.pairings) {
        CHECK(std::abs(c.dx - g.g1) <= 1e-6 * scale);
        CHECK(std::abs(c.dy - g.g2) <= 1e-6 * scale);
      }
    }
  }
}

TEST_CASE("d sigma = gamma ^ sigma on a flat web") {
  const CubicWeb f6 = catalog("form6");
  for (const Point p : testsupport::real_points(12, 10, -0.3, 0.1, 0.6, 1.4)) {
    const WebForms f = web_forms_at(f6, p);
    const ConnectionData g = gamma_at(f6, p);
    for (int i = 0; i < 3; ++i) {
      // (g1 dx + g2 dy) ^ (c dx + d dy) = (g1 d - g2 c) dx^dy = -(g1 d - g2 c) dy^dx.
      const Complex wedge = -(g.g1 * f.sigma[i].dy - g.g2 * f.sigma[i].dx);
      CHECK(std::abs(f.h[i] * f.omega - wedge) < 1e-6 * std::max(1.0, std::abs(wedge)));
    }
  }
}
