#include <cmath>
#include <numbers>

#include "doctest.h"
#include "frobweb/invariant.hpp"
#include "frobweb/reduce.hpp"
#include "frobweb/wdvv.hpp"
#include "reduce_oracle.hpp"
#include "support.hpp"

using namespace frobweb;
using testsupport::max_wdvv0;
using testsupport::rederived_slopes;
using testsupport::rel_near;

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
void expect_error(ErrorKind kind, F&& f) {
  try {
    f();
    FAIL("expected ", kind_name(kind));
  } catch (const Error& e) {
    CHECK(e.kind() == kind);
  }
}

/// Fixed-step RK4 for 3FF'' - 6F'^2 - 2 sqrt3 tan(2 sqrt3 x + L) F F' + F^2 = 0.
std::array<double, 2> direct_F(double L, double u0, double x_end, int steps) {
  auto f = [L](double x, std::array<double, 2> v) {
    const double t = std::tan(2.0 * std::sqrt(3.0) * x + L);
    const double F = v[0], dF = v[1];
    return std::array<double, 2>{
        dF, (6.0 * dF * dF + 2.0 * std::sqrt(3.0) * t * F * dF - F * F) / (3.0 * F)};
  };
  std::array<double, 2> v{1.0, u0};
  const double h = x_end / steps;
  double x = 0.0;
  for (int i = 0; i < steps; ++i) {
    auto add = [](std::array<double, 2> a, std::array<double, 2> b, double c) {
      return std::array<double, 2>{a[0] + c * b[0], a[1] + c * b[1]};
    };
    const auto k1 = f(x, v);
    const auto k2 = f(x + h / 2, add(v, k1, h / 2));
    const auto k3 = f(x + h / 2, add(v, k2, h / 2));
    const auto k4 = f(x + h, add(v, k3, h));
    for (int c = 0; c < 2; ++c) v[c] += h / 6 * (k1[c] + 2 * k2[c] + 2 * k3[c] + k4[c]);
    x += h;
  }
  return v;
}

}  // namespace

TEST_CASE("shear_fit recovers -1/12 and -1/9 exactly") {
  CHECK(shear_fit(catalog("form3"), 2) == Exact(-1) / 12);
  CHECK(shear_fit(catalog("form4"), 3) == Exact(-1) / 9);
  CHECK(shear_fit(catalog("form2"), 2) == Exact(0));
  CHECK(wdvv0_residual_exact(shear_web(catalog("form3"), Exact(-1) / 12, 2)).is_zero());
  CHECK(wdvv0_residual_exact(shear_web(catalog("form4"), Exact(-1) / 9, 3)).is_zero());
}

TEST_CASE("shear_fit failures") {
  expect_error(ErrorKind::kNoSolution, [] { shear_fit(catalog("form3"), 3); });
  // p^3 + y p = 0: the first equation fixes r = -1/12, the others then fail.
  const CubicWeb web = CubicWeb::monic(Field(), Field::polynomial(ExactPoly::y()), Field(),
                                       {Ratio(1), Ratio(2)}, {0.0, 0.0}, "probe");
  expect_error(ErrorKind::kRemainingEquationsFail, [&] { shear_fit(web, 2); });
  expect_error(ErrorKind::kInvalidArgument, [] { shear_fit(catalog("form5"), 2); });
}

TEST_CASE("re-derivation oracle: WDVV0 under the hyperbolic ansatz gives the reduced system") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.5, 0.5), uy(0.6, 1.6);
  for (int m0 : {0, 1, 2, 3}) {
    const double r = (1.0 + m0) / 2.0;
    for (int trial = 0; trial < 20; ++trial) {
      const double s = u(rng), y = uy(rng);
      const double x = s / std::pow(y, r);
      const std::array<double, 3> state{u(rng), u(rng), u(rng)};
      const std::array<Complex, 3> solved = rederived_slopes(r, x, y, state);
      const std::array<Complex, 3> implemented = hyperbolic_rhs<Complex>(
          s, {state[0], state[1], state[2]}, r);
      for (int c = 0; c < 3; ++c) CHECK_MESSAGE(rel_near(solved[c], implemented[c], 1e-10), m0);
    }
  }
}

TEST_CASE("parabolic family tuned to L reproduces the form 6 invariant") {
  for (Complex L : {Complex(kPi / 4), Complex(kPi / 6)}) {
    const Complex b0 = parabolic_initial_for_L(L);
    const ReducedFamily fam = integrate_parabolic(0.0, 1.0 / 3.0, b0, -0.2, 0.2);
    CHECK(max_wdvv0(fam.web, -0.2, 0.2, 0.5, 1.5) < 1e-8);
    const LimitInvariant li = limit_invariant(fam.web);
    REQUIRE(li.kind == InvariantKind::kPair);
    const Complex expected = std::tan(L) * std::tan(L) / -27.0;
    CHECK(std::abs(li.value.second - expected) < 1e-6 * std::abs(expected));
  }
  CHECK(rel_near(parabolic_initial_for_L(kPi / 4), 2.0 / 27.0, 1e-15));
}

TEST_CASE("parabolic profile satisfies its ODE at the knots") {
  const ReducedFamily fam = integrate_parabolic(0.1, 0.2, 0.05, -0.3, 0.3);
  const Profile& prof = *fam.profile;
  // Interpolated states between knots against the knot data, via a
  // fourth-order finite difference of the interpolant.
  for (double x : {-0.25, -0.1, 0.05, 0.2}) {
    const double h = 1e-3;
    const auto um2 = prof.interpolate(x - 2 * h), um1 = prof.interpolate(x - h);
    const auto up1 = prof.interpolate(x + h), up2 = prof.interpolate(x + 2 * h);
    const auto u = prof.interpolate(x);
    std::array<Complex, 3> state{u[0], u[1], u[2]};
    const auto f = parabolic_rhs(state);
    for (int c = 0; c < 3; ++c) {
      const Complex fd = (um2[c] - 8.0 * um1[c] + 8.0 * up1[c] - up2[c]) / (12.0 * h);
      CHECK(std::abs(fd - f[c]) < 1e-9);
    }
  }
}

TEST_CASE("parabolic form-5 class gives [0:1]") {
  const double s0 = 0.3, a0 = s0 * s0 / 3.0, b0 = 0.05;
  REQUIRE(std::abs(9 * a0 * s0 - 2 * s0 * s0 * s0 - 27 * b0) > 1e-3);
  const ReducedFamily fam = integrate_parabolic(s0, a0, b0, -0.2, 0.2);
  CHECK(max_wdvv0(fam.web, -0.2, 0.2, 0.5, 1.5) < 1e-8);
  const LimitInvariant li = limit_invariant(fam.web);
  CHECK(li.value.first == Complex(0.0));
  CHECK(li.value.second == Complex(1.0));
}

TEST_CASE("degenerate and blow-up integrations") {
  const ReducedFamily zero = integrate_parabolic(0.0, 0.0, 0.0, -1.0, 1.0);
  CHECK(zero.web.is_zero_web());
  const ReducedFamily hzero = integrate_hyperbolic(0.0, 0.0, 0.0, 1, -1.0, 1.0);
  CHECK(hzero.web.is_zero_web());
  expect_error(ErrorKind::kBlowUp, [] { integrate_parabolic(1.0, 1.0, 1.0, 0.0, 10.0); });
  expect_error(ErrorKind::kInvalidArgument, [] { integrate_parabolic(1.0, 1.0, 1.0, 0.1, 1.0); });
  // (1, 0, 0) is a constant solution for k = 1: the numerators vanish, so the
  // zero of the denominator at s = 1 is removable and is stepped over.
  const ReducedFamily still = integrate_hyperbolic(1.0, 0.0, 0.0, 1, 0.0, 2.0);
  CHECK(std::abs(still.profile->interpolate(1.7)[0] - 1.0) < 1e-12);
  // (1, 1, 1) reaches a genuine pole of the reduced system near s = 0.338.
  try {
    integrate_hyperbolic(1.0, 1.0, 1.0, 1, 0.0, 2.0);
    FAIL("expected a failure");
  } catch (const Error& e) {
    CHECK((e.kind() == ErrorKind::kDenominatorZero || e.kind() == ErrorKind::kBlowUp));
  }
}

TEST_CASE("hyperbolic family: WDVV0 on the principal branch and the closed-form invariant") {
  const std::array<Complex, 3> data[] = {{0.3, 0.03, 0.05}, {0.2, 0.1, 0.05}, {-0.1, 0.2, 0.02}};
  for (int m0 : {0, 1, 2}) {
    for (const auto& d : data) {
      const ReducedFamily fam = integrate_hyperbolic(d[0], d[1], d[2], m0, -0.3, 0.3);
      CHECK(fam.web.weights().wx == Ratio(1 + m0));
      CHECK(fam.web.weights().wy == Ratio(-2));
      // s = x y^r stays inside the profile for |x| <= 0.15, y in [0.5, 1.5]
      // when r <= 1.5.
      CHECK(max_wdvv0(fam.web, -0.15, 0.15, 0.5, 1.25) < 1e-8);
      const LimitInvariant li = limit_invariant(fam.web);
      const Complex sg = d[0], al = d[1], be = d[2];
      const Complex i3 = 108.0 * std::pow(sg * sg - 3.0 * al, 3);
      const Complex j2 = std::pow(2.0 * sg * sg * sg - 9.0 * al * sg + 27.0 * be, 2);
      const ProjectivePair expected = normalize_pair(i3, j2);
      CHECK(std::abs(li.value.first - expected.first) < 1e-6);
      CHECK(std::abs(li.value.second - expected.second) <
            1e-6 * std::max(1.0, std::abs(expected.second)));
    }
  }
}

TEST_CASE("hyperbolic form-8 class gives [0:1]") {
  const ReducedFamily fam = integrate_hyperbolic(0.3, 0.03, 0.05, 1, -0.3, 0.3);
  const LimitInvariant li = limit_invariant(fam.web);
  CHECK(li.value.first == Complex(0.0));
  CHECK(li.value.second == Complex(1.0));
}

TEST_CASE("even m0 parity: sigma and beta odd, alpha even") {
  for (int m0 : {0, 2, 4}) {
    const ReducedFamily fam = integrate_hyperbolic(0.0, 0.2, 0.0, m0, -0.4, 0.4);
    const Profile& prof = *fam.profile;
    for (double s : prof.knots()) {
      if (s <= 0.0) continue;
      const auto a = prof.interpolate(s), b = prof.interpolate(-s);
      CHECK(std::abs(a[0] + b[0]) < 1e-9);
      CHECK(std::abs(a[1] - b[1]) < 1e-9);
      CHECK(std::abs(a[2] + b[2]) < 1e-9);
    }
  }
}

TEST_CASE("the involution maps solutions to solutions") {
  const ReducedFamily a = integrate_hyperbolic(0.2, 0.1, 0.05, 3, -0.3, 0.3);
  const ReducedFamily b = integrate_hyperbolic(-0.2, 0.1, -0.05, 3, -0.3, 0.3);
  for (double s = -0.3; s <= 0.3; s += 0.05) {
    const auto ua = a.profile->interpolate(s), ub = b.profile->interpolate(-s);
    CHECK(std::abs(ua[0] + ub[0]) < 1e-9);
    CHECK(std::abs(ua[1] - ub[1]) < 1e-9);
    CHECK(std::abs(ua[2] + ub[2]) < 1e-9);
  }
}

TEST_CASE("riccati_F agrees with direct integration of the second-order equation") {
  const double L = kPi / 4;
  for (double u0 : {-0.3, 0.0, 0.4}) {
    const auto prof = riccati_F(L, u0, -0.2, 0.2);
    for (double x : {-0.2, -0.1, 0.1, 0.2}) {
      const auto jet = riccati_F_jet(*prof, x);
      const auto direct = direct_F(L, u0, x, 4000);
      CHECK(std::abs(jet[0] - direct[0]) < 1e-8);
      CHECK(std::abs(jet[1] - direct[1]) < 1e-8);
      CHECK(std::abs(fparabolic_residual(jet[0], jet[1], jet[2], L, x)) < 1e-8);
    }
    // The residual also holds for finite differences of F itself.
    for (double x : {-0.15, 0.0, 0.15}) {
      const double h = 1e-4;
      const Complex Fm = riccati_F_jet(*prof, x - h)[0], F0 = riccati_F_jet(*prof, x)[0];
      const Complex Fp = riccati_F_jet(*prof, x + h)[0];
      const Complex d1 = (Fp - Fm) / (2 * h), d2 = (Fp - 2.0 * F0 + Fm) / (h * h);
      CHECK(std::abs(fparabolic_residual(F0, d1, d2, L, x)) < 1e-5);
    }
  }
}

TEST_CASE("riccati_F with complex L and the delta relation") {
  const Complex L(1.0, 0.3);
  const auto prof = riccati_F(L, 0.1, -0.2, 0.2);
  for (double x : {-0.2, 0.0, 0.2}) {
    const auto jet = riccati_F_jet(*prof, x);
    CHECK(std::abs(fparabolic_residual(jet[0], jet[1], jet[2], L, x)) < 1e-8);
  }
  // G' = -delta K F^2 with delta = 1, K = -1: recover delta = -G'/(K F^2)
  // from a Simpson-integrated G.
  const double K = -1.0, h = 1e-3;
  auto G = [&](double x) {
    const int n = 200;
    const double step = x / n;
    Complex acc = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      const Complex F = riccati_F_jet(*prof, i * step)[0];
      acc += w * (-K * F * F);
    }
    return acc * step / 3.0;
  };
  for (double x : {-0.1, 0.1}) {
    const Complex dG = (G(x + h) - G(x - h)) / (2 * h);
    const Complex F = riccati_F_jet(*prof, x)[0];
    CHECK(std::abs(-dG / (K * F * F) - 1.0) < 1e-6);
  }
}

TEST_CASE("riccati_F rejects ranges crossing a pole of tan") {
  expect_error(ErrorKind::kPoleCrossing, [] { riccati_F(kPi / 4, 0.0, 0.0, 0.3); });
}
