#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "frobweb/field.hpp"
#include "frobweb/polynomial.hpp"
#include "frobweb/profile.hpp"

using namespace frobweb;

namespace {

bool near(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

ExactPoly ex(long long num, long long den, int m, int n) {
  return ExactPoly::monomial(Exact(num) / Exact(den), Ratio(m), Ratio(n));
}

}  // namespace

TEST_CASE("polynomial jets are exact") {
  const Field two_x = Field::polynomial(ex(2, 1, 1, 0));
  const Jet2 j = two_x.eval_jet({1.0, 1.0}, 1);
  CHECK(j.v == Complex(2.0));
  CHECK(j.dx == Complex(2.0));
  CHECK(j.dy == Complex(0.0));

  const Field y = Field::polynomial(ExactPoly::y());
  const Jet2 k = y.eval_jet({0.0, 0.0}, 2);
  CHECK(k.v == Complex(0.0));
  CHECK(k.dy == Complex(1.0));
  CHECK(k.dx == Complex(0.0));
  CHECK(k.dxx == Complex(0.0));
  CHECK(k.dxy == Complex(0.0));
  CHECK(k.dyy == Complex(0.0));
}

TEST_CASE("order caps higher slots") {
  const Field f = Field::polynomial(ex(1, 1, 3, 2));
  const Jet2 j = f.eval_jet({2.0, 3.0}, 0);
  CHECK(j.v == Complex(72.0));
  CHECK(j.dx == Complex(0.0));
  CHECK(j.dxx == Complex(0.0));
}

TEST_CASE("mixed partials commute symbolically") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> e(0, 5), c(-9, 9);
  for (int trial = 0; trial < 30; ++trial) {
    ExactPoly p;
    for (int t = 0; t < 6; ++t) p += ex(c(rng), 1 + std::abs(c(rng)), e(rng), e(rng));
    CHECK(p.dx().dy() == p.dy().dx());
  }
}

TEST_CASE("closed-form field evaluates through jets") {
  const double L = std::numbers::pi / 4;
  const Field b = Field::closed_form(
      [L](const Jet2& x, const Jet2& y) {
        return (-2.0 / std::sqrt(27.0)) * ipow(y, 3) * tan(2.0 * std::sqrt(3.0) * x + L);
      },
      "form-6 B");
  const Jet2 j = b.eval_jet({0.0, 1.0}, 2);
  CHECK(near(j.v, -0.3849001794597505, 1e-14));
  // d/dx of tan(2 sqrt3 x + L) at x=0 is 2 sqrt3 sec^2(L) = 4 sqrt3.
  CHECK(near(j.dx, -2.0 / std::sqrt(27.0) * 4.0 * std::sqrt(3.0), 1e-13));
}

TEST_CASE("rational exponents respect the principal branch") {
  const Field f = Field::polynomial(ExactPoly::monomial(Exact(1), Ratio(3, 2), Ratio(0)));
  CHECK(near(f.eval({4.0, 0.0}), 8.0, 1e-14));
  CHECK_THROWS_AS(f.eval({-1.0, 0.0}), Error);
  try {
    f.eval({-1.0, 0.0});
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::kBranchViolation);
  }
  // x^{3/2} at 0: value and first derivative finite, second is not.
  CHECK(near(f.eval_jet({0.0, 0.0}, 1).dx, 0.0, 0.0));
  CHECK_THROWS_AS(f.eval_jet({0.0, 0.0}, 2), Error);
}

TEST_CASE("shear jets") {
  const DiffeoJet id = shear(2, 0.0, {0.7, -0.3});
  CHECK(id.f.v == Complex(-0.3));
  CHECK(id.f.dx == Complex(0.0));
  CHECK(id.f.dy == Complex(1.0));
  CHECK(id.g.dx == Complex(1.0));
  CHECK(id.jacobian() == Complex(1.0));

  const DiffeoJet s3 = shear(2, -1.0 / 12.0, {1.0, 1.0});
  CHECK(near(s3.f.v, 11.0 / 12.0, 1e-15));
  CHECK(near(s3.f.dx, -1.0 / 6.0, 1e-15));
  CHECK(s3.f.dy == Complex(1.0));

  const DiffeoJet s4 = shear(3, -1.0 / 9.0, {1.0, 0.0});
  CHECK(near(s4.f.v, -1.0 / 9.0, 1e-15));
  CHECK(near(s4.f.dx, -1.0 / 3.0, 1e-15));
  CHECK_THROWS_AS(shear(0, 1.0, {0.0, 0.0}), Error);
}

TEST_CASE("shear composed with its inverse is the identity jet") {
  for (int k = 1; k <= 4; ++k) {
    const Point p{0.6, 1.3};
    const Complex r = 0.37;
    const DiffeoJet fwd = shear(k, r, p);
    // Inverse evaluated on the jet of the forward image.
    const Jet2 x = fwd.g;
    const Jet2 ybar = fwd.f;
    const Jet2 y_back = ybar + (-r) * ipow(x, k);
    CHECK(near(y_back.v, p.y, 1e-15));
    CHECK(near(y_back.dx, 0.0, 1e-15));
    CHECK(near(y_back.dy, 1.0, 1e-15));
    CHECK(near(y_back.dxx, 0.0, 1e-14));
  }
}

TEST_CASE("profile field chain rule matches central differences") {
  // u' = u, u(0) = 1, so u = e^s; field value y^a x^b u(x y^r).
  std::vector<double> knots;
  std::vector<std::vector<Complex>> states;
  for (int i = 0; i <= 200; ++i) {
    const double s = -1.0 + 0.01 * i;
    knots.push_back(s);
    states.push_back({std::exp(s)});
  }
  auto rhs = [](const Jet2&, std::span<const Jet2> u, std::span<Jet2> du) { du[0] = u[0]; };
  auto prof = std::make_shared<const Profile>(knots, states, rhs);
  const Field f = Field::profile(prof, 0, 1.5, 0.0, 0.5);

  for (const Point p : {Point{0.3, 1.2}, Point{-0.4, 0.9}, Point{0.1, 1.0}}) {
    const Jet2 j = f.eval_jet(p, 2);
    const double h = 1e-4;
    const Complex fdx = (f.eval({p.x + h, p.y}) - f.eval({p.x - h, p.y})) / (2 * h);
    const Complex fdy = (f.eval({p.x, p.y + h}) - f.eval({p.x, p.y - h})) / (2 * h);
    CHECK(near(j.dx, fdx, 50 * h * h));
    CHECK(near(j.dy, fdy, 50 * h * h));
    const double y = p.y.real(), x = p.x.real();
    const double s = x * std::sqrt(y);
    CHECK(near(j.v, std::pow(y, 1.5) * std::exp(s), 1e-9));
  }
  CHECK_THROWS_AS(f.eval({3.0, 1.0}), Error);
}
