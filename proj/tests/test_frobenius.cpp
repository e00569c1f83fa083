#include <cmath>

#include "doctest.h"
#include "frobweb/frobenius.hpp"
#include "frobweb/reduce.hpp"
#include "frobweb/wdvv.hpp"
#include "support.hpp"

using namespace frobweb;
using testsupport::rel_near;

namespace {

ExactPoly mono(Exact c, int m, int n) { return ExactPoly::monomial(c, Ratio(m), Ratio(n)); }

CubicWeb sheared(const char* name, Exact r, int k) {
  TriangularMap map;
  map.r = r;
  map.k = k;
  return pushforward(catalog(name), map);
}

CubicWeb constant_web(double S, double A, double B) {
  return CubicWeb::monic(Field::constant(S), Field::constant(A), Field::constant(B),
                         {Ratio(1), Ratio(2)}, {0.0, 0.0}, "constant");
}

/// Web of f = y^3/6 + x^2y^2/2 + x^4y/6 + x^3/6 + x^6/30, a kind1 potential.
CubicWeb kind1_web() {
  ExactPoly f = mono(Exact(1) / 6, 0, 3) + mono(Exact(1) / 2, 2, 2) + mono(Exact(1) / 6, 4, 1) +
                mono(Exact(1) / 6, 3, 0) + mono(Exact(1) / 30, 6, 0);
  return characteristic_web({std::move(f), PotentialKind::kKind1, {Ratio(1), Ratio(3)}});
}

TangentVector vec(Complex a, Complex b, Complex c) { return {{a, b, c}}; }

template <class F>
void expect_error(ErrorKind kind, F&& f) {
  try {
    f();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(kind_name(e.kind()) == kind_name(kind));
  }
}

ReducedFamily parabolic_member() {
  const Complex L = M_PI / 4;
  return integrate_parabolic(0.0, 1.0 / 3.0, parabolic_initial_for_L(L), -0.5, 0.5);
}

ReducedFamily hyperbolic_member() { return integrate_hyperbolic(0.2, 0.1, 0.05, 1, -0.3, 0.3); }

}  // namespace

TEST_CASE("idempotent t-components at roots {1, -1, 0}") {
  const std::array<Complex, 3> p = {1.0, -1.0, 0.0};
  const auto a0 = idempotent_t_components(GermKind::kKind0, p);
  CHECK(a0[0] == Complex(0.25));
  CHECK(a0[1] == Complex(0.25));
  CHECK(a0[2] == Complex(0.5));
  const auto a1 = idempotent_t_components(GermKind::kKind1, p);
  CHECK(a1[0] == Complex(0.0));
  CHECK(a1[1] == Complex(0.0));
  CHECK(a1[2] == Complex(1.0));
}

TEST_CASE("idempotents sum to the unity and are orthogonal") {
  const FrobeniusGerm g0(catalog("form2"), GermKind::kKind0);
  const FrobeniusGerm g1(kind1_web(), GermKind::kKind1);
  for (const FrobeniusGerm* g : {&g0, &g1}) {
    for (const Point& p : testsupport::complex_points(11, 25, 0.3, 1.2, 0.3, 1.2)) {
      const IdempotentFrame f = g->idempotents_at(p);
      const TangentVector s = f.e[0] + f.e[1] + f.e[2];
      CHECK((s - vec(1.0, 0.0, 0.0)).norm() < 1e-10);
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) CHECK(std::abs(g->metric().inner(f.e[i], f.e[j])) < 1e-10);
        // Idempotents are not null: the metric is diagonal and non-degenerate.
        CHECK(std::abs(g->metric().inner(f.e[i], f.e[i])) > 1e-8);
      }
    }
  }
}

TEST_CASE("metric matrices") {
  const Metric m0 = Metric::make(GermKind::kKind0, 2.0);
  CHECK(m0.entry(0, 1) == Complex(1.0));
  CHECK(m0.entry(2, 2) == Complex(2.0));
  CHECK(m0.entry(0, 0) == Complex(0.0));
  const Metric m1 = Metric::make(GermKind::kKind1, 3.0);
  CHECK(m1.entry(0, 0) == Complex(3.0));
  CHECK(m1.entry(1, 2) == Complex(1.0));
  CHECK(m1.entry(1, 1) == Complex(0.0));
  expect_error(ErrorKind::kInvalidArgument, [] { Metric::make(GermKind::kKind0, 0.0); });
}

TEST_CASE("multiplication in the idempotent basis") {
  const FrobeniusGerm g(catalog("form2"), GermKind::kKind0);
  const Point p{1.0, 1.0};
  const IdempotentFrame f = g.idempotents_at(p);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_vec = [&] { return vec(u(rng), u(rng), u(rng)); };
  const TangentVector e = vec(1.0, 0.0, 0.0);
  for (int n = 0; n < 10; ++n) {
    const TangentVector v = random_vec();
    CHECK((multiply(g, e, v, p) - v).norm() < 1e-12);
  }
  CHECK(multiply(f, f.e[0], f.e[1]).norm() < 1e-12);
  CHECK((multiply(f, f.e[0], f.e[0]) - f.e[0]).norm() < 1e-12);
  for (int n = 0; n < 10; ++n) {
    const TangentVector a = random_vec(), b = random_vec(), c = random_vec();
    const TangentVector lhs = multiply(f, multiply(f, a, b), c);
    const TangentVector rhs = multiply(f, a, multiply(f, b, c));
    CHECK((lhs - rhs).norm() < 1e-9);
  }
  IdempotentFrame bad = f;
  bad.e[2] = bad.e[0] + bad.e[1];
  expect_error(ErrorKind::kSingularBasis, [&] { idempotent_coordinates(bad, e); });
}

TEST_CASE("Euler weight w_t") {
  CHECK(euler(FrobeniusGerm(catalog("form2"), GermKind::kKind0)).wt == Ratio(4));
  CHECK(euler(FrobeniusGerm(kind1_web(), GermKind::kKind1)).wt == Ratio(2));
  const CubicWeb equal = CubicWeb::monic(Field::constant(1.0), Field::constant(2.0),
                                         Field::constant(0.5), {Ratio(1), Ratio(1)}, {0.0, 0.0},
                                         "equal weights");
  CHECK(euler(FrobeniusGerm(equal, GermKind::kKind0)).wt == Ratio(1));
  CHECK(euler(FrobeniusGerm(equal, GermKind::kKind1)).wt == Ratio(1));
}

TEST_CASE("verify: polynomial germs pass every check") {
  const CubicWeb webs[] = {catalog("form2"), sheared("form3", Exact(-1) / 12, 2),
                           sheared("form4", Exact(-1) / 9, 3)};
  for (const CubicWeb& web : webs) {
    const FrobeniusGerm g(web, GermKind::kKind0);
    const VerificationReport r = verify(g, rectangle_grid(0.9, 0.9, 1.1, 1.1, 5));
    CHECK(r.checks.size() == 7);
    for (const CheckResult& c : r.checks) {
      CHECK_MESSAGE(c.pass, web.label() << " " << c.name << " " << c.max_residual);
      CHECK(c.points == 25);
    }
    // L_E g = (w_t + w_x) g for the constant kind0 metric.
    const EulerField E = g.euler();
    CHECK(rel_near(r.euler_constant, to_double(E.wt + E.wx), 1e-8));
  }
}

TEST_CASE("verify: kind1 germ from a kind1 potential") {
  const FrobeniusGerm g(kind1_web(), GermKind::kKind1);
  const VerificationReport r = verify(g, rectangle_grid(0.2, 0.5, 0.4, 0.7, 4));
  for (const CheckResult& c : r.checks) CHECK_MESSAGE(c.pass, c.name << " " << c.max_residual);
}

TEST_CASE("verify: reduced families") {
  const ReducedFamily par = parabolic_member();
  const ReducedFamily hyp = hyperbolic_member();
  // The idempotent fields grow toward the singular line y = 0, and with them
  // the finite-difference truncation; the hyperbolic grid sits further out.
  for (const ReducedFamily* fam : {&par, &hyp}) {
    const FrobeniusGerm g(fam->web, GermKind::kKind0);
    const auto grid = fam == &par ? rectangle_grid(-0.1, 0.8, 0.1, 1.2, 4)
                                  : rectangle_grid(-0.1, 1.2, 0.1, 1.4, 4);
    const VerificationReport r = verify(g, grid);
    for (const CheckResult& c : r.checks) {
      CHECK_MESSAGE(c.pass, fam->web.label() << " " << c.name << " " << c.max_residual);
    }
  }
}

TEST_CASE("verify: negative controls and errors") {
  const FrobeniusGerm raw(catalog("form3"), GermKind::kKind0);
  const VerificationReport r = verify(raw, rectangle_grid(0.9, 0.9, 1.1, 1.1, 3));
  CHECK(r.check("commutativity").max_residual > 1e-2);
  CHECK_FALSE(r.all_pass());

  const CubicWeb zero = CubicWeb::monic(Field(), Field(), Field(), {Ratio(1), Ratio(2)},
                                        {0.0, 0.0}, "zero");
  const FrobeniusGerm gz(zero, GermKind::kKind0);
  expect_error(ErrorKind::kSingularBasis, [&] { gz.idempotents_at({0.5, 0.5}); });
  expect_error(ErrorKind::kSingularBasis, [&] { verify(gz, rectangle_grid(0.9, 0.9, 1.1, 1.1, 3)); });

  // -32 x^3 = 27 y^2 passes through (-(27/32)^(1/3), 1).
  const FrobeniusGerm g2(catalog("form2"), GermKind::kKind0);
  const double xd = -std::cbrt(27.0 / 32.0);
  expect_error(ErrorKind::kGridTouchesDiscriminant,
               [&] { verify(g2, {{1.0, 1.0}, {xd + 1e-4, 1.0}}); });
  expect_error(ErrorKind::kOnDiscriminant, [&] { g2.idempotents_at({0.0, 0.0}); });
}

TEST_CASE("commutativity residual decays as fd_step^2") {
  const CubicWeb webs[] = {catalog("form2"), sheared("form3", Exact(-1) / 12, 2),
                           parabolic_member().web};
  for (const CubicWeb& web : webs) {
    const FrobeniusGerm g(web, GermKind::kKind0);
    const auto grid = web.label() == "form2" || web.exact_monic()
                          ? rectangle_grid(0.9, 0.9, 1.1, 1.1, 3)
                          : rectangle_grid(-0.1, 0.8, 0.1, 1.2, 3);
    VerifyOptions coarse, fine;
    coarse.fd_step = 1e-3;
    fine.fd_step = 1e-4;
    const double rc = verify(g, grid, coarse).check("commutativity").max_residual;
    const double rf = verify(g, grid, fine).check("commutativity").max_residual;
    CHECK_MESSAGE(rc / rf > 50.0, web.label() << " " << rc << " " << rf);
    CHECK_MESSAGE(rc / rf < 200.0, web.label() << " " << rc << " " << rf);
  }
}

TEST_CASE("idempotents rescale under the Euler flow") {
  // d phi_tau (e_i(p)) = exp(w_t tau) e_i(phi_tau(p)).
  const CubicWeb webs[] = {catalog("form2"), sheared("form4", Exact(-1) / 9, 3)};
  for (const CubicWeb& web : webs) {
    const FrobeniusGerm g(web, GermKind::kKind0);
    const EulerField E = g.euler();
    const double wt = to_double(E.wt), wx = to_double(E.wx), wy = to_double(E.wy);
    for (const Point& p : testsupport::real_points(17, 10, 0.5, 1.5, 0.5, 1.5)) {
      for (double tau : {-0.4, 0.3}) {
        const Point q{std::exp(wx * tau) * p.x, std::exp(wy * tau) * p.y};
        const IdempotentFrame fp = g.idempotents_at(p);
        IdempotentFrame ref = fp;
        for (Complex& r : ref.roots) r *= std::exp((wy - wx) * tau);
        const IdempotentFrame fq = g.idempotents_near(q, ref);
        for (int i = 0; i < 3; ++i) {
          const TangentVector pushed = vec(std::exp(wt * tau) * fp.e[i][0],
                                           std::exp(wx * tau) * fp.e[i][1],
                                           std::exp(wy * tau) * fp.e[i][2]);
          const TangentVector expected = fq.e[i] * std::exp(wt * tau);
          CHECK((pushed - expected).norm() < 1e-7 * std::max(1.0, expected.norm()));
        }
      }
    }
  }
}

TEST_CASE("delta obstruction: kind1 germs cannot sit over the singular webs") {
  const Point origin{0.0, 0.0};
  struct Case {
    CubicWeb web;
    Point start;
  };
  const ReducedFamily hyp = hyperbolic_member();
  const Case cases[] = {
      {catalog("form2"), {0.5, 0.5}},
      {catalog("form3"), {0.5, 0.5}},
      {sheared("form3", Exact(-1) / 12, 2), {0.5, 0.5}},
      {catalog("form4"), {0.5, 0.5}},
      {sheared("form4", Exact(-1) / 9, 3), {0.5, 0.5}},
      {catalog("form5"), {0.3, 0.5}},
      {catalog("form6"), {0.1, 0.5}},
      {hyp.web, {0.1, 0.5}},
  };
  for (const Case& c : cases) {
    const DeltaObstruction d =
        delta_obstruction(c.web, GermKind::kKind1, approach_sequence(c.start, origin), origin);
    CHECK_MESSAGE(d.obstructed, c.web.label() << " " << d.inverse_delta_limit);
    // Kind0: delta = -1/K stays finite and nonzero along the same approach.
    const DeltaObstruction d0 =
        delta_obstruction(c.web, GermKind::kKind0, approach_sequence(c.start, origin), origin);
    CHECK_FALSE(d0.obstructed);
    for (Complex inv : d0.inverse_delta) {
      CHECK(std::abs(inv) > 1e-6);
      CHECK(std::abs(inv) < 1e6);
    }
  }
}

TEST_CASE("delta obstruction: constant web has finite delta") {
  const CubicWeb web = constant_web(1.0, 2.0, 0.5);
  const DeltaObstruction d =
      delta_obstruction(web, GermKind::kKind1, approach_sequence({1.0, 1.0}, {0.0, 0.0}), {0.0, 0.0});
  CHECK_FALSE(d.obstructed);
  // gamma = 0, so K = -1 and delta = 1/(SA - B).
  CHECK(rel_near(d.delta, 1.0 / 1.5, 1e-12));
  expect_error(ErrorKind::kInvalidArgument, [&] {
    delta_obstruction(web, GermKind::kKind1, {{1.0, 1.0}, {0.5, 0.5}}, {0.0, 0.0});
  });
}

TEST_CASE("kind1 connection condition") {
  const auto grid = rectangle_grid(0.2, 0.3, 0.6, 0.8, 4);
  CHECK(kind1_connection_check(kind1_web(), grid) < 1e-8);
  // S = 0, A = 2x, B = y: gamma = 0 but d ln(SA - B) = dy / y.
  CHECK(kind1_connection_check(catalog("form2"), grid) > 1e-3);
  CHECK(kind1_connection_check(constant_web(1.0, 2.0, 0.5), grid) == 0.0);
  expect_error(ErrorKind::kDenominatorZero,
               [] { kind1_connection_check(constant_web(1.0, 1.0, 1.0), {{0.3, 0.3}}); });
}
