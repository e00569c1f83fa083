#pragma once

#include <array>
#include <string>
#include <vector>

#include "frobweb/web.hpp"

namespace frobweb {

/// kind0: <e, e> = 0; kind1: <e, e> != 0.
enum class GermKind { kKind0, kKind1 };

std::string_view germ_kind_name(GermKind kind);

/// Components (c_t, c_x, c_y) in the flat basis d/dt, d/dx, d/dy.
struct TangentVector {
  std::array<Complex, 3> c{};

  Complex& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  const Complex& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  TangentVector operator+(const TangentVector& o) const;
  TangentVector operator-(const TangentVector& o) const;
  TangentVector operator*(Complex s) const;
  double norm() const;
};

/// Constant metric over (t, x, y).
/// kind0: [[0,1,0],[1,0,0],[0,0,delta]]; kind1: [[delta,0,0],[0,0,1],[0,1,0]].
struct Metric {
  GermKind kind = GermKind::kKind0;
  Complex delta{1.0};

  /// InvalidArgument when delta = 0.
  static Metric make(GermKind kind, Complex delta = 1.0);
  Complex entry(int i, int j) const;
  Complex inner(const TangentVector& u, const TangentVector& v) const;
};

/// Weights of E = w_t t d/dt + w_x x d/dx + w_y y d/dy.
struct EulerField {
  Ratio wt{0};
  Ratio wx{0};
  Ratio wy{0};

  TangentVector at(Complex t, Point p) const;
};

/// Roots, integrating factor and idempotents at one point. Roots are in
/// the order the idempotents use; frames near a reference keep its order.
struct IdempotentFrame {
  Point point{};
  std::array<Complex, 3> roots{};
  Complex K{-1.0};
  std::array<TangentVector, 3> e{};
};

/// Germ over a web in flat coordinates. The data does not depend on t.
/// kind0 fixes K = -1 (so delta = 1); kind1 takes K = -sqrt(SA - B) so that
/// delta = K^2/(SA - B) = 1, which is consistent exactly when
/// 2 gamma = d ln(SA - B).
class FrobeniusGerm {
 public:
  FrobeniusGerm(CubicWeb web, GermKind kind);

  const CubicWeb& web() const { return web_; }
  GermKind kind() const { return kind_; }
  const Metric& metric() const { return metric_; }
  EulerField euler() const;

  /// K at p; for kind1 the square-root branch nearest `near` (if nonzero).
  Complex K_at(Point p, Complex near = 0.0) const;

  /// SingularBasis for the zero web (no idempotent basis anywhere),
  /// OnDiscriminant at points with coincident roots.
  IdempotentFrame idempotents_at(Point p) const;
  /// Same, with roots matched to `ref` and K on the branch of ref.K.
  IdempotentFrame idempotents_near(Point p, const IdempotentFrame& ref) const;

 private:
  IdempotentFrame frame(Point p, const std::array<Complex, 3>& roots, Complex K) const;

  CubicWeb web_;
  GermKind kind_;
  Metric metric_;
};

/// w_t = 2 w_y - w_x (kind0) or (w_x + w_y)/2 (kind1).
EulerField euler(const FrobeniusGerm& germ);

/// kind0: alpha = (p2p3 - p1(p2+p3)) / (2(p1-p2)(p1-p3)), beta likewise.
/// kind1: alpha = (p1+p2)(p1+p3) / ((p1-p2)(p1-p3)), beta likewise.
/// Returns {alpha, beta, 1 - alpha - beta}.
std::array<Complex, 3> idempotent_t_components(GermKind kind, const std::array<Complex, 3>& p);

/// Coordinates of u in the idempotent basis. SingularBasis when the frame
/// determinant is below 1e-12 of the product of the vector norms.
std::array<Complex, 3> idempotent_coordinates(const IdempotentFrame& frame,
                                              const TangentVector& u);
TangentVector multiply(const IdempotentFrame& frame, const TangentVector& u,
                       const TangentVector& v);
TangentVector multiply(const FrobeniusGerm& germ, const TangentVector& u, const TangentVector& v,
                       Point p);

struct VerifyOptions {
  double fd_step = 1e-4;
  double tolerance = 1e-6;
  /// Random (u, v, w) triples per point for the algebraic checks.
  int random_triples = 4;
  unsigned seed = 7;
};

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  int points = 0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  /// Fitted c in L_E g = c g.
  Complex euler_constant{0.0};
  double fd_step = 0.0;
  double tolerance = 0.0;

  bool all_pass() const;
  const CheckResult& check(std::string_view name) const;
};

/// Checks, in order: unity, orthogonality, commutativity (finite-difference
/// Lie brackets of the idempotent fields), product (associativity and
/// commutativity), invariance, euler (L_E g proportional to g) and
/// potentiality (d_z c(u,v,w) symmetric in all four slots). Derivatives are
/// plain central differences with step fd_step, so the bracket residual
/// decays as fd_step^2. GridTouchesDiscriminant when a point lies within
/// 10 fd_step of D = 0 (first-order estimate |D| / |grad D|).
VerificationReport verify(const FrobeniusGerm& germ, const std::vector<Point>& grid,
                          const VerifyOptions& options = {});

/// n x n grid on [x0, x1] x [y0, y1].
std::vector<Point> rectangle_grid(double x0, double y0, double x1, double y1, int n);

struct DeltaObstruction {
  /// |limit of 1/delta| < 1e-6.
  bool obstructed = false;
  Complex inverse_delta_limit{0.0};
  /// 1/limit when not obstructed.
  Complex delta{0.0};
  std::vector<Complex> K;
  std::vector<Complex> inverse_delta;
};

/// 1/delta along `sequence` (approaching `target`): -K for kind0 and
/// (SA - B)/K^2 for kind1, with K = -1 at the first point and transported
/// by dK/K = gamma along the polyline. The limit is Neville-extrapolated
/// in the distance to `target` from the last four samples.
/// PathCrossesDiscriminant as for integrating_factor.
DeltaObstruction delta_obstruction(const CubicWeb& web, GermKind kind,
                                   const std::vector<Point>& sequence, Point target);

/// target + 2^-n (start - target), n = 0..count-1.
std::vector<Point> approach_sequence(Point start, Point target, int count = 12);

/// max over grid of |2 g1 - d_x ln(SA - B)| + |2 g2 - d_y ln(SA - B)|.
/// DenominatorZero where SA - B vanishes.
double kind1_connection_check(const CubicWeb& web, const std::vector<Point>& grid);

}  // namespace frobweb
