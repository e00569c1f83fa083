#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "frobweb/jet.hpp"
#include "frobweb/polynomial.hpp"
#include "frobweb/profile.hpp"

namespace frobweb {

/// Closed-form expression evaluated on jets of the coordinates.
using ClosedForm = std::function<Jet2(const Jet2& x, const Jet2& y)>;

struct PolyBacking {
  std::optional<ExactPoly> exact;
  ComplexPoly numeric;
};

struct ClosedFormBacking {
  ClosedForm f;
  std::string description;
};

/// value(x, y) = y^y_exp * x^x_exp * u_k(x * y^s_exp)
struct ProfileBacking {
  std::shared_ptr<const Profile> profile;
  std::size_t component = 0;
  double y_exp = 0.0;
  double x_exp = 0.0;
  double s_exp = 0.0;
};

/// Immutable bivariate complex-analytic scalar field.
class Field {
 public:
  Field();

  static Field constant(Complex c);
  static Field polynomial(ComplexPoly p);
  static Field polynomial(ExactPoly p);
  static Field closed_form(ClosedForm f, std::string description);
  static Field profile(std::shared_ptr<const Profile> profile, std::size_t component,
                       double y_exp, double x_exp, double s_exp);

  /// Value and partials up to `order` (0, 1 or 2); higher slots are zero.
  Jet2 eval_jet(Point p, int order = 2) const;
  Complex eval(Point p) const { return eval_jet(p, 0).v; }

  /// Exact polynomial backing, when the field was built from rationals.
  const ExactPoly* exact() const;
  const PolyBacking* poly() const;
  const ClosedFormBacking* closed() const;
  const ProfileBacking* profile_backing() const;

  /// True only for a polynomial backing with no terms.
  bool is_zero_polynomial() const;
  std::string describe() const;

 private:
  using Backing = std::variant<PolyBacking, ClosedFormBacking, ProfileBacking>;
  explicit Field(Backing b);
  std::shared_ptr<const Backing> backing_;
};

/// Second-order jet of a planar map ybar = f(x, y), xbar = g(x, y) at a
/// source point. The jet values are the target coordinates.
struct DiffeoJet {
  Point source;
  Jet2 f;
  Jet2 g;

  Point image() const { return {g.v, f.v}; }
  Complex jacobian() const { return f.dy * g.dx - f.dx * g.dy; }
};

/// Jet of a map given by closed forms for ybar and xbar.
DiffeoJet diffeo_jet(const ClosedForm& f, const ClosedForm& g, Point p);

/// Jet of the shear ybar = y + r x^k, xbar = x.
DiffeoJet shear(int k, Complex r, Point p);

}  // namespace frobweb
