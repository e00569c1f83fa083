#include "frobweb/field.hpp"

#include <cmath>
#include <sstream>

namespace frobweb {

Field::Field() : Field(PolyBacking{ExactPoly{}, ComplexPoly{}}) {}

Field::Field(Backing b) : backing_(std::make_shared<const Backing>(std::move(b))) {}

Field Field::constant(Complex c) {
  if (c.imag() == 0.0 && c.real() == std::round(c.real()) && std::abs(c.real()) < 1e15) {
    return polynomial(ExactPoly(Exact(static_cast<long long>(c.real()))));
  }
  return polynomial(ComplexPoly(c));
}

Field Field::polynomial(ComplexPoly p) { return Field(PolyBacking{std::nullopt, std::move(p)}); }

Field Field::polynomial(ExactPoly p) {
  ComplexPoly numeric = p.to_complex();
  return Field(PolyBacking{std::move(p), std::move(numeric)});
}

Field Field::closed_form(ClosedForm f, std::string description) {
  return Field(ClosedFormBacking{std::move(f), std::move(description)});
}

Field Field::profile(std::shared_ptr<const Profile> profile, std::size_t component,
                     double y_exp, double x_exp, double s_exp) {
  if (!profile || component >= profile->dimension()) {
    throw Error(ErrorKind::kInvalidArgument, "profile component out of range");
  }
  return Field(ProfileBacking{std::move(profile), component, y_exp, x_exp, s_exp});
}

namespace {

Jet2 eval_profile(const ProfileBacking& b, Point p) {
  const Jet2 x = Jet2::var_x(p.x);
  const Jet2 y = Jet2::var_y(p.y);
  const Jet2 s = b.s_exp == 0.0 ? x : x * rpow(y, b.s_exp);
  const double scale = std::max(1.0, std::abs(s.v));
  if (std::abs(s.v.imag()) > 1e-12 * scale) {
    throw Error(ErrorKind::kOutOfRange, "profile argument s is not real");
  }
  const Profile::Sample smp = b.profile->evaluate(s.v.real());
  Jet2 u = compose(s, smp.u[b.component], smp.du[b.component], smp.d2u[b.component]);
  if (b.y_exp != 0.0) u = rpow(y, b.y_exp) * u;
  if (b.x_exp != 0.0) u = rpow(x, b.x_exp) * u;
  return u;
}

}  // namespace

Jet2 Field::eval_jet(Point p, int order) const {
  Jet2 out = std::visit(
      [&](const auto& b) -> Jet2 {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, PolyBacking>) {
          return b.numeric.eval_jet(p, order);
        } else if constexpr (std::is_same_v<T, ClosedFormBacking>) {
          return b.f(Jet2::var_x(p.x), Jet2::var_y(p.y));
        } else {
          return eval_profile(b, p);
        }
      },
      *backing_);
  out = out.truncated(order);
  if (!out.finite(order)) throw Error(ErrorKind::kNonFinite, "non-finite field value");
  return out;
}

const ExactPoly* Field::exact() const {
  const auto* b = std::get_if<PolyBacking>(backing_.get());
  return (b && b->exact) ? &*b->exact : nullptr;
}

const PolyBacking* Field::poly() const { return std::get_if<PolyBacking>(backing_.get()); }

const ClosedFormBacking* Field::closed() const {
  return std::get_if<ClosedFormBacking>(backing_.get());
}

const ProfileBacking* Field::profile_backing() const {
  return std::get_if<ProfileBacking>(backing_.get());
}

bool Field::is_zero_polynomial() const {
  const auto* b = poly();
  return b && b->numeric.is_zero();
}

std::string Field::describe() const {
  if (const auto* e = exact()) return to_string(*e);
  if (const auto* b = poly()) {
    std::ostringstream os;
    os << "complex polynomial (" << b->numeric.size() << " terms)";
    return os.str();
  }
  if (const auto* c = closed()) return c->description;
  const auto* pb = profile_backing();
  std::ostringstream os;
  os << "y^" << pb->y_exp << " x^" << pb->x_exp << " u" << pb->component << "(x y^" << pb->s_exp
     << ")";
  return os.str();
}

DiffeoJet diffeo_jet(const ClosedForm& f, const ClosedForm& g, Point p) {
  const Jet2 x = Jet2::var_x(p.x);
  const Jet2 y = Jet2::var_y(p.y);
  return DiffeoJet{p, f(x, y), g(x, y)};
}

DiffeoJet shear(int k, Complex r, Point p) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "shear exponent must be >= 1");
  const Jet2 x = Jet2::var_x(p.x);
  const Jet2 y = Jet2::var_y(p.y);
  return DiffeoJet{p, y + r * ipow(x, k), x};
}

}  // namespace frobweb
