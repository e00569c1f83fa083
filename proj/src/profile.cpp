#include "frobweb/profile.hpp"

#include <algorithm>
#include <string>

#include "frobweb/error.hpp"

namespace frobweb {

Profile::Profile(std::vector<double> knots, std::vector<std::vector<Complex>> states,
                 ProfileRhs rhs)
    : dim_(states.empty() ? 0 : states.front().size()),
      knots_(std::move(knots)),
      u_(std::move(states)),
      rhs_(std::move(rhs)) {
  if (knots_.size() < 2 || knots_.size() != u_.size()) {
    throw Error(ErrorKind::kInvalidArgument, "profile needs at least two knots");
  }
  if (!std::is_sorted(knots_.begin(), knots_.end()) ||
      std::adjacent_find(knots_.begin(), knots_.end()) != knots_.end()) {
    throw Error(ErrorKind::kInvalidArgument, "profile knots must be strictly increasing");
  }
  du_.resize(u_.size(), std::vector<Complex>(dim_));
  d2u_.resize(u_.size(), std::vector<Complex>(dim_));
  for (std::size_t i = 0; i < knots_.size(); ++i) derivatives(knots_[i], u_[i], du_[i], d2u_[i]);
}

void Profile::derivatives(double s, std::span<const Complex> u, std::span<Complex> du,
                          std::span<Complex> d2u) const {
  std::vector<Jet2> uj(dim_), duj(dim_);
  // first pass: plain values give u'; second pass seeds d/ds with u'
  for (std::size_t k = 0; k < dim_; ++k) uj[k] = Jet2::constant(u[k]);
  rhs_(Jet2::constant(s), uj, duj);
  for (std::size_t k = 0; k < dim_; ++k) {
    du[k] = duj[k].v;
    uj[k] = Jet2{u[k], du[k]};
  }
  rhs_(Jet2::var_x(s), uj, duj);
  for (std::size_t k = 0; k < dim_; ++k) d2u[k] = duj[k].dx;
}

std::vector<Complex> Profile::interpolate(double s) const {
  const double span = s_max() - s_min();
  const double slack = 1e-12 * std::max(1.0, span);
  if (!(s >= s_min() - slack && s <= s_max() + slack)) {
    throw Error(ErrorKind::kOutOfRange, "profile evaluated at s=" + std::to_string(s) +
                                            " outside [" + std::to_string(s_min()) + ", " +
                                            std::to_string(s_max()) + "]");
  }
  s = std::clamp(s, s_min(), s_max());
  auto it = std::upper_bound(knots_.begin(), knots_.end(), s);
  std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
  if (i + 1 >= knots_.size()) i = knots_.size() - 2;

  const double h = knots_[i + 1] - knots_[i];
  const double t = (s - knots_[i]) / h;
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  const double h0 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
  const double h1 = t - 6 * t3 + 8 * t4 - 3 * t5;
  const double h2 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5);
  const double g0 = 10 * t3 - 15 * t4 + 6 * t5;
  const double g1 = -4 * t3 + 7 * t4 - 3 * t5;
  const double g2 = 0.5 * (t3 - 2 * t4 + t5);

  std::vector<Complex> out(dim_);
  for (std::size_t k = 0; k < dim_; ++k) {
    out[k] = h0 * u_[i][k] + h * h1 * du_[i][k] + h * h * h2 * d2u_[i][k] +
             g0 * u_[i + 1][k] + h * g1 * du_[i + 1][k] + h * h * g2 * d2u_[i + 1][k];
  }
  return out;
}

Profile::Sample Profile::evaluate(double s) const {
  Sample out;
  out.u = interpolate(s);
  out.du.resize(dim_);
  out.d2u.resize(dim_);
  derivatives(s, out.u, out.du, out.d2u);
  return out;
}

}  // namespace frobweb
