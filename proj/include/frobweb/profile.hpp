#pragma once

#include <functional>
#include <span>
#include <vector>

#include "frobweb/jet.hpp"
#include "frobweb/scalar.hpp"

namespace frobweb {

/// Right-hand side u' = F(s, u) of a first-order system. It is evaluated on
/// jets so that u'' can be obtained by forward differentiation in s.
using ProfileRhs =
    std::function<void(const Jet2& s, std::span<const Jet2> u, std::span<Jet2> du)>;

/// Dense 1-D solution of an ODE system over a real interval. Between knots the
/// state is a quintic Hermite interpolant built from u, u', u'' at the knots;
/// derivatives reported by evaluate() come from the right-hand side.
class Profile {
 public:
  struct Sample {
    std::vector<Complex> u;
    std::vector<Complex> du;
    std::vector<Complex> d2u;
  };

  Profile(std::vector<double> knots, std::vector<std::vector<Complex>> states, ProfileRhs rhs);

  std::size_t dimension() const { return dim_; }
  double s_min() const { return knots_.front(); }
  double s_max() const { return knots_.back(); }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<std::vector<Complex>>& states() const { return u_; }
  const std::vector<std::vector<Complex>>& slopes() const { return du_; }

  /// Interpolated state; throws OutOfRange outside [s_min, s_max].
  std::vector<Complex> interpolate(double s) const;
  Sample evaluate(double s) const;

  /// u' and u'' of the system at an arbitrary state.
  void derivatives(double s, std::span<const Complex> u, std::span<Complex> du,
                   std::span<Complex> d2u) const;

 private:
  std::size_t dim_;
  std::vector<double> knots_;
  std::vector<std::vector<Complex>> u_, du_, d2u_;
  ProfileRhs rhs_;
};

}  // namespace frobweb
