#include "frobweb/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "frobweb/wdvv.hpp"

namespace frobweb {

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::vector<double>;

/// Integer samples r = 0..kShearSamples-1; the residual must have degree
/// below kShearSamples - 1 in r so that one sample is left as a check.
constexpr int kShearSamples = 12;

using UniPoly = std::vector<Exact>;  // ascending coefficients in r

void trim(UniPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UniPoly remainder(UniPoly a, const UniPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    const Exact factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

UniPoly gcd(UniPoly a, UniPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UniPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Exact lead = a.back();
    for (Exact& c : a) c /= lead;
  }
  return a;
}

Exact eval(const UniPoly& p, const Exact& r) {
  Exact out = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) out = out * r + *it;
  return out;
}

/// Newton interpolation through (i, values[i]), i = 0..n-1, in monomial form.
/// NoSolution if the top divided difference is nonzero (degree too high).
UniPoly interpolate_integer_nodes(std::vector<Exact> dd) {
  const int n = static_cast<int>(dd.size());
  for (int j = 1; j < n; ++j) {
    for (int i = n - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / j;
  }
  if (dd[n - 1] != 0) {
    throw Error(ErrorKind::kNoSolution, "shear residual has too high a degree in r");
  }
  UniPoly out{dd[n - 2]};
  for (int j = n - 3; j >= 0; --j) {
    // out = out * (r - j) + dd[j]
    UniPoly next(out.size() + 1, Exact(0));
    for (std::size_t i = 0; i < out.size(); ++i) {
      next[i + 1] += out[i];
      next[i] -= out[i] * j;
    }
    next[0] += dd[j];
    out = std::move(next);
  }
  trim(out);
  return out;
}

std::vector<long long> divisors(long long v) {
  std::vector<long long> out;
  v = std::llabs(v);
  for (long long d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      if (d != v / d) out.push_back(v / d);
    }
  }
  return out;
}

/// Rational roots of p (rational root theorem on the integer-scaled form).
std::vector<Exact> rational_roots(const UniPoly& p) {
  if (p.size() == 2) return {-p[0] / p[1]};
  std::vector<Exact> roots;
  std::size_t low = 0;
  while (low < p.size() && p[low] == 0) ++low;
  if (low > 0) roots.push_back(Exact(0));
  if (p.size() - low < 2) return roots;
  using boost::multiprecision::cpp_int;
  cpp_int den = 1;
  for (const Exact& c : p) den = boost::multiprecision::lcm(den, denominator(c));
  const cpp_int a0 = numerator(p[low] * Exact(den));
  const cpp_int an = numerator(p.back() * Exact(den));
  const cpp_int limit = cpp_int(1) << 40;
  if (abs(a0) > limit || abs(an) > limit) {
    throw Error(ErrorKind::kNoSolution, "shear polynomial coefficients too large to factor");
  }
  for (long long num : divisors(static_cast<long long>(a0))) {
    for (long long d : divisors(static_cast<long long>(an))) {
      for (long long sign : {1LL, -1LL}) {
        const Exact cand = Exact(sign * num) / Exact(d);
        if (eval(p, cand) == 0 &&
            std::find(roots.begin(), roots.end(), cand) == roots.end()) {
          roots.push_back(cand);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

double state_norm(const State& x) {
  double n = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); i += 2) n = std::max(n, std::hypot(x[i], x[i + 1]));
  return n;
}

std::vector<Complex> join(const State& x) {
  std::vector<Complex> out(x.size() / 2);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = {x[2 * k], x[2 * k + 1]};
  return out;
}

std::string reached(double t) {
  std::ostringstream os;
  os << "solution blows up; integration reached t = " << t;
  return os.str();
}

Field profile_field(const std::shared_ptr<const Profile>& prof, std::size_t comp, double y_exp,
                    double s_exp) {
  return Field::profile(prof, comp, y_exp, 0.0, s_exp);
}

template <class F>
ProfileRhs triple_rhs(F f) {
  return [f](const Jet2& s, std::span<const Jet2> u, std::span<Jet2> du) {
    const std::array<Jet2, 3> d = f(s, std::array<Jet2, 3>{u[0], u[1], u[2]});
    std::copy(d.begin(), d.end(), du.begin());
  };
}

bool all_zero(Complex a, Complex b, Complex c) {
  return a == Complex(0.0) && b == Complex(0.0) && c == Complex(0.0);
}

}  // namespace

CubicWeb shear_web(const CubicWeb& web, const Exact& r, int k) {
  TriangularMap map;
  map.r = r;
  map.k = k;
  return pushforward(web, map);
}

Exact shear_fit(const CubicWeb& web, int k) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "shear exponent k must be positive");
  if (!web.exact_monic()) {
    throw Error(ErrorKind::kInvalidArgument, "shear_fit needs a polynomial web");
  }
  const Weights& w = web.weights();
  if (Ratio(k) * w.wx != w.wy) {
    if (wdvv0_residual_exact(web).is_zero()) return Exact(0);
    throw Error(ErrorKind::kNoSolution,
                "shear breaks the symmetry and the unsheared web fails WDVV0");
  }

  std::vector<ExactPoly> samples;
  for (int i = 0; i < kShearSamples; ++i) {
    samples.push_back(wdvv0_residual_exact(shear_web(web, Exact(i), k)).r1);
  }
  std::map<Monomial, std::vector<Exact>> by_monomial;
  for (int i = 0; i < kShearSamples; ++i) {
    for (const auto& [mono, c] : samples[i].terms()) {
      auto [it, inserted] =
          by_monomial.try_emplace(mono, std::vector<Exact>(kShearSamples, Exact(0)));
      it->second[i] = c;
    }
  }
  UniPoly common;
  for (auto& [mono, values] : by_monomial) {
    common = gcd(common, interpolate_integer_nodes(values));
  }

  std::vector<Exact> candidates;
  if (common.empty()) {
    candidates.push_back(Exact(0));  // every shear satisfies the first equation
  } else if (common.size() == 1) {
    throw Error(ErrorKind::kNoSolution, "no shear satisfies the first WDVV0 equation");
  } else {
    candidates = rational_roots(common);
    if (candidates.empty()) {
      throw Error(ErrorKind::kNoSolution, "the first WDVV0 equation has no rational root in r");
    }
  }
  for (const Exact& r : candidates) {
    if (wdvv0_residual_exact(shear_web(web, r, k)).is_zero()) return r;
  }
  throw Error(ErrorKind::kRemainingEquationsFail,
              "fitted shear solves the first WDVV0 equation but not the other two");
}

std::shared_ptr<const Profile> integrate_profile(const ProfileRhs& rhs,
                                                 std::span<const Complex> u0, double t0,
                                                 double t1, const OdeOptions& options) {
  if (!(t0 <= 0.0 && t1 >= 0.0 && t0 < t1)) {
    throw Error(ErrorKind::kInvalidArgument, "integration range must contain 0");
  }
  if (!(options.max_step > 0.0)) throw Error(ErrorKind::kInvalidArgument, "step must be positive");
  const std::size_t n = u0.size();
  // The step limiter of make_controlled forces dt positive, so the negative
  // half of the range is integrated in reversed time tau = -t.
  double direction = 1.0;
  auto system = [&](const State& x, State& dxdt, double tau) {
    std::vector<Jet2> uj(n), duj(n);
    for (std::size_t k = 0; k < n; ++k) uj[k] = Jet2::constant({x[2 * k], x[2 * k + 1]});
    rhs(Jet2::constant(direction * tau), uj, duj);
    for (std::size_t k = 0; k < n; ++k) {
      dxdt[2 * k] = direction * duj[k].v.real();
      dxdt[2 * k + 1] = direction * duj[k].v.imag();
    }
  };

  std::map<double, std::vector<Complex>> knots;
  knots[0.0] = std::vector<Complex>(u0.begin(), u0.end());
  for (double end : {t1, t0}) {
    if (end == 0.0) continue;
    direction = end > 0.0 ? 1.0 : -1.0;
    State x(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
      x[2 * k] = u0[k].real();
      x[2 * k + 1] = u0[k].imag();
    }
    auto observer = [&](const State& s, double tau) {
      const double norm = state_norm(s);
      if (!std::isfinite(norm) || norm > options.blowup_norm) {
        throw Error(ErrorKind::kBlowUp, reached(direction * tau));
      }
      knots[direction * tau] = join(s);
    };
    auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol, options.max_step,
                                           odeint::runge_kutta_dopri5<State>());
    const double dt = std::min(options.max_step, std::abs(end)) * 0.1;
    try {
      odeint::integrate_adaptive(stepper, system, x, 0.0, std::abs(end), dt, observer);
    } catch (const odeint::odeint_error& e) {
      throw Error(ErrorKind::kBlowUp, std::string("step size collapsed: ") + e.what());
    }
  }
  std::vector<double> ts;
  std::vector<std::vector<Complex>> states;
  for (auto& [t, u] : knots) {
    ts.push_back(t);
    states.push_back(std::move(u));
  }
  return std::make_shared<const Profile>(std::move(ts), std::move(states), rhs);
}

ReducedFamily integrate_parabolic(Complex s0, Complex a0, Complex b0, double x0, double x1,
                                  const OdeOptions& options) {
  const Weights weights{Ratio(0), Ratio(1)};
  const ProfileRhs rhs =
      triple_rhs([](const Jet2&, const std::array<Jet2, 3>& u) { return parabolic_rhs(u); });
  const std::array<Complex, 3> u0{s0, a0, b0};
  auto prof = integrate_profile(rhs, u0, x0, x1, options);
  ReducedFamily out{prof, CubicWeb::monic(Field(), Field(), Field(), weights, {0.0, 0.0},
                                          "parabolic"),
                    u0, Ratio(0), 0};
  if (!all_zero(s0, a0, b0)) {
    out.web = CubicWeb::monic(profile_field(prof, 0, 1.0, 0.0), profile_field(prof, 1, 2.0, 0.0),
                              profile_field(prof, 2, 3.0, 0.0), weights, {0.0, 0.0},
                              "parabolic");
  }
  return out;
}

ReducedFamily integrate_hyperbolic(Complex sigma0, Complex alpha0, Complex beta0, int m0,
                                   double s0, double s1, const OdeOptions& options) {
  if (m0 < 0) throw Error(ErrorKind::kInvalidArgument, "m0 must be non-negative");
  const Ratio r(1 + m0, 2);
  const double k = to_double(r);
  const Weights weights{Ratio(1 + m0), Ratio(-2)};
  const ProfileRhs rhs = triple_rhs(
      [k](const Jet2& s, const std::array<Jet2, 3>& u) { return hyperbolic_rhs(s, u, k); });
  const std::array<Complex, 3> u0{sigma0, alpha0, beta0};
  auto prof = integrate_profile(rhs, u0, s0, s1, options);
  ReducedFamily out{prof, CubicWeb::monic(Field(), Field(), Field(), weights, {0.0, 0.0},
                                          "hyperbolic"),
                    u0, r, m0};
  if (!all_zero(sigma0, alpha0, beta0)) {
    out.web = CubicWeb::monic(profile_field(prof, 0, 1.0 + k, k),
                              profile_field(prof, 1, 2.0 * (1.0 + k), k),
                              profile_field(prof, 2, 3.0 * (1.0 + k), k), weights, {0.0, 0.0},
                              "hyperbolic");
  }
  return out;
}

Complex parabolic_initial_for_L(Complex L, Complex s0, Complex a0) {
  const Complex q = 3.0 * a0 - s0 * s0;
  return (9.0 * a0 * s0 - 2.0 * s0 * s0 * s0 + 2.0 * std::tan(L) * q * std::sqrt(q)) / 27.0;
}

std::shared_ptr<const Profile> riccati_F(Complex L, Complex u0, double x0, double x1,
                                         const OdeOptions& options) {
  const double c = 2.0 * std::sqrt(3.0);
  if (std::abs(L.imag()) < 1e-12) {
    // Poles of tan at c x + L = pi/2 + n pi.
    const double z0 = c * x0 + L.real(), z1 = c * x1 + L.real();
    const double first = std::ceil((z0 - std::numbers::pi / 2) / std::numbers::pi);
    if (std::numbers::pi / 2 + first * std::numbers::pi <= z1 + 1e-9) {
      throw Error(ErrorKind::kPoleCrossing, "tan(2 sqrt3 x + L) has a pole in the range");
    }
  }
  const ProfileRhs rhs = [c, L](const Jet2& x, std::span<const Jet2> u, std::span<Jet2> du) {
    du[0] = u[0] * u[0] + (2.0 / std::sqrt(3.0)) * tan(c * x + L) * u[0] - 1.0 / 3.0;
    du[1] = u[0];
  };
  const std::array<Complex, 2> init{u0, 0.0};
  return integrate_profile(rhs, init, x0, x1, options);
}

std::array<Complex, 3> riccati_F_jet(const Profile& profile, double x) {
  const Profile::Sample smp = profile.evaluate(x);
  const Complex u = smp.u[0], du = smp.du[0];
  const Complex F = std::exp(smp.u[1]);
  return {F, u * F, (du + u * u) * F};
}

Complex fparabolic_residual(Complex F, Complex dF, Complex d2F, Complex L, double x) {
  const Complex t = std::tan(2.0 * std::sqrt(3.0) * x + L);
  return (3.0 * F * d2F - 6.0 * dF * dF - 2.0 * std::sqrt(3.0) * t * F * dF + F * F) / (F * F);
}

}  // namespace frobweb
