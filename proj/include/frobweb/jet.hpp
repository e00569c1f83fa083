#pragma once

#include <cmath>
#include <complex>

#include "frobweb/error.hpp"
#include "frobweb/scalar.hpp"

namespace frobweb {

/// Value of a bivariate function together with its partial derivatives up to
/// order two. Arithmetic on jets is forward-mode differentiation.
struct Jet2 {
  Complex v{};
  Complex dx{};
  Complex dy{};
  Complex dxx{};
  Complex dxy{};
  Complex dyy{};

  static Jet2 constant(Complex c) { return Jet2{c}; }
  static Jet2 var_x(Complex x) { return Jet2{x, 1.0}; }
  static Jet2 var_y(Complex y) { return Jet2{y, 0.0, 1.0}; }

  /// The jet of the x-partial. Its own second-order slots are not available
  /// and are left at zero; only value and first partials are meaningful.
  Jet2 partial_x() const { return Jet2{dx, dxx, dxy}; }
  Jet2 partial_y() const { return Jet2{dy, dxy, dyy}; }

  /// Zero the slots above the requested order.
  Jet2 truncated(int order) const {
    Jet2 out = *this;
    if (order < 2) out.dxx = out.dxy = out.dyy = 0.0;
    if (order < 1) out.dx = out.dy = 0.0;
    return out;
  }

  bool finite(int order = 2) const {
    if (!is_finite(v)) return false;
    if (order >= 1 && !(is_finite(dx) && is_finite(dy))) return false;
    if (order >= 2 && !(is_finite(dxx) && is_finite(dxy) && is_finite(dyy))) return false;
    return true;
  }

  Jet2& operator+=(const Jet2& o) {
    v += o.v; dx += o.dx; dy += o.dy; dxx += o.dxx; dxy += o.dxy; dyy += o.dyy;
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    v -= o.v; dx -= o.dx; dy -= o.dy; dxx -= o.dxx; dxy -= o.dxy; dyy -= o.dyy;
    return *this;
  }
  Jet2& operator*=(Complex c) {
    v *= c; dx *= c; dy *= c; dxx *= c; dxy *= c; dyy *= c;
    return *this;
  }
};

inline Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
inline Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
inline Jet2 operator-(Jet2 a) { return a *= -1.0; }
inline Jet2 operator*(Jet2 a, Complex c) { return a *= c; }
inline Jet2 operator*(Complex c, Jet2 a) { return a *= c; }
inline Jet2 operator*(Jet2 a, double c) { return a *= Complex(c); }
inline Jet2 operator*(double c, Jet2 a) { return a *= Complex(c); }
inline Jet2 operator+(Jet2 a, Complex c) { a.v += c; return a; }
inline Jet2 operator+(Complex c, Jet2 a) { a.v += c; return a; }
inline Jet2 operator+(Jet2 a, double c) { a.v += c; return a; }
inline Jet2 operator+(double c, Jet2 a) { a.v += c; return a; }
inline Jet2 operator-(Jet2 a, Complex c) { a.v -= c; return a; }
inline Jet2 operator-(Jet2 a, double c) { a.v -= c; return a; }
inline Jet2 operator-(Complex c, const Jet2& a) { return -a + c; }
inline Jet2 operator-(double c, const Jet2& a) { return -a + c; }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  return Jet2{a.v * b.v,
              a.dx * b.v + a.v * b.dx,
              a.dy * b.v + a.v * b.dy,
              a.dxx * b.v + 2.0 * a.dx * b.dx + a.v * b.dxx,
              a.dxy * b.v + a.dx * b.dy + a.dy * b.dx + a.v * b.dxy,
              a.dyy * b.v + 2.0 * a.dy * b.dy + a.v * b.dyy};
}

/// f(inner) given f, f', f'' evaluated at inner.v (chain rule).
inline Jet2 compose(const Jet2& inner, Complex f0, Complex f1, Complex f2) {
  return Jet2{f0,
              f1 * inner.dx,
              f1 * inner.dy,
              f2 * inner.dx * inner.dx + f1 * inner.dxx,
              f2 * inner.dx * inner.dy + f1 * inner.dxy,
              f2 * inner.dy * inner.dy + f1 * inner.dyy};
}

inline Jet2 reciprocal(const Jet2& a) {
  const Complex r = 1.0 / a.v;
  return compose(a, r, -r * r, 2.0 * r * r * r);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }
inline Jet2 operator/(Jet2 a, Complex c) { return a *= (1.0 / c); }
inline Jet2 operator/(Jet2 a, double c) { return a *= Complex(1.0 / c); }
inline Jet2 operator/(Complex c, const Jet2& a) { return c * reciprocal(a); }
inline Jet2 operator/(double c, const Jet2& a) { return Complex(c) * reciprocal(a); }

/// Integer power of a complex scalar by repeated squaring (exact at zero).
inline Complex ipow(Complex z, long n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  Complex result = 1.0;
  while (n > 0) {
    if (n & 1) result *= z;
    z *= z;
    n >>= 1;
  }
  return result;
}

inline Jet2 ipow(const Jet2& a, long n) {
  if (n == 0) return Jet2::constant(1.0);
  const double nn = static_cast<double>(n);
  const Complex f0 = ipow(a.v, n);
  const Complex f1 = nn * ipow(a.v, n - 1);
  const Complex f2 = (n == 1) ? Complex(0.0) : nn * (nn - 1.0) * ipow(a.v, n - 2);
  return compose(a, f0, f1, f2);
}

/// Real power on the principal branch. Integer exponents are routed to ipow;
/// otherwise Re(base) > 0 is required, except an exact zero base whose
/// requested derivatives stay finite.
inline Jet2 rpow(const Jet2& a, double e) {
  if (e == std::round(e) && std::abs(e) < 1e9) return ipow(a, static_cast<long>(e));
  if (a.v == Complex(0.0)) {
    if (e < 2.0) throw Error(ErrorKind::kBranchViolation, "non-integer power at zero base");
    return compose(a, 0.0, 0.0, 0.0);
  }
  if (a.v.real() <= 0.0) {
    throw Error(ErrorKind::kBranchViolation, "non-integer power requires Re(base) > 0");
  }
  const Complex f0 = std::pow(a.v, e);
  return compose(a, f0, e * f0 / a.v, e * (e - 1.0) * f0 / (a.v * a.v));
}

inline Jet2 exp(const Jet2& a) {
  const Complex e = std::exp(a.v);
  return compose(a, e, e, e);
}

inline Jet2 log(const Jet2& a) {
  const Complex r = 1.0 / a.v;
  return compose(a, std::log(a.v), r, -r * r);
}

inline Jet2 tan(const Jet2& a) {
  const Complex t = std::tan(a.v);
  const Complex sec2 = 1.0 + t * t;
  return compose(a, t, sec2, 2.0 * t * sec2);
}

inline Jet2 cos(const Jet2& a) {
  const Complex c = std::cos(a.v);
  return compose(a, c, -std::sin(a.v), -c);
}

inline Jet2 sin(const Jet2& a) {
  const Complex s = std::sin(a.v);
  return compose(a, s, std::cos(a.v), -s);
}

}  // namespace frobweb
