#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "frobweb/error.hpp"
#include "frobweb/jet.hpp"
#include "frobweb/scalar.hpp"

namespace frobweb {

/// Exponent pair (m, n) of the monomial x^m y^n.
using Monomial = std::pair<Ratio, Ratio>;

namespace detail {

template <class C>
C from_ratio(const Ratio& r);
template <>
inline Exact from_ratio<Exact>(const Ratio& r) { return to_exact(r); }
template <>
inline Complex from_ratio<Complex>(const Ratio& r) { return to_double(r); }

inline Complex to_complex(const Exact& c) { return static_cast<double>(c); }
inline Complex to_complex(const Complex& c) { return c; }

inline bool is_zero(const Exact& c) { return c == 0; }
inline bool is_zero(const Complex& c) { return c == Complex(0.0); }

/// z^e and its first two derivatives, principal branch for non-integer e.
struct PowerParts {
  Complex p0, p1, p2;
};
PowerParts power_parts(Complex z, const Ratio& e, int order);

}  // namespace detail

/// Sparse bivariate polynomial with rational (possibly negative) exponents.
/// C is either Exact (symbolic arithmetic) or Complex (numeric).
template <class C>
class Polynomial {
 public:
  using Terms = std::map<Monomial, C>;

  Polynomial() = default;
  explicit Polynomial(C constant) { add_term(Ratio(0), Ratio(0), std::move(constant)); }

  static Polynomial monomial(C c, Ratio m, Ratio n) {
    Polynomial p;
    p.add_term(m, n, std::move(c));
    return p;
  }
  static Polynomial x() { return monomial(C(1), Ratio(1), Ratio(0)); }
  static Polynomial y() { return monomial(C(1), Ratio(0), Ratio(1)); }

  void add_term(const Ratio& m, const Ratio& n, const C& c) {
    if (detail::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(Monomial{m, n}, c);
    if (!inserted) {
      it->second += c;
      if (detail::is_zero(it->second)) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  C coefficient(const Ratio& m, const Ratio& n) const {
    auto it = terms_.find(Monomial{m, n});
    return it == terms_.end() ? C(0) : it->second;
  }

  /// Constant polynomial value, if the polynomial is a constant.
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first == Monomial{Ratio(0), Ratio(0)});
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [mono, c] : o.terms_) add_term(mono.first, mono.second, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [mono, c] : o.terms_) add_term(mono.first, mono.second, -c);
    return *this;
  }
  Polynomial& operator*=(const C& s) {
    if (detail::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [mono, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= C(-1); }
  friend Polynomial operator*(Polynomial a, const C& s) { return a *= s; }
  friend Polynomial operator*(const C& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        out.add_term(ma.first + mb.first, ma.second + mb.second, ca * cb);
      }
    }
    return out;
  }

  Polynomial pow(unsigned n) const {
    Polynomial result(C(1));
    Polynomial base = *this;
    while (n > 0) {
      if (n & 1u) result = result * base;
      n >>= 1u;
      if (n > 0) base = base * base;
    }
    return result;
  }

  Polynomial dx() const {
    Polynomial out;
    for (const auto& [mono, c] : terms_) {
      if (mono.first == Ratio(0)) continue;
      out.add_term(mono.first - 1, mono.second, c * detail::from_ratio<C>(mono.first));
    }
    return out;
  }
  Polynomial dy() const {
    Polynomial out;
    for (const auto& [mono, c] : terms_) {
      if (mono.second == Ratio(0)) continue;
      out.add_term(mono.first, mono.second - 1, c * detail::from_ratio<C>(mono.second));
    }
    return out;
  }

  /// Multiply by x^m y^n (negative exponents divide by a monomial).
  Polynomial shifted(const Ratio& m, const Ratio& n) const {
    Polynomial out;
    for (const auto& [mono, c] : terms_) out.add_term(mono.first + m, mono.second + n, c);
    return out;
  }

  /// Substitute x -> px, y -> py. Only non-negative integer exponents.
  Polynomial substitute(const Polynomial& px, const Polynomial& py) const {
    Polynomial out;
    for (const auto& [mono, c] : terms_) {
      if (!is_integer(mono.first) || !is_integer(mono.second) || mono.first < Ratio(0) ||
          mono.second < Ratio(0)) {
        throw Error(ErrorKind::kInvalidArgument,
                    "substitution requires non-negative integer exponents");
      }
      Polynomial term =
          px.pow(static_cast<unsigned>(mono.first.numerator())) *
          py.pow(static_cast<unsigned>(mono.second.numerator()));
      out += term * c;
    }
    return out;
  }

  template <class D, class F>
  Polynomial<D> map_coefficients(F&& f) const {
    Polynomial<D> out;
    for (const auto& [mono, c] : terms_) out.add_term(mono.first, mono.second, f(c));
    return out;
  }

  Polynomial<Complex> to_complex() const {
    return map_coefficients<Complex>([](const C& c) { return detail::to_complex(c); });
  }

  /// Set of weighted degrees m*wx + n*wy over all terms.
  std::set<Ratio> weighted_degrees(const Ratio& wx, const Ratio& wy) const {
    std::set<Ratio> out;
    for (const auto& [mono, c] : terms_) out.insert(mono.first * wx + mono.second * wy);
    return out;
  }

  Complex eval(Point p) const { return eval_jet(p, 0).v; }

  Jet2 eval_jet(Point p, int order) const {
    Jet2 out;
    for (const auto& [mono, c] : terms_) {
      const auto px = detail::power_parts(p.x, mono.first, order);
      const auto py = detail::power_parts(p.y, mono.second, order);
      const Complex k = detail::to_complex(c);
      out.v += k * px.p0 * py.p0;
      if (order >= 1) {
        out.dx += k * px.p1 * py.p0;
        out.dy += k * px.p0 * py.p1;
      }
      if (order >= 2) {
        out.dxx += k * px.p2 * py.p0;
        out.dxy += k * px.p1 * py.p1;
        out.dyy += k * px.p0 * py.p2;
      }
    }
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

using ExactPoly = Polynomial<Exact>;
using ComplexPoly = Polynomial<Complex>;

std::string to_string(const ExactPoly& p);
std::string to_string(const Ratio& r);

/// Parse "p/q", "p" into a Ratio; throws ParseError.
Ratio parse_ratio(const std::string& text);
/// Parse "p/q", "p", or a decimal literal into an Exact value.
Exact parse_exact(const std::string& text);

}  // namespace frobweb
