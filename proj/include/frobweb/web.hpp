#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frobweb/field.hpp"
#include "frobweb/polynomial.hpp"

namespace frobweb {

/// Weights of the symmetry X = w_x x d/dx + w_y y d/dy.
struct Weights {
  Ratio wx{0};
  Ratio wy{0};
};

/// Coefficients of K3 dy^3 + K2 dy^2 dx + K1 dy dx^2 + K0 dx^3 at a point.
struct BinaryCoeffs {
  Complex k3, k2, k1, k0;
};

/// S, A, B of the monic form p^3 + S p^2 + A p + B with their jets.
struct MonicJets {
  Jet2 S, A, B;
};

struct ExactMonic {
  ExactPoly S, A, B;
};

/// Slopes dy/dx of the web directions at a point. Directions with dx = 0
/// are not listed in p; they are counted by `vertical`.
struct RootTriple {
  std::vector<Complex> p;
  int vertical = 0;
  /// Sizes of clusters of coincident directions, descending.
  std::vector<int> partition;
};

/// Cubic implicit ODE with symmetry weights and a base point.
class CubicWeb {
 public:
  static CubicWeb monic(Field S, Field A, Field B, Weights w, Point base, std::string label);
  static CubicWeb binary(Field K3, Field K2, Field K1, Field K0, Weights w, Point base,
                         std::string label);

  bool is_monic() const { return monic_; }
  const Field& K3() const { return k_[0]; }
  const Field& K2() const { return k_[1]; }
  const Field& K1() const { return k_[2]; }
  const Field& K0() const { return k_[3]; }
  const Weights& weights() const { return weights_; }
  Point base_point() const { return base_; }
  const std::string& label() const { return label_; }

  CubicWeb with_base(Point base) const;

  /// Throws DegenerateCubic when all four coefficients are below 1e-14.
  BinaryCoeffs binary_at(Point p) const;

  /// S = K2/K3, A = K1/K3, B = K0/K3 as jets. DegenerateCubic if K3 vanishes.
  MonicJets monic_jets(Point p, int order = 2) const;

  /// Exact S, A, B when every coefficient is an exact polynomial and K3 is
  /// a single monomial (Laurent division).
  const ExactMonic* exact_monic() const { return exact_.get(); }

  /// S, A, B all identically zero as polynomials.
  bool is_zero_web() const;

  /// Lazily computed value attached to this web, shared between copies.
  /// One slot; it holds the exact Chern connection of polynomial webs.
  template <class T, class F>
  const T& memo(F&& make) const {
    std::call_once(slot_->flag, [&] { slot_->value = std::make_shared<const T>(make()); });
    return *static_cast<const T*>(slot_->value.get());
  }

 private:
  CubicWeb() = default;
  void init_exact();

  struct Slot {
    std::once_flag flag;
    std::shared_ptr<const void> value;
  };

  bool monic_ = true;
  std::array<Field, 4> k_;
  Weights weights_;
  Point base_{};
  std::string label_;
  std::shared_ptr<const ExactMonic> exact_;
  std::shared_ptr<Slot> slot_ = std::make_shared<Slot>();
};

/// Roots of p^3 + S p^2 + A p + B, sorted by lex_less. Cardano with a
/// companion-matrix fallback when the relative residual exceeds 1e-9.
std::array<Complex, 3> solve_monic_cubic(Complex S, Complex A, Complex B);

/// D = 18SAB + S^2A^2 - 4A^3 - 27B^2 - 4BS^3 = prod (p_i - p_j)^2.
Complex discriminant(Complex S, Complex A, Complex B);

/// Natural magnitude of D: R^6 with R the largest root-size estimate.
double discriminant_scale(Complex S, Complex A, Complex B);

/// Projective roots of a binary cubic, with clustering tolerance 1e-8.
RootTriple binary_roots(const BinaryCoeffs& k);

RootTriple roots_at(const CubicWeb& web, Point p);
Complex discriminant_at(const CubicWeb& web, Point p);
std::vector<int> multiplicity_at(const CubicWeb& web, Point p);

/// Transformed coefficients at the image point of `jet`, normalized to
/// K3 = 1 when the transformed leading coefficient does not vanish.
BinaryCoeffs pushforward_at(const CubicWeb& web, const DiffeoJet& jet);

/// xbar = a x, ybar = b y + r x^k with exact rational parameters.
struct TriangularMap {
  Exact a{1};
  Exact b{1};
  Exact r{0};
  int k = 1;

  DiffeoJet jet(Point p) const;
  Point apply(Point p) const;
};

/// Global pushforward of an exact polynomial web; weights are kept, which
/// requires r = 0 or k w_x = w_y (NotHomogeneous otherwise).
CubicWeb pushforward(const CubicWeb& web, const TriangularMap& map);

struct CatalogParams {
  int m0 = 0;
  Complex L{0.7853981633974483, 0.0};
};

/// Normal forms 1 to 6 with their quasi-homogeneous weights and base point (0, 0).
/// UnsupportedForm for forms 7 and 8, UnknownForm otherwise.
CubicWeb catalog(std::string_view name, const CatalogParams& params = {});

/// phi(z) = sqrt(z) cot(sqrt(z)), even in sqrt(z) so analytic in z.
Jet2 sqrt_cot(const Jet2& z);

}  // namespace frobweb
