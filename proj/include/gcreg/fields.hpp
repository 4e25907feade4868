#pragma once

// Linear vector fields v(x) = A x on domains symmetric in both axes, their
// saddle/source/vortex decomposition, the three rotation operators and
// cell-centre sampling.

#include <cstddef>
#include <functional>
#include <vector>

#include "gcreg/clifford2.hpp"

namespace gcreg {

struct Vec2 {
  double x1 = 0.0;
  double x2 = 0.0;

  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

inline Multivector2 as_vector(const Vec2& v) { return Multivector2::vector(v.x1, v.x2); }

enum class DomainKind { Square, Disk };

/// Square [-l, l]^2 or disk of radius r centred on the origin.
class SymmetricDomain {
 public:
  static SymmetricDomain square(double half_side);
  static SymmetricDomain disk(double radius);

  DomainKind kind() const noexcept { return kind_; }
  /// Half side for squares, radius for disks.
  double size() const noexcept { return size_; }
  /// Half side of the smallest axis-aligned square containing the domain.
  double bounding_half_side() const noexcept { return size_; }

  bool contains(const Vec2& p) const noexcept;

  friend bool operator==(const SymmetricDomain&, const SymmetricDomain&) = default;

 private:
  SymmetricDomain(DomainKind kind, double size) : kind_(kind), size_(size) {}

  DomainKind kind_ = DomainKind::Square;
  double size_ = 1.0;
};

/// Row-major 2x2 coefficient matrix.
struct Matrix2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a21 = 0.0;
  double a22 = 0.0;

  friend constexpr bool operator==(const Matrix2&, const Matrix2&) = default;
};

Matrix2 operator*(const Matrix2& l, const Matrix2& r);
Matrix2 transpose(const Matrix2& m);
Matrix2 rotation_matrix(double angle);
/// Frobenius norm of l - r.
double frobenius_distance(const Matrix2& l, const Matrix2& r);

/// v(x) = (a11 x1 + a12 x2) e1 + (a21 x1 + a22 x2) e2 inside the domain, zero outside.
class LinearField {
 public:
  LinearField(const Matrix2& coefficients, const SymmetricDomain& domain);

  const Matrix2& coefficients() const noexcept { return coefficients_; }
  const SymmetricDomain& domain() const noexcept { return domain_; }

  /// A x without the support cut-off.
  Vec2 apply(const Vec2& x) const noexcept;

  bool is_zero() const noexcept;

  friend bool operator==(const LinearField&, const LinearField&) = default;

 private:
  Matrix2 coefficients_;
  SymmetricDomain domain_;
};

/// The canonical fields a(x) = x1 e1 - x2 e2, b(x) = x2 e1 + x1 e2 (saddles),
/// c(x) = x (source) and d(x) = x2 e1 - x1 e2 (vortex).
LinearField saddle_a(const SymmetricDomain& domain);
LinearField saddle_b(const SymmetricDomain& domain);
LinearField source_c(const SymmetricDomain& domain);
LinearField vortex_d(const SymmetricDomain& domain);

/// Coefficients of v = a*a(x) + b*b(x) + c*c(x) + d*d(x).
struct Decomposition {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  /// a^2 + b^2, the weight of the saddle part.
  double saddle_weight() const noexcept { return a * a + b * b; }
  /// c^2 + d^2, the weight of the source/vortex part.
  double rotation_invariant_weight() const noexcept { return c * c + d * d; }

  friend constexpr bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Field value: A x inside the domain, zero vector outside.
Multivector2 eval(const LinearField& field, const Vec2& x);

Decomposition decompose(const LinearField& field);
LinearField recompose(const Decomposition& parts, const SymmetricDomain& domain);

/// Saddle part a*a(x) + b*b(x) of a field.
LinearField saddle_part(const LinearField& field);
/// Source/vortex part c*c(x) + d*d(x) of a field.
LinearField rotation_invariant_part(const LinearField& field);

/// u(x) = R_a(v(R_{-a} x)), i.e. A' = R A R^T.
LinearField total_rotate(const LinearField& field, double angle);
/// u(x) = R_a(v(x)), i.e. A' = R A.
LinearField outer_rotate(const LinearField& field, double angle);
/// u(x) = v(R_{-a} x), i.e. A' = A R^T.
LinearField inner_rotate(const LinearField& field, double angle);

/// Arbitrary field given by a closure; the support cut-off is applied by sampling.
using AnalyticField = std::function<Vec2(const Vec2&)>;

/// v(r, phi) = e1 e^{2 phi e12}: a unit field whose direction turns twice as
/// fast as the polar angle. Correlating it with its rotated copy gives an
/// argument of the wrong sign.
AnalyticField counterexample_field();

/// x -> R_a(f(R_{-a} x)).
AnalyticField total_rotate(AnalyticField field, double angle);

/// Cell-centre samples on an n x n grid covering the domain's bounding square.
struct SampledField {
  std::size_t n = 0;
  SymmetricDomain domain = SymmetricDomain::square(1.0);
  /// Row-major, x1 fastest.
  std::vector<Vec2> values;
  std::vector<unsigned char> mask;

  double spacing() const noexcept;
  double cell_area() const noexcept;
  /// Centre of the cell with column i (x1) and row j (x2).
  Vec2 cell_center(std::size_t i, std::size_t j) const noexcept;
  const Vec2& at(std::size_t i, std::size_t j) const { return values[j * n + i]; }
  bool inside(std::size_t i, std::size_t j) const { return mask[j * n + i] != 0; }
};

SampledField sample(const LinearField& field, std::size_t n);
SampledField sample(const AnalyticField& field, const SymmetricDomain& domain, std::size_t n);

/// Bilinear interpolation between cell centres; zero outside the domain.
Vec2 interpolate(const SampledField& field, const Vec2& x);

/// Resamples R_a(f(R_{-a} x)) on the same grid using bilinear interpolation.
SampledField total_rotate(const SampledField& field, double angle);

}  // namespace gcreg
