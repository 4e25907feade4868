#pragma once

// Exact arithmetic in the plane geometric algebra Cl(2,0).
//
// Basis {1, e1, e2, e12} with e1^2 = e2^2 = 1, e1 e2 = e12 = -e2 e1 and
// e12^2 = -1. The even subalgebra {s + b e12} is isomorphic to the complex
// numbers; left multiplication by e^{-a e12} = cos a - sin a e12 turns a
// vector by +a.

#include <numbers>

namespace gcreg {

/// Element s + x e1 + y e2 + b e12.
struct Multivector2 {
  double s = 0.0;
  double x = 0.0;
  double y = 0.0;
  double b = 0.0;

  static constexpr Multivector2 scalar(double v) { return {v, 0.0, 0.0, 0.0}; }
  static constexpr Multivector2 vector(double vx, double vy) { return {0.0, vx, vy, 0.0}; }
  static constexpr Multivector2 spinor(double vs, double vb) { return {vs, 0.0, 0.0, vb}; }
  static constexpr Multivector2 e1() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Multivector2 e2() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Multivector2 e12() { return {0.0, 0.0, 0.0, 1.0}; }

  bool is_finite() const noexcept;

  /// Largest absolute component.
  double max_abs() const noexcept;

  /// Euclidean norm of the coefficient 4-tuple.
  double magnitude() const noexcept;

  friend constexpr bool operator==(const Multivector2&, const Multivector2&) = default;
};

constexpr Multivector2 operator+(const Multivector2& l, const Multivector2& r) {
  return {l.s + r.s, l.x + r.x, l.y + r.y, l.b + r.b};
}
constexpr Multivector2 operator-(const Multivector2& l, const Multivector2& r) {
  return {l.s - r.s, l.x - r.x, l.y - r.y, l.b - r.b};
}
constexpr Multivector2 operator-(const Multivector2& m) { return {-m.s, -m.x, -m.y, -m.b}; }
constexpr Multivector2 operator*(double k, const Multivector2& m) {
  return {k * m.s, k * m.x, k * m.y, k * m.b};
}
constexpr Multivector2 operator*(const Multivector2& m, double k) { return k * m; }

/// Geometric product.
constexpr Multivector2 gp(const Multivector2& l, const Multivector2& r) {
  return {
      l.s * r.s + l.x * r.x + l.y * r.y - l.b * r.b,
      l.s * r.x + l.x * r.s - l.y * r.b + l.b * r.y,
      l.s * r.y + l.x * r.b + l.y * r.s - l.b * r.x,
      l.s * r.b + l.x * r.y - l.y * r.x + l.b * r.s,
  };
}

/// Reversion: grade 2 changes sign, grades 0 and 1 are fixed.
constexpr Multivector2 reverse(const Multivector2& m) { return {m.s, m.x, m.y, -m.b}; }

/// Wraps an angle into (-pi, pi].
double wrap_angle(double radians) noexcept;

/// Wraps an angle into (-pi/2, pi/2], i.e. reduces it modulo a half turn.
double wrap_half_turn(double radians) noexcept;

/// Rotation by `angle` in the positive sense, stored as e^{-angle e12}.
class Rotor {
 public:
  Rotor() = default;
  explicit Rotor(double angle);

  double angle() const noexcept { return angle_; }

  /// cos(angle) - sin(angle) e12.
  Multivector2 as_multivector() const noexcept { return Multivector2::spinor(cos_, -sin_); }

  Rotor compose(const Rotor& other) const { return Rotor(angle_ + other.angle_); }
  Rotor inverse() const { return Rotor(-angle_); }

 private:
  double angle_ = 0.0;
  double cos_ = 1.0;
  double sin_ = 0.0;
};

inline Rotor rotor(double angle) { return Rotor(angle); }

/// Tolerance used to decide that a grade is numerically absent.
inline constexpr double kGradeTolerance = 1e-9;

/// Returns e^{-a e12} v, the vector v turned by +a.
/// Throws ContractViolation if v has scalar or bivector content.
Multivector2 apply_rotor(const Rotor& r, const Multivector2& v);

/// Argument atan2(b, s) of the spinor s + b e12, in (-pi, pi].
/// Throws DegenerateSpinor for a zero spinor and ContractViolation when the
/// vector part is not negligible.
double spinor_arg(const Multivector2& m);

inline constexpr double kPi = std::numbers::pi;

}  // namespace gcreg
