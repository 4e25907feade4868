#include "gcreg/clifford2.hpp"

#include <algorithm>
#include <cmath>

#include "gcreg/error.hpp"

namespace gcreg {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::ContractViolation: return "contract violation";
    case ErrorCode::DegenerateSpinor: return "degenerate spinor";
    case ErrorCode::DegenerateZeroField: return "degenerate zero field";
    case ErrorCode::DomainMismatch: return "domain mismatch";
    case ErrorCode::ShapeMismatch: return "shape mismatch";
    case ErrorCode::Io: return "i/o error";
  }
  return "unknown error";
}

bool Multivector2::is_finite() const noexcept {
  return std::isfinite(s) && std::isfinite(x) && std::isfinite(y) && std::isfinite(b);
}

double Multivector2::max_abs() const noexcept {
  return std::max({std::abs(s), std::abs(x), std::abs(y), std::abs(b)});
}

double Multivector2::magnitude() const noexcept {
  return std::sqrt(s * s + x * x + y * y + b * b);
}

double wrap_angle(double radians) noexcept {
  if (radians > -kPi && radians <= kPi) return radians;
  double r = std::remainder(radians, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double wrap_half_turn(double radians) noexcept {
  if (radians > -kPi / 2 && radians <= kPi / 2) return radians;
  double r = std::remainder(radians, kPi);
  if (r <= -kPi / 2) r += kPi;
  return r;
}

Rotor::Rotor(double angle)
    : angle_(wrap_angle(angle)), cos_(std::cos(angle_)), sin_(std::sin(angle_)) {}

Multivector2 apply_rotor(const Rotor& r, const Multivector2& v) {
  const double scale = v.magnitude();
  if (std::abs(v.s) > kGradeTolerance * scale || std::abs(v.b) > kGradeTolerance * scale) {
    throw Error(ErrorCode::ContractViolation, "apply_rotor: argument is not a pure vector");
  }
  Multivector2 out = gp(r.as_multivector(), Multivector2::vector(v.x, v.y));
  return Multivector2::vector(out.x, out.y);
}

double spinor_arg(const Multivector2& m) {
  const double even = std::hypot(m.s, m.b);
  if (even == 0.0) {
    throw Error(ErrorCode::DegenerateSpinor, "spinor_arg: zero spinor has no argument");
  }
  if (std::max(std::abs(m.x), std::abs(m.y)) > kGradeTolerance * m.magnitude()) {
    throw Error(ErrorCode::ContractViolation, "spinor_arg: argument has a vector part");
  }
  double phi = std::atan2(m.b, m.s);
  // atan2(-0.0, negative) is -pi; the half-open range excludes it.
  if (phi <= -kPi) phi = kPi;
  return phi;
}

}  // namespace gcreg
