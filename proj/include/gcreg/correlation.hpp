#pragma once

// Geometric cross-correlation at the origin, (u * v)(0) = int reverse(u(y)) v(y) dy.

#include "gcreg/clifford2.hpp"
#include "gcreg/fields.hpp"

namespace gcreg {

struct CorrelationValue {
  Multivector2 value;

  /// sqrt(s^2 + b^2).
  double magnitude() const noexcept;
  /// spinor_arg(value); throws DegenerateSpinor for a zero correlation.
  double argument() const;
};

/// int_A (x1^2 + x2^2) dx: 8 l^4 / 3 for squares, pi r^4 / 2 for disks.
double second_moment(const SymmetricDomain& domain);

/// Closed form for two linear fields on the same domain. Uses
/// int_A x x^T dx = (I_A / 2) Id, valid for squares and disks.
CorrelationValue correlate_linear(const LinearField& u, const LinearField& v);

/// Midpoint rule over the unmasked cells. Rows are summed independently and
/// combined by pairwise reduction, so the result does not depend on threading.
CorrelationValue correlate_sampled(const SampledField& u, const SampledField& v);

/// reverse(u(x)) v(x) before integration.
Multivector2 product_at(const LinearField& u, const LinearField& v, const Vec2& x);

}  // namespace gcreg
