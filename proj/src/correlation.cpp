#include "gcreg/correlation.hpp"

#include <cmath>
#include <vector>

#include "gcreg/error.hpp"

namespace gcreg {

namespace {

Multivector2 pairwise_sum(std::vector<Multivector2>& parts) {
  if (parts.empty()) return {};
  for (std::size_t width = 1; width < parts.size(); width *= 2) {
    for (std::size_t i = 0; i + width < parts.size(); i += 2 * width) {
      parts[i] = parts[i] + parts[i + width];
    }
  }
  return parts.front();
}

}  // namespace

double CorrelationValue::magnitude() const noexcept { return std::hypot(value.s, value.b); }

double CorrelationValue::argument() const { return spinor_arg(value); }

double second_moment(const SymmetricDomain& domain) {
  const double l = domain.size();
  const double l4 = l * l * l * l;
  if (domain.kind() == DomainKind::Square) return 8.0 * l4 / 3.0;
  return kPi * l4 / 2.0;
}

CorrelationValue correlate_linear(const LinearField& u, const LinearField& v) {
  if (!(u.domain() == v.domain())) {
    throw Error(ErrorCode::DomainMismatch, "correlate_linear: fields live on different domains");
  }
  const Matrix2& p = u.coefficients();
  const Matrix2& q = v.coefficients();
  const double half = 0.5 * second_moment(u.domain());
  // u(x) v(x) = u.v + (u1 v2 - u2 v1) e12 and int x_i x_j = half * delta_ij.
  const double scalar = p.a11 * q.a11 + p.a12 * q.a12 + p.a21 * q.a21 + p.a22 * q.a22;
  const double wedge = p.a11 * q.a21 - p.a21 * q.a11 + p.a12 * q.a22 - p.a22 * q.a12;
  return {Multivector2::spinor(half * scalar, half * wedge)};
}

CorrelationValue correlate_sampled(const SampledField& u, const SampledField& v) {
  if (u.n != v.n || u.values.size() != v.values.size() || u.mask != v.mask) {
    throw Error(ErrorCode::ShapeMismatch, "correlate_sampled: grids differ");
  }
  if (!(u.domain == v.domain)) {
    throw Error(ErrorCode::DomainMismatch, "correlate_sampled: fields live on different domains");
  }
  std::vector<Multivector2> rows(u.n);
  for (std::size_t j = 0; j < u.n; ++j) {
    Multivector2 acc;
    for (std::size_t i = 0; i < u.n; ++i) {
      if (!u.inside(i, j)) continue;
      acc = acc + gp(reverse(as_vector(u.at(i, j))), as_vector(v.at(i, j)));
    }
    rows[j] = acc;
  }
  return {u.cell_area() * pairwise_sum(rows)};
}

Multivector2 product_at(const LinearField& u, const LinearField& v, const Vec2& x) {
  return gp(reverse(eval(u, x)), eval(v, x));
}

}  // namespace gcreg
