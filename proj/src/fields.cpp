#include "gcreg/fields.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "gcreg/error.hpp"

namespace gcreg {

namespace {

void require_positive_finite(double value, const char* what) {
  if (!(std::isfinite(value) && value > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be finite and positive");
  }
}

Vec2 rotate(const Vec2& p, double c, double s) {
  return {c * p.x1 - s * p.x2, s * p.x1 + c * p.x2};
}

}  // namespace

SymmetricDomain SymmetricDomain::square(double half_side) {
  require_positive_finite(half_side, "square half side");
  return {DomainKind::Square, half_side};
}

SymmetricDomain SymmetricDomain::disk(double radius) {
  require_positive_finite(radius, "disk radius");
  return {DomainKind::Disk, radius};
}

bool SymmetricDomain::contains(const Vec2& p) const noexcept {
  if (kind_ == DomainKind::Square) {
    return std::abs(p.x1) <= size_ && std::abs(p.x2) <= size_;
  }
  return p.x1 * p.x1 + p.x2 * p.x2 <= size_ * size_;
}

Matrix2 operator*(const Matrix2& l, const Matrix2& r) {
  return {l.a11 * r.a11 + l.a12 * r.a21, l.a11 * r.a12 + l.a12 * r.a22,
          l.a21 * r.a11 + l.a22 * r.a21, l.a21 * r.a12 + l.a22 * r.a22};
}

Matrix2 transpose(const Matrix2& m) { return {m.a11, m.a21, m.a12, m.a22}; }

Matrix2 rotation_matrix(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c, -s, s, c};
}

double frobenius_distance(const Matrix2& l, const Matrix2& r) {
  const double d11 = l.a11 - r.a11;
  const double d12 = l.a12 - r.a12;
  const double d21 = l.a21 - r.a21;
  const double d22 = l.a22 - r.a22;
  return std::sqrt(d11 * d11 + d12 * d12 + d21 * d21 + d22 * d22);
}

LinearField::LinearField(const Matrix2& coefficients, const SymmetricDomain& domain)
    : coefficients_(coefficients), domain_(domain) {
  if (!(std::isfinite(coefficients.a11) && std::isfinite(coefficients.a12) &&
        std::isfinite(coefficients.a21) && std::isfinite(coefficients.a22))) {
    throw Error(ErrorCode::InvalidArgument, "linear field coefficients must be finite");
  }
}

Vec2 LinearField::apply(const Vec2& x) const noexcept {
  const Matrix2& m = coefficients_;
  return {m.a11 * x.x1 + m.a12 * x.x2, m.a21 * x.x1 + m.a22 * x.x2};
}

bool LinearField::is_zero() const noexcept { return coefficients_ == Matrix2{}; }

LinearField saddle_a(const SymmetricDomain& domain) { return {{1.0, 0.0, 0.0, -1.0}, domain}; }
LinearField saddle_b(const SymmetricDomain& domain) { return {{0.0, 1.0, 1.0, 0.0}, domain}; }
LinearField source_c(const SymmetricDomain& domain) { return {{1.0, 0.0, 0.0, 1.0}, domain}; }
LinearField vortex_d(const SymmetricDomain& domain) { return {{0.0, 1.0, -1.0, 0.0}, domain}; }

Multivector2 eval(const LinearField& field, const Vec2& x) {
  if (!field.domain().contains(x)) return {};
  return as_vector(field.apply(x));
}

// In matrix terms b is the symmetric and d the antisymmetric off-diagonal
// part: d(x) = x2 e1 - x1 e2 has a12 = +1, a21 = -1.
Decomposition decompose(const LinearField& field) {
  const Matrix2& m = field.coefficients();
  return {0.5 * (m.a11 - m.a22), 0.5 * (m.a12 + m.a21), 0.5 * (m.a11 + m.a22),
          0.5 * (m.a12 - m.a21)};
}

LinearField recompose(const Decomposition& p, const SymmetricDomain& domain) {
  return {{p.a + p.c, p.b + p.d, p.b - p.d, -p.a + p.c}, domain};
}

LinearField saddle_part(const LinearField& field) {
  const Decomposition p = decompose(field);
  return recompose({p.a, p.b, 0.0, 0.0}, field.domain());
}

LinearField rotation_invariant_part(const LinearField& field) {
  const Decomposition p = decompose(field);
  return recompose({0.0, 0.0, p.c, p.d}, field.domain());
}

LinearField total_rotate(const LinearField& field, double angle) {
  const Matrix2 r = rotation_matrix(angle);
  return {r * field.coefficients() * transpose(r), field.domain()};
}

LinearField outer_rotate(const LinearField& field, double angle) {
  return {rotation_matrix(angle) * field.coefficients(), field.domain()};
}

LinearField inner_rotate(const LinearField& field, double angle) {
  return {field.coefficients() * transpose(rotation_matrix(angle)), field.domain()};
}

AnalyticField counterexample_field() {
  return [](const Vec2& x) -> Vec2 {
    const double phi = std::atan2(x.x2, x.x1);
    return {std::cos(2.0 * phi), std::sin(2.0 * phi)};
  };
}

AnalyticField total_rotate(AnalyticField field, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return [field = std::move(field), c, s](const Vec2& x) -> Vec2 {
    return rotate(field(rotate(x, c, -s)), c, s);
  };
}

double SampledField::spacing() const noexcept {
  return 2.0 * domain.bounding_half_side() / static_cast<double>(n);
}

double SampledField::cell_area() const noexcept {
  const double h = spacing();
  return h * h;
}

Vec2 SampledField::cell_center(std::size_t i, std::size_t j) const noexcept {
  const double l = domain.bounding_half_side();
  const double h = spacing();
  return {-l + (static_cast<double>(i) + 0.5) * h, -l + (static_cast<double>(j) + 0.5) * h};
}

SampledField sample(const AnalyticField& field, const SymmetricDomain& domain, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "sample: resolution must be at least 2");
  SampledField out;
  out.n = n;
  out.domain = domain;
  out.values.assign(n * n, Vec2{});
  out.mask.assign(n * n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 p = out.cell_center(i, j);
      if (!domain.contains(p)) continue;
      out.values[j * n + i] = field(p);
      out.mask[j * n + i] = 1;
    }
  }
  return out;
}

SampledField sample(const LinearField& field, std::size_t n) {
  return sample([&field](const Vec2& x) { return field.apply(x); }, field.domain(), n);
}

Vec2 interpolate(const SampledField& field, const Vec2& x) {
  if (!field.domain.contains(x)) return {};
  const double l = field.domain.bounding_half_side();
  const double h = field.spacing();
  const auto last = static_cast<double>(field.n - 1);
  // Continuous cell index; clamp to the outermost centres.
  const double gx = std::clamp((x.x1 + l) / h - 0.5, 0.0, last);
  const double gy = std::clamp((x.x2 + l) / h - 0.5, 0.0, last);
  const auto i0 = static_cast<std::size_t>(std::min(std::floor(gx), last - 1.0));
  const auto j0 = static_cast<std::size_t>(std::min(std::floor(gy), last - 1.0));
  const double tx = gx - static_cast<double>(i0);
  const double ty = gy - static_cast<double>(j0);
  const Vec2& v00 = field.at(i0, j0);
  const Vec2& v10 = field.at(i0 + 1, j0);
  const Vec2& v01 = field.at(i0, j0 + 1);
  const Vec2& v11 = field.at(i0 + 1, j0 + 1);
  const double w00 = (1.0 - tx) * (1.0 - ty);
  const double w10 = tx * (1.0 - ty);
  const double w01 = (1.0 - tx) * ty;
  const double w11 = tx * ty;
  return {w00 * v00.x1 + w10 * v10.x1 + w01 * v01.x1 + w11 * v11.x1,
          w00 * v00.x2 + w10 * v10.x2 + w01 * v01.x2 + w11 * v11.x2};
}

SampledField total_rotate(const SampledField& field, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  SampledField out = field;
  for (std::size_t j = 0; j < field.n; ++j) {
    for (std::size_t i = 0; i < field.n; ++i) {
      const std::size_t k = j * field.n + i;
      if (!field.mask[k]) continue;
      const Vec2 src = rotate(field.cell_center(i, j), c, -s);
      out.values[k] = rotate(interpolate(field, src), c, s);
    }
  }
  return out;
}

}  // namespace gcreg
