#include "gcreg/registration.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gcreg/correlation.hpp"
#include "gcreg/error.hpp"

namespace gcreg {

void DetectorConfig::validate() const {
  if (!(std::isfinite(eps) && eps > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "detector: eps must be positive");
  }
  if (max_iter < 1) throw Error(ErrorCode::InvalidArgument, "detector: max_iter must be at least 1");
  if (!(zero_tol >= 0.0 && zero_tol < eps)) {
    throw Error(ErrorCode::InvalidArgument, "detector: zero_tol must lie in [0, eps)");
  }
}

const char* to_string(DetectionStatus status) noexcept {
  switch (status) {
    case DetectionStatus::Converged: return "converged";
    case DetectionStatus::MaxIterExceeded: return "max_iter_exceeded";
    case DetectionStatus::DegenerateZeroField: return "degenerate_zero_field";
  }
  return "unknown";
}

const char* to_string(ExceptionBranch branch) noexcept {
  switch (branch) {
    case ExceptionBranch::None: return "none";
    case ExceptionBranch::AlignedPerturbation: return "aligned_perturbation";
    case ExceptionBranch::SaddleHalving: return "saddle_halving";
    case ExceptionBranch::SaddleQuarterTurn: return "saddle_quarter_turn";
  }
  return "unknown";
}

double phi_of_alpha(const LinearField& v, double alpha) {
  const Decomposition parts = decompose(v);
  const double moment = second_moment(v.domain());
  const double n1 = parts.saddle_weight() * moment;
  const double n2 = parts.rotation_invariant_weight() * moment;
  if (n1 == 0.0 && n2 == 0.0) {
    throw Error(ErrorCode::DegenerateZeroField, "phi_of_alpha: field is identically zero");
  }
  return std::atan2(-std::sin(2.0 * alpha) * n1, std::cos(2.0 * alpha) * n1 + n2);
}

namespace {

// Correlation argument reduced modulo a half turn. Linear fields are
// invariant under a total rotation by pi, so a negative real correlation
// carries no rotational information and maps to zero like a positive one.
double step_angle(const CorrelationValue& cor) {
  if (cor.magnitude() == 0.0) return 0.0;
  return wrap_half_turn(cor.argument());
}

// The fixed-point iteration, independent of how fields are stored.
// `correlate()` correlates the current pattern with the reference field and
// `rotate(phi)` applies a total rotation by phi to the current pattern.
template <typename Correlate, typename Rotate>
void iterate(Correlate&& correlate, Rotate&& rotate, const DetectorConfig& cfg, double& applied,
             std::size_t& iterations, std::vector<TraceEntry>& trace, DetectionStatus& status) {
  const double quarter = kPi / 4.0;
  double phi = kPi;
  double alpha = 0.0;  // running sum tested by the exception branches
  bool exception = false;
  applied = 0.0;
  iterations = 0;
  while (std::abs(phi) > cfg.eps && iterations < cfg.max_iter) {
    ++iterations;
    phi = step_angle(correlate());
    alpha += phi;
    ExceptionBranch branch = ExceptionBranch::None;
    if (iterations == 1 && std::abs(alpha) <= cfg.zero_tol) {
      alpha = phi = quarter;
      exception = true;
      branch = ExceptionBranch::AlignedPerturbation;
    }
    if (iterations == 2 && !exception && std::abs(alpha) <= cfg.zero_tol) {
      // The second step undid the first: a pure saddle, whose correlation
      // argument is exactly twice the misalignment. Apply half of it. The
      // correction accumulated below is -phi/2 + phi, i.e. minus the
      // misalignment, so the reported estimate is +phi/2.
      alpha = phi = phi / 2.0;
      branch = ExceptionBranch::SaddleHalving;
    }
    if (iterations == 2 && exception && std::abs(wrap_half_turn(phi + kPi / 2.0)) <= cfg.zero_tol) {
      alpha = kPi / 2.0;
      phi = quarter;
      branch = ExceptionBranch::SaddleQuarterTurn;
    }
    rotate(phi);
    applied += phi;
    trace.push_back({iterations, phi, -applied, branch != ExceptionBranch::None, branch});
  }
  status = std::abs(phi) <= cfg.eps ? DetectionStatus::Converged : DetectionStatus::MaxIterExceeded;
}

}  // namespace

DetectionResult detect(const LinearField& v, const LinearField& u, const DetectorConfig& cfg) {
  cfg.validate();
  if (!(u.domain() == v.domain())) {
    throw Error(ErrorCode::DomainMismatch, "detect: field and pattern live on different domains");
  }
  if (v.is_zero() || u.is_zero()) {
    throw Error(ErrorCode::DegenerateZeroField, "detect: field or pattern is identically zero");
  }
  DetectionResult result{0.0, 0, {}, DetectionStatus::Converged, u};
  double applied = 0.0;
  LinearField& current = result.corrected;
  iterate([&] { return correlate_linear(current, v); },
          [&](double phi) { current = total_rotate(current, phi); },
          cfg, applied, result.iterations, result.trace, result.status);
  result.alpha = wrap_angle(-applied);
  return result;
}

SampledDetectionResult detect(const SampledField& v, const SampledField& u, const DetectorConfig& cfg) {
  cfg.validate();
  if (!(u.domain == v.domain) || u.n != v.n || u.mask != v.mask) {
    throw Error(ErrorCode::DomainMismatch, "detect: sampled fields live on different grids");
  }
  auto all_zero = [](const SampledField& f) {
    for (const Vec2& p : f.values) {
      if (p.x1 != 0.0 || p.x2 != 0.0) return false;
    }
    return true;
  };
  if (all_zero(v) || all_zero(u)) {
    throw Error(ErrorCode::DegenerateZeroField, "detect: field or pattern is identically zero");
  }
  SampledDetectionResult result;
  // Resample the original pattern at the accumulated angle each step so
  // interpolation error does not compound.
  double applied = 0.0;
  double total = 0.0;
  SampledField current = u;
  iterate([&] { return correlate_sampled(current, v); },
          [&](double phi) {
            total += phi;
            current = total_rotate(u, total);
          },
          cfg, applied, result.iterations, result.trace, result.status);
  result.alpha = wrap_angle(-applied);
  return result;
}

double oracle_detect(const LinearField& v, const LinearField& u, std::size_t grid) {
  if (grid < 3) throw Error(ErrorCode::InvalidArgument, "oracle_detect: grid needs at least 3 points");
  if (!(u.domain() == v.domain())) {
    throw Error(ErrorCode::DomainMismatch, "oracle_detect: field and pattern live on different domains");
  }
  auto distance = [&](double theta) {
    return frobenius_distance(total_rotate(u, -theta).coefficients(), v.coefficients());
  };
  const double step = kPi / static_cast<double>(grid);
  double best_theta = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid; ++k) {
    const double theta = -kPi / 2.0 + static_cast<double>(k + 1) * step;
    const double d = distance(theta);
    if (d < best) {
      best = d;
      best_theta = theta;
    }
  }
  // Golden-section search on the bracket around the best grid point.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_theta - step;
  double hi = best_theta + step;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = distance(c);
  double fd = distance(d);
  while (hi - lo > 1e-10) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = distance(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = distance(d);
    }
  }
  const double refined = 0.5 * (lo + hi);
  return wrap_half_turn(distance(refined) <= best ? refined : best_theta);
}

double detect_known_pattern(const LinearField& pattern, const LinearField& u) {
  const LinearField saddle = saddle_part(pattern);
  if (saddle.is_zero()) {
    throw Error(ErrorCode::DegenerateZeroField, "detect_known_pattern: pattern has no saddle part");
  }
  const CorrelationValue cor = correlate_linear(u, saddle);
  if (cor.magnitude() == 0.0) {
    throw Error(ErrorCode::DegenerateZeroField, "detect_known_pattern: pattern is identically zero");
  }
  return -0.5 * cor.argument();
}

}  // namespace gcreg
