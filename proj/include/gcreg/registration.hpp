#pragma once

// Iterative detection of the total-rotation misalignment between a linear
// field v and a rotated copy u, plus a brute-force reference.

#include <cstddef>
#include <vector>

#include "gcreg/fields.hpp"

namespace gcreg {

struct DetectorConfig {
  /// Stop once |phi| <= eps.
  double eps = 1e-5;
  std::size_t max_iter = 10000;
  /// Tolerance that replaces the exact tests alpha == 0 and phi == -pi/2.
  double zero_tol = 1e-9;

  /// Throws InvalidArgument unless eps > 0, max_iter >= 1 and 0 <= zero_tol < eps.
  void validate() const;
};

enum class DetectionStatus { Converged, MaxIterExceeded, DegenerateZeroField };

/// Which exception branch of the iteration fired in a step.
enum class ExceptionBranch {
  None,
  /// First step found nothing to correct: perturb by a quarter of pi.
  AlignedPerturbation,
  /// Second step undid the first: the field is a pure saddle, take half.
  SaddleHalving,
  /// Second step after the perturbation hit a half turn of the saddle.
  SaddleQuarterTurn,
};

struct TraceEntry {
  std::size_t iter = 0;
  /// Rotation applied to the pattern in this step.
  double phi = 0.0;
  /// Misalignment estimate after the step (unwrapped).
  double alpha_after = 0.0;
  bool exception = false;
  ExceptionBranch branch = ExceptionBranch::None;
};

struct DetectionResult {
  /// Estimated misalignment, wrapped to (-pi, pi]: u ~ total_rotate(v, alpha).
  double alpha = 0.0;
  std::size_t iterations = 0;
  std::vector<TraceEntry> trace;
  DetectionStatus status = DetectionStatus::Converged;
  /// The pattern after all applied corrections.
  LinearField corrected;
};

/// atan2(-sin(2a) n1, cos(2a) n1 + n2) with n1, n2 the L2 weights of the
/// saddle and source/vortex parts. Throws DegenerateZeroField for v = 0.
double phi_of_alpha(const LinearField& v, double alpha);

/// Runs the correlation fixed-point iteration. Throws DegenerateZeroField when
/// v is identically zero and DomainMismatch when u and v live on different
/// domains; running out of iterations is reported through `status`.
DetectionResult detect(const LinearField& v, const LinearField& u, const DetectorConfig& cfg = {});

struct SampledDetectionResult {
  double alpha = 0.0;
  std::size_t iterations = 0;
  std::vector<TraceEntry> trace;
  DetectionStatus status = DetectionStatus::Converged;
};

/// Same iteration on sampled fields. Each step resamples the original pattern
/// at the accumulated rotation with bilinear interpolation, so results are
/// approximate and limited by the grid.
SampledDetectionResult detect(const SampledField& v, const SampledField& u, const DetectorConfig& cfg = {});

/// argmin over theta in (-pi/2, pi/2] of ||total_rotate(u, -theta) - v||_F:
/// a uniform scan with `grid` points followed by golden-section refinement.
double oracle_detect(const LinearField& v, const LinearField& u, std::size_t grid = 20001);

/// One-shot estimate -arg((u * v1)(0)) / 2 where v1 is the saddle part of the
/// known pattern. Throws DegenerateZeroField if the pattern has no saddle part.
double detect_known_pattern(const LinearField& pattern, const LinearField& u);

const char* to_string(DetectionStatus status) noexcept;
const char* to_string(ExceptionBranch branch) noexcept;

}  // namespace gcreg
