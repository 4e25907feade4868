#pragma once

// Randomised detection campaigns on linear fields.

#include <cstddef>
#include <cstdint>
#include <random>

#include "gcreg/fields.hpp"
#include "gcreg/registration.hpp"

namespace gcreg {

/// What the coefficient bound applies to when drawing a random field.
enum class CoefficientSampling {
  /// a11, a12, a21, a22 uniform on [-bound, bound].
  Matrix,
  /// a, b, c, d uniform on [-bound, bound].
  Decomposition,
};

struct TrialSpec {
  std::size_t trials = 1000;
  double eps = 1e-3;
  std::uint64_t seed = 42;
  double coeff_bound = 1.0;
  SymmetricDomain domain = SymmetricDomain::square(1.0);
  CoefficientSampling sampling = CoefficientSampling::Matrix;
  std::size_t max_iter = 10000;
  std::size_t threads = 1;

  void validate() const;
};

/// Ratio below which a field counts as near-degenerate: min(n1, n2) < ratio * max(n1, n2).
inline constexpr double kNearDegenerateRatio = 1e-6;

struct TrialOutcome {
  double alpha_true = 0.0;
  double alpha_hat = 0.0;
  /// Frobenius distance between v and total_rotate(u, -alpha_hat).
  double error = 0.0;
  std::size_t iterations = 0;
  DetectionStatus status = DetectionStatus::Converged;
  /// min(n1, n2) / max(n1, n2); 0 for a pure saddle or pure source/vortex.
  double weight_ratio = 0.0;
};

/// Per-trial generator: splitmix64 of (seed, index) seeds a mt19937_64.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index);

/// Detects the misalignment of v and total_rotate(v, alpha) and measures the error.
TrialOutcome run_trial(const LinearField& v, double alpha, double eps, std::size_t max_iter = 10000);

/// Draws alpha uniform on (-pi, pi] and a field per `spec`, then runs it.
TrialOutcome run_trial(std::mt19937_64& rng, const TrialSpec& spec);

struct ExperimentReport {
  double eps = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  /// Over all non-degenerate trials.
  double avg_error = 0.0;
  double max_error = 0.0;
  double avg_iterations = 0.0;
  /// Converged trials over non-degenerate trials.
  double converged_fraction = 0.0;
  /// Over converged trials only.
  double avg_error_converged = 0.0;
  double max_error_converged = 0.0;
  double avg_iterations_converged = 0.0;
  std::size_t max_iterations = 0;
  std::size_t converged = 0;
  std::size_t max_iter_exceeded = 0;
  std::size_t degenerate = 0;
  /// Trials below kNearDegenerateRatio, counted whatever their status.
  std::size_t near_degenerate = 0;
  std::size_t near_degenerate_not_converged = 0;
};

/// Deterministic for a fixed seed regardless of `threads`.
ExperimentReport run_campaign(const TrialSpec& spec);

}  // namespace gcreg
