#include "gcreg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "gcreg/correlation.hpp"
#include "gcreg/error.hpp"

namespace gcreg {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double weight_ratio(const LinearField& v) {
  const Decomposition p = decompose(v);
  const double n1 = p.saddle_weight();
  const double n2 = p.rotation_invariant_weight();
  const double hi = std::max(n1, n2);
  return hi == 0.0 ? 0.0 : std::min(n1, n2) / hi;
}

}  // namespace

void TrialSpec::validate() const {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "campaign: trials must be at least 1");
  if (!(std::isfinite(eps) && eps > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "campaign: eps must be positive");
  }
  if (!(std::isfinite(coeff_bound) && coeff_bound > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "campaign: coefficient bound must be positive");
  }
  if (max_iter < 1) throw Error(ErrorCode::InvalidArgument, "campaign: max_iter must be at least 1");
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed;
  const std::uint64_t a = splitmix64(state);
  state = a ^ index;
  const std::uint64_t b = splitmix64(state);
  std::seed_seq seq{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

TrialOutcome run_trial(const LinearField& v, double alpha, double eps, std::size_t max_iter) {
  TrialOutcome out;
  out.alpha_true = alpha;
  out.weight_ratio = weight_ratio(v);
  const LinearField u = total_rotate(v, alpha);
  DetectorConfig cfg;
  cfg.eps = eps;
  cfg.max_iter = max_iter;
  cfg.zero_tol = std::min(cfg.zero_tol, eps / 2.0);
  try {
    const DetectionResult r = detect(v, u, cfg);
    out.alpha_hat = r.alpha;
    out.iterations = r.iterations;
    out.status = r.status;
    out.error = frobenius_distance(total_rotate(u, -r.alpha).coefficients(), v.coefficients());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateZeroField) throw;
    out.status = DetectionStatus::DegenerateZeroField;
  }
  return out;
}

TrialOutcome run_trial(std::mt19937_64& rng, const TrialSpec& spec) {
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> coeff(-spec.coeff_bound, spec.coeff_bound);
  double alpha = angle(rng);
  if (alpha <= -kPi) alpha = kPi;
  const double c1 = coeff(rng);
  const double c2 = coeff(rng);
  const double c3 = coeff(rng);
  const double c4 = coeff(rng);
  const LinearField v = spec.sampling == CoefficientSampling::Matrix
                            ? LinearField({c1, c2, c3, c4}, spec.domain)
                            : recompose({c1, c2, c3, c4}, spec.domain);
  return run_trial(v, alpha, spec.eps, spec.max_iter);
}

ExperimentReport run_campaign(const TrialSpec& spec) {
  spec.validate();
  std::vector<TrialOutcome> outcomes(spec.trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < spec.trials; k = next++) {
      std::mt19937_64 rng = trial_rng(spec.seed, k);
      outcomes[k] = run_trial(rng, spec);
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(spec.threads, 1, spec.trials);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  ExperimentReport report;
  report.eps = spec.eps;
  report.trials = spec.trials;
  report.seed = spec.seed;
  double error_sum = 0.0;
  double iter_sum = 0.0;
  double error_sum_conv = 0.0;
  double iter_sum_conv = 0.0;
  std::size_t counted = 0;
  for (const TrialOutcome& t : outcomes) {
    const bool near_degenerate = t.weight_ratio < kNearDegenerateRatio;
    if (near_degenerate) ++report.near_degenerate;
    if (t.status == DetectionStatus::DegenerateZeroField) {
      ++report.degenerate;
      continue;
    }
    ++counted;
    error_sum += t.error;
    iter_sum += static_cast<double>(t.iterations);
    report.max_error = std::max(report.max_error, t.error);
    report.max_iterations = std::max(report.max_iterations, t.iterations);
    if (t.status == DetectionStatus::Converged) {
      ++report.converged;
      error_sum_conv += t.error;
      iter_sum_conv += static_cast<double>(t.iterations);
      report.max_error_converged = std::max(report.max_error_converged, t.error);
    } else {
      ++report.max_iter_exceeded;
      if (near_degenerate) ++report.near_degenerate_not_converged;
    }
  }
  if (counted > 0) {
    report.avg_error = error_sum / static_cast<double>(counted);
    report.avg_iterations = iter_sum / static_cast<double>(counted);
    report.converged_fraction = static_cast<double>(report.converged) / static_cast<double>(counted);
  }
  if (report.converged > 0) {
    report.avg_error_converged = error_sum_conv / static_cast<double>(report.converged);
    report.avg_iterations_converged = iter_sum_conv / static_cast<double>(report.converged);
  }
  return report;
}

}  // namespace gcreg
