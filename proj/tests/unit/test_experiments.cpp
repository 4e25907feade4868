#include <gtest/gtest.h>

#include "gcreg/error.hpp"
#include "gcreg/experiments.hpp"
#include "gcreg/serialize.hpp"

using namespace gcreg;

TEST(Trial, PureSaddleHalvingIsAccurate) {
  const LinearField v = saddle_a(SymmetricDomain::square(1.0));
  const TrialOutcome t = run_trial(v, 0.4, 1e-4);
  EXPECT_EQ(t.status, DetectionStatus::Converged);
  EXPECT_LE(t.error, 1e-3);
  EXPECT_EQ(t.weight_ratio, 0.0);
}

TEST(Trial, ZeroAngle) {
  const LinearField v({0.3, 0.2, -0.6, 0.9}, SymmetricDomain::square(1.0));
  const TrialOutcome t = run_trial(v, 0.0, 1e-5);
  EXPECT_EQ(t.status, DetectionStatus::Converged);
  EXPECT_LT(t.error, 1e-3);
}

TEST(Trial, DegenerateIsCounted) {
  const TrialOutcome t = run_trial(LinearField({0, 0, 0, 0}, SymmetricDomain::square(1.0)), 0.2, 1e-3);
  EXPECT_EQ(t.status, DetectionStatus::DegenerateZeroField);
}

TEST(Rng, StreamsDependOnSeedAndIndex) {
  EXPECT_EQ(trial_rng(1, 5)(), trial_rng(1, 5)());
  EXPECT_NE(trial_rng(1, 5)(), trial_rng(1, 6)());
  EXPECT_NE(trial_rng(1, 5)(), trial_rng(2, 5)());
}

TEST(Campaign, DeterministicAcrossThreadCounts) {
  TrialSpec spec;
  spec.trials = 500;
  spec.eps = 1e-2;
  spec.seed = 7;
  const ExperimentReport one = run_campaign(spec);
  spec.threads = 4;
  const ExperimentReport four = run_campaign(spec);
  EXPECT_EQ(to_json(one), to_json(four));
  EXPECT_GE(one.max_error, one.avg_error);
  EXPECT_EQ(one.converged + one.max_iter_exceeded + one.degenerate, one.trials);
}

TEST(Campaign, SingleTrialRepeats) {
  TrialSpec spec;
  spec.trials = 1;
  spec.seed = 7;
  EXPECT_EQ(to_json(run_campaign(spec)), to_json(run_campaign(spec)));
}

TEST(Campaign, ErrorShrinksWithEps) {
  TrialSpec spec;
  spec.trials = 2000;
  spec.eps = 0.1;
  const double coarse = run_campaign(spec).avg_error_converged;
  spec.eps = 1e-3;
  const double fine = run_campaign(spec).avg_error_converged;
  EXPECT_LT(fine, coarse);
}

TEST(Campaign, Validation) {
  TrialSpec spec;
  spec.trials = 0;
  EXPECT_THROW(run_campaign(spec), Error);
  spec.trials = 1;
  spec.eps = -1;
  EXPECT_THROW(run_campaign(spec), Error);
}
