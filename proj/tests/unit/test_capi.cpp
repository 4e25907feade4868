#include <cmath>
#include <cstdio>
#include <string>

#include <gtest/gtest.h>

#include "gcreg/gcreg.h"

TEST(CApi, AlgebraAndStatus) {
  const gcreg_multivector e1{0, 1, 0, 0}, e2{0, 0, 1, 0};
  gcreg_multivector out{};
  ASSERT_EQ(gcreg_gp(&e1, &e2, &out), GCREG_OK);
  EXPECT_EQ(out.e12, 1.0);
  EXPECT_EQ(gcreg_gp(nullptr, &e2, &out), GCREG_ERR_INVALID_ARGUMENT);
  const gcreg_multivector zero{0, 0, 0, 0};
  double arg = 0;
  EXPECT_EQ(gcreg_spinor_arg(&zero, &arg), GCREG_ERR_DEGENERATE_SPINOR);
  EXPECT_NE(std::string(gcreg_last_error()), "");
  EXPECT_STREQ(gcreg_status_string(GCREG_OK), "ok");
}

TEST(CApi, JsonBufferProtocol) {
  const gcreg_field f{1, 2, 3, 4, {GCREG_DOMAIN_SQUARE, 1.0}};
  size_t needed = 0;
  ASSERT_EQ(gcreg_field_to_json(&f, nullptr, 0, &needed), GCREG_OK);
  ASSERT_GT(needed, 1u);
  std::string buf(needed, '\0');
  EXPECT_EQ(gcreg_field_to_json(&f, buf.data(), needed - 1, &needed), GCREG_ERR_BUFFER_TOO_SMALL);
  ASSERT_EQ(gcreg_field_to_json(&f, buf.data(), buf.size(), &needed), GCREG_OK);
  gcreg_field back{};
  ASSERT_EQ(gcreg_field_from_json(buf.c_str(), &back), GCREG_OK);
  EXPECT_EQ(back.a21, 3.0);
}

TEST(CApi, DetectionHandle) {
  const gcreg_field v{1.0, 0.3, -0.2, 0.5, {GCREG_DOMAIN_SQUARE, 1.0}};
  gcreg_field u{};
  ASSERT_EQ(gcreg_rotate(&v, GCREG_ROTATE_TOTAL, 0.4, &u), GCREG_OK);
  const gcreg_detector_config cfg = gcreg_detector_config_default();
  gcreg_detection h = nullptr;
  ASSERT_EQ(gcreg_detect(&v, &u, &cfg, &h), GCREG_OK);
  double alpha = 0;
  size_t n = 0;
  gcreg_detection_status st{};
  ASSERT_EQ(gcreg_detection_alpha(h, &alpha), GCREG_OK);
  ASSERT_EQ(gcreg_detection_trace_length(h, &n), GCREG_OK);
  ASSERT_EQ(gcreg_detection_status_of(h, &st), GCREG_OK);
  EXPECT_NEAR(alpha, 0.4, 1e-4);
  EXPECT_EQ(st, GCREG_CONVERGED);
  gcreg_trace_entry t{};
  EXPECT_EQ(gcreg_detection_trace_entry(h, n, &t), GCREG_ERR_INVALID_ARGUMENT);
  const char* json = nullptr;
  ASSERT_EQ(gcreg_detection_json(h, 1, &json), GCREG_OK);
  EXPECT_NE(std::string(json).find("\"trace\""), std::string::npos);
  gcreg_detection_destroy(h);

  const gcreg_field zero{0, 0, 0, 0, {GCREG_DOMAIN_SQUARE, 1.0}};
  EXPECT_EQ(gcreg_detect(&zero, &zero, &cfg, &h), GCREG_ERR_DEGENERATE_ZERO_FIELD);
}

TEST(CApi, SampledAndReport) {
  const gcreg_domain disk{GCREG_DOMAIN_DISK, 1.0};
  gcreg_sampled_field a = nullptr, b = nullptr;
  ASSERT_EQ(gcreg_sample_counterexample(&disk, 0.3, 256, &a), GCREG_OK);
  ASSERT_EQ(gcreg_sample_counterexample(&disk, 0.0, 256, &b), GCREG_OK);
  gcreg_multivector c{};
  ASSERT_EQ(gcreg_correlate_sampled(a, b, &c), GCREG_OK);
  EXPECT_NEAR(c.s, M_PI * std::cos(0.3), 2e-2);
  EXPECT_NEAR(c.e12, M_PI * std::sin(0.3), 2e-2);
  EXPECT_EQ(gcreg_sampled_write_csv(a, "/nonexistent-dir/x.csv"), GCREG_ERR_IO);
  gcreg_sampled_destroy(a);
  gcreg_sampled_destroy(b);

  gcreg_trial_spec spec = gcreg_trial_spec_default();
  spec.trials = 50;
  gcreg_report r = nullptr;
  ASSERT_EQ(gcreg_run_campaign(&spec, &r), GCREG_OK);
  gcreg_report_summary s{};
  ASSERT_EQ(gcreg_report_get(r, &s), GCREG_OK);
  EXPECT_EQ(s.trials, 50u);
  const char *header = nullptr, *row = nullptr;
  ASSERT_EQ(gcreg_report_csv(r, &header, &row), GCREG_OK);
  EXPECT_EQ(std::string(header).substr(0, 4), "eps,");
  gcreg_report_destroy(r);
}
