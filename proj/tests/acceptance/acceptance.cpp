// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "gcreg/correlation.hpp"
#include "gcreg/experiments.hpp"
#include "gcreg/registration.hpp"

using namespace gcreg;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void info(const std::string& detail) {
  std::printf("       info: %s\n", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

LinearField random_field(std::mt19937_64& rng, const SymmetricDomain& dom) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a11 = u(rng), a12 = u(rng), a21 = u(rng), a22 = u(rng);
  return LinearField({a11, a12, a21, a22}, dom);
}

double component_gap(const Multivector2& l, const Multivector2& r) { return (l - r).max_abs(); }

void criterion1() {
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> angle(-kPi / 2, kPi / 2);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const SymmetricDomain dom = (k % 2) ? SymmetricDomain::square(0.5 + k % 7 * 0.25)
                                        : SymmetricDomain::disk(0.5 + k % 5 * 0.3);
    const LinearField v = random_field(rng, dom);
    const double a = angle(rng);
    const Decomposition d = decompose(v);
    const double ia = second_moment(dom);
    const Multivector2 expect =
        Multivector2::spinor(std::cos(2 * a), -std::sin(2 * a)) * (d.saddle_weight() * ia) +
        Multivector2::scalar(d.rotation_invariant_weight() * ia);
    const Multivector2 got = correlate_linear(total_rotate(v, a), v).value;
    worst = std::max(worst, component_gap(got, expect) / std::max(expect.magnitude(), 1e-300));
  }
  report(1, worst <= 1e-10, fmt("rotated-copy identity, 10^4 fields, worst relative gap %.3g (tol 1e-10)", worst));
}

void criterion2() {
  std::mt19937_64 rng(2002);
  const SymmetricDomain dom = SymmetricDomain::square(1.0);
  double worst512 = 0.0;
  double min_ratio = 1e300, max_ratio = 0.0;
  for (int k = 0; k < 100; ++k) {
    const LinearField u = random_field(rng, dom);
    const LinearField v = random_field(rng, dom);
    const Multivector2 exact = correlate_linear(u, v).value;
    const double mag = exact.magnitude();
    auto gap = [&](std::size_t n) {
      return component_gap(correlate_sampled(sample(u, n), sample(v, n)).value, exact);
    };
    worst512 = std::max(worst512, gap(512) / mag);
    const double e128 = gap(128), e256 = gap(256);
    if (e256 > 1e-13 * mag) {
      min_ratio = std::min(min_ratio, e128 / e256);
      max_ratio = std::max(max_ratio, e128 / e256);
    }
  }
  const bool ok = worst512 <= 5e-5 && min_ratio >= 3.5 && max_ratio <= 4.5;
  report(2, ok, fmt("quadrature vs closed form, 100 pairs: worst |gap|/magnitude %.3g at n=512 (tol 5e-5); "
                    "err(128)/err(256) in [%.4g, %.4g] (second order: 4)",
                    worst512, min_ratio, max_ratio));
}

void criterion3() {
  const SymmetricDomain sq = SymmetricDomain::square(1.0);
  const LinearField v = recompose({1.0, 0.0, 2.0, 0.0}, sq);
  const Multivector2 p = product_at(total_rotate(v, kPi / 4), v, {-1.0, 1.0});
  const double point_gap = component_gap(p, Multivector2::spinor(4.0, 2.0));

  const SymmetricDomain disk = SymmetricDomain::disk(1.0);
  const SampledField base = sample(counterexample_field(), disk, 1024);
  double sampled_gap = 0.0;
  for (double a : {0.3, -0.9}) {
    const SampledField rotated = sample(total_rotate(counterexample_field(), a), disk, 1024);
    const Multivector2 got = correlate_sampled(rotated, base).value;
    const Multivector2 expect = Multivector2::spinor(kPi * std::cos(a), kPi * std::sin(a));
    sampled_gap = std::max(sampled_gap, component_gap(got, expect));
  }

  std::mt19937_64 rng(3003);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  double outer_gap = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const LinearField f = random_field(rng, sq);
    const double a = angle(rng);
    const Matrix2& m = f.coefficients();
    const double norm2 = second_moment(sq) / 2 *
                         (m.a11 * m.a11 + m.a12 * m.a12 + m.a21 * m.a21 + m.a22 * m.a22);
    const Multivector2 expect = Multivector2::spinor(std::cos(a), -std::sin(a)) * norm2;
    outer_gap = std::max(outer_gap, component_gap(correlate_linear(outer_rotate(f, a), f).value, expect) /
                                        std::max(norm2, 1e-300));
  }
  const bool ok = point_gap <= 1e-12 && sampled_gap <= 2e-2 && outer_gap <= 1e-10;
  report(3, ok, fmt("point product gap %.3g (expect 4+2e12); counterexample gap %.3g at n=1024 (atol 2e-2); "
                    "outer-rotation identity gap %.3g (tol 1e-10)",
                    point_gap, sampled_gap, outer_gap));
}

void criterion4() {
  std::mt19937_64 rng(4004);
  std::size_t sign_bad = 0, bound_bad = 0, cases = 0;
  for (int f = 0; f < 100; ++f) {
    LinearField v = random_field(rng, SymmetricDomain::square(1.0));
    const Decomposition d = decompose(v);
    if (d.saddle_weight() <= 0.0 || d.rotation_invariant_weight() <= 0.0) continue;
    for (int k = 0; k < 100; ++k) {
      // open interval (-pi/2, pi/2), skipping 0 itself
      const double a = -kPi / 2 + (k + 0.5) * kPi / 100;
      const double phi = phi_of_alpha(v, a);
      ++cases;
      if (!(phi == 0.0 || (phi > 0) == (a < 0))) ++sign_bad;
      if (std::abs(phi) > 2 * std::abs(a) * (1 + 1e-12)) ++bound_bad;
    }
  }
  report(4, cases == 10000 && sign_bad == 0 && bound_bad == 0,
         fmt("phi bounds over %zu (field, angle) pairs: %zu sign violations, %zu |phi|<=2|alpha| violations",
             cases, sign_bad, bound_bad));
}

void criterion5() {
  DetectorConfig cfg;
  cfg.eps = 1e-5;
  cfg.max_iter = 10000;
  std::size_t counted = 0, converged = 0, excluded = 0, excluded_converged = 0, off = 0;
  double worst = 0.0, worst_ratio = 0.0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    std::mt19937_64 rng = trial_rng(5005, i);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    const double alpha = angle(rng);
    const double a11 = coef(rng), a12 = coef(rng), a21 = coef(rng), a22 = coef(rng);
    const LinearField v({a11, a12, a21, a22}, SymmetricDomain::square(1.0));
    const LinearField u = total_rotate(v, alpha);
    const Decomposition parts = decompose(v);
    const double n1 = parts.saddle_weight(), n2 = parts.rotation_invariant_weight();
    const double ratio = std::min(n1, n2) / std::max(n1, n2);
    const DetectionResult r = detect(v, u, cfg);
    const bool ok = r.status == DetectionStatus::Converged;
    if (ratio < kNearDegenerateRatio) {
      ++excluded;
      excluded_converged += ok;
      continue;
    }
    ++counted;
    if (!ok) continue;
    ++converged;
    const double gap = std::abs(wrap_half_turn(r.alpha - oracle_detect(v, u)));
    if (gap > 1e-4) {
      ++off;
      if (gap > worst) worst_ratio = n1 / n2;
    }
    worst = std::max(worst, gap);
  }
  report(5, converged == counted && off == 0,
         fmt("%zu/%zu converged at eps=1e-5; %zu converged runs off the reference by > 1e-4 (worst %.3g)",
             converged, counted, off, worst));
  info(fmt("%zu trials with weight ratio < 1e-6 excluded, %zu of them converged", excluded, excluded_converged));
  if (off) info(fmt("worst offender has saddle/invariant weight ratio n1/n2 = %.3g", worst_ratio));
}

void criterion6() {
  struct Band {
    double eps, err_lo, err_hi, it_lo, it_hi;
  };
  const Band bands[] = {{0.1, 0.03, 0.3, 2, 10}, {1e-3, 5e-4, 1e-2, 20, 90}, {1e-5, 5e-6, 1e-4, 60, 250}};
  const std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  bool ok = true;
  std::vector<ExperimentReport> reports;
  std::string detail;
  for (const Band& b : bands) {
    TrialSpec spec;
    spec.trials = 100000;
    spec.eps = b.eps;
    spec.seed = 42;
    spec.threads = threads;
    const ExperimentReport r = run_campaign(spec);
    reports.push_back(r);
    const bool in = r.avg_error >= b.err_lo && r.avg_error <= b.err_hi && r.avg_iterations >= b.it_lo &&
                    r.avg_iterations <= b.it_hi;
    ok = ok && in;
    detail += fmt("eps=%g: error %.3g [%g,%g] iterations %.4g [%g,%g]%s; ", b.eps, r.avg_error, b.err_lo,
                  b.err_hi, r.avg_iterations, b.it_lo, b.it_hi, in ? "" : " OUT");
  }
  const bool monotone = reports[0].avg_error > reports[1].avg_error && reports[1].avg_error > reports[2].avg_error &&
                        reports[0].avg_iterations < reports[1].avg_iterations &&
                        reports[1].avg_iterations < reports[2].avg_iterations;
  detail += monotone ? "trends monotone" : "trends NOT monotone";
  report(6, ok && monotone, detail);
  for (const ExperimentReport& r : reports) {
    info(fmt("eps=%g converged fraction %.6f, max error %.3g, max iterations %zu; converged only: error %.3g, "
             "iterations %.4g",
             r.eps, r.converged_fraction, r.max_error, r.max_iterations, r.avg_error_converged,
             r.avg_iterations_converged));
  }
  // Sensitivity: bounding a, b, c, d instead of the matrix entries.
  for (const Band& b : bands) {
    TrialSpec spec;
    spec.trials = 100000;
    spec.eps = b.eps;
    spec.seed = 42;
    spec.threads = threads;
    spec.sampling = CoefficientSampling::Decomposition;
    const ExperimentReport r = run_campaign(spec);
    info(fmt("(a,b,c,d) sampling eps=%g: error %.3g, iterations %.4g", b.eps, r.avg_error, r.avg_iterations));
  }
}

std::size_t count_branch(const DetectionResult& r, ExceptionBranch b) {
  return static_cast<std::size_t>(
      std::count_if(r.trace.begin(), r.trace.end(), [b](const TraceEntry& t) { return t.branch == b; }));
}

void criterion7() {
  DetectorConfig cfg;
  const SymmetricDomain sq = SymmetricDomain::square(1.0);
  bool ok = true;
  std::string detail;

  const LinearField generic({1.0, 0.3, -0.2, 0.5}, sq);
  const DetectionResult aligned = detect(generic, generic, cfg);
  const std::size_t l7 = count_branch(aligned, ExceptionBranch::AlignedPerturbation);
  ok = ok && l7 == 1 && aligned.status == DetectionStatus::Converged;
  detail += fmt("aligned: perturbation x%zu; ", l7);

  const LinearField saddle = saddle_a(sq);
  const DetectionResult halving = detect(saddle, total_rotate(saddle, 0.4), cfg);
  const std::size_t l11 = count_branch(halving, ExceptionBranch::SaddleHalving);
  const double err04 = std::abs(halving.alpha - 0.4);
  ok = ok && l11 == 1 && err04 <= 10 * cfg.eps;
  detail += fmt("saddle 0.4: halving x%zu, alpha %.12g (|err| %.2g); ", l11, halving.alpha, err04);

  for (double theta : {-kPi / 2, 0.0, kPi / 2}) {
    const DetectionResult r = detect(saddle, total_rotate(saddle, theta), cfg);
    const std::size_t p = count_branch(r, ExceptionBranch::AlignedPerturbation);
    const std::size_t q = count_branch(r, ExceptionBranch::SaddleQuarterTurn);
    ok = ok && p == 1 && q == 1;
    detail += fmt("saddle %.4g: perturbation x%zu quarter-turn x%zu -> %.6g; ", theta, p, q, r.alpha);
    const double gap = std::abs(wrap_half_turn(r.alpha - oracle_detect(saddle, total_rotate(saddle, theta))));
    if (gap > 1e-6) info(fmt("theta=%g ends %.6g away from the reference mod pi (quarter-turn branch)", theta, gap));
  }
  report(7, ok, detail);
}

void criterion8() {
  std::mt19937_64 rng(8008);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto mv = [&] { return Multivector2{u(rng), u(rng), u(rng), u(rng)}; };
  double assoc = 0.0, anti = 0.0, additive = 0.0, bij = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Multivector2 x = mv(), y = mv(), z = mv();
    assoc = std::max(assoc, component_gap(gp(gp(x, y), z), gp(x, gp(y, z))));
    anti = std::max(anti, component_gap(reverse(gp(x, y)), gp(reverse(y), reverse(x))));
    const double a = u(rng), b = u(rng);
    const Multivector2 vec = Multivector2::vector(u(rng), u(rng));
    additive = std::max(additive, component_gap(apply_rotor(rotor(a), apply_rotor(rotor(b), vec)),
                                                apply_rotor(rotor(a + b), vec)));
    const Decomposition d{u(rng), u(rng), u(rng), u(rng)};
    const Decomposition back = decompose(recompose(d, SymmetricDomain::square(1.0)));
    const LinearField f({u(rng), u(rng), u(rng), u(rng)}, SymmetricDomain::square(1.0));
    const Matrix2 m = recompose(decompose(f), f.domain()).coefficients();
    bij = std::max({bij, std::abs(back.a - d.a), std::abs(back.b - d.b), std::abs(back.c - d.c),
                    std::abs(back.d - d.d), frobenius_distance(m, f.coefficients())});
  }
  report(8, std::max({assoc, anti, additive, bij}) <= 1e-12,
         fmt("1000 cases each: associativity %.2g, reversion %.2g, rotor additivity %.2g, bijection %.2g (tol 1e-12)",
             assoc, anti, additive, bij));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion7();
  criterion8();
  criterion6();
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
