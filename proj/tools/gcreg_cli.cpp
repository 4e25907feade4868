// gcreg: command-line front end for rotation detection on linear vector fields.
//
// Exit codes: 0 success (detection converged), 1 usage or input error,
// 2 detection stopped at --max-iter.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gcreg/gcreg.h"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitMaxIter = 2;

struct Failure {
  std::string message;
};

void check(gcreg_status st, const std::string& context) {
  if (st != GCREG_OK) {
    throw Failure{context + ": " + gcreg_status_string(st) + " (" + gcreg_last_error() + ")"};
  }
}

bool parse_double(const std::string& text, double& out) {
  errno = 0;
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return errno == 0 && end != text.c_str() && *end == '\0' && std::isfinite(out);
}

std::vector<double> parse_list(const std::string& text, std::size_t count, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    if (!parse_double(item, v)) throw Failure{std::string("bad number '") + item + "' in " + what};
    values.push_back(v);
  }
  if (values.size() != count) {
    throw Failure{std::string(what) + " needs " + std::to_string(count) + " comma-separated numbers"};
  }
  return values;
}

gcreg_domain parse_domain(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  double size = 1.0;
  if (colon != std::string::npos && !parse_double(text.substr(colon + 1), size)) {
    throw Failure{"bad domain size in '" + text + "'"};
  }
  if (kind == "square") return {GCREG_DOMAIN_SQUARE, size};
  if (kind == "disk") return {GCREG_DOMAIN_DISK, size};
  throw Failure{"unknown domain '" + text + "' (use square:L or disk:R)"};
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Failure{"cannot read " + path};
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os || !(os << text) || !os.flush()) throw Failure{"cannot write " + path};
}

std::string field_json(const gcreg_field& f) {
  size_t needed = 0;
  check(gcreg_field_to_json(&f, nullptr, 0, &needed), "field");
  std::string buf(needed, '\0');
  check(gcreg_field_to_json(&f, buf.data(), buf.size(), &needed), "field");
  buf.resize(needed - 1);
  return buf;
}

std::string multivector_json(const gcreg_multivector& m) {
  size_t needed = 0;
  check(gcreg_multivector_to_json(&m, nullptr, 0, &needed), "multivector");
  std::string buf(needed, '\0');
  check(gcreg_multivector_to_json(&m, buf.data(), buf.size(), &needed), "multivector");
  buf.resize(needed - 1);
  return buf;
}

double degrees(double radians) { return radians * 180.0 / std::numbers::pi; }

std::string angle_text(double radians) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12g rad (%.10g deg)", radians, degrees(radians));
  return buf;
}

// --field a11,a12,a21,a22 [--domain ...] or --field-file path.
struct FieldSource {
  std::string coefficients;
  std::string file;
  std::string domain = "square:1";

  void attach(CLI::App* app, const std::string& name, const std::string& what) {
    auto* inline_opt = app->add_option("--" + name, coefficients, what + " as a11,a12,a21,a22");
    auto* file_opt = app->add_option("--" + name + "-file", file, what + " as a JSON file");
    inline_opt->excludes(file_opt);
  }

  bool given() const { return !coefficients.empty() || !file.empty(); }

  gcreg_field load(const char* what) const {
    gcreg_field f{};
    if (!file.empty()) {
      check(gcreg_field_from_json(read_file(file).c_str(), &f), file);
      return f;
    }
    if (coefficients.empty()) throw Failure{std::string("missing ") + what};
    const std::vector<double> c = parse_list(coefficients, 4, what);
    return {c[0], c[1], c[2], c[3], parse_domain(domain)};
  }
};

enum class Format { Json, Csv, Human };

void add_format(CLI::App* app, std::string& format) {
  app->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv", "human"}))
      ->capture_default_str();
  app->add_flag_callback("--json", [&format] { format = "json"; }, "shorthand for --format json");
}

Format to_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  return Format::Human;
}

const char* status_name(gcreg_detection_status s) {
  switch (s) {
    case GCREG_CONVERGED: return "converged";
    case GCREG_MAX_ITER_EXCEEDED: return "max_iter_exceeded";
    case GCREG_DEGENERATE_ZERO_FIELD: return "degenerate_zero_field";
  }
  return "unknown";
}

const char* branch_name(gcreg_branch b) {
  switch (b) {
    case GCREG_BRANCH_NONE: return "none";
    case GCREG_BRANCH_ALIGNED_PERTURBATION: return "aligned_perturbation";
    case GCREG_BRANCH_SADDLE_HALVING: return "saddle_halving";
    case GCREG_BRANCH_SADDLE_QUARTER_TURN: return "saddle_quarter_turn";
  }
  return "unknown";
}

struct DetectOptions {
  FieldSource field;
  FieldSource pattern;
  std::optional<double> alpha;
  double eps = 1e-5;
  std::size_t max_iter = 10000;
  double zero_tol = 1e-9;
  bool trace = false;
  std::string format = "human";
};

int run_detect(const DetectOptions& o) {
  const gcreg_field v = o.field.load("--field");
  gcreg_field u{};
  if (o.pattern.given()) {
    u = o.pattern.load("--pattern");
  } else if (o.alpha) {
    check(gcreg_rotate(&v, GCREG_ROTATE_TOTAL, *o.alpha, &u), "rotate");
  } else {
    throw Failure{"detect needs --alpha or --pattern/--pattern-file"};
  }
  const gcreg_detector_config cfg{o.eps, o.max_iter, o.zero_tol};
  gcreg_detection h = nullptr;
  check(gcreg_detect(&v, &u, &cfg, &h), "detect");
  std::unique_ptr<gcreg_detection_s, decltype(&gcreg_detection_destroy)> guard(h, gcreg_detection_destroy);

  double alpha = 0.0;
  std::size_t iterations = 0;
  gcreg_detection_status status = GCREG_CONVERGED;
  gcreg_field corrected{};
  check(gcreg_detection_alpha(h, &alpha), "detect");
  check(gcreg_detection_iterations(h, &iterations), "detect");
  check(gcreg_detection_status_of(h, &status), "detect");
  check(gcreg_detection_corrected(h, &corrected), "detect");

  switch (to_format(o.format)) {
    case Format::Json: {
      const char* text = nullptr;
      check(gcreg_detection_json(h, o.trace ? 1 : 0, &text), "detect");
      std::cout << text << '\n';
      break;
    }
    case Format::Csv: {
      std::printf("alpha,iterations,status\n%.17g,%zu,%s\n", alpha, iterations, status_name(status));
      if (o.trace) {
        std::size_t n = 0;
        check(gcreg_detection_trace_length(h, &n), "detect");
        std::printf("iter,phi,alpha,exception,branch\n");
        for (std::size_t k = 0; k < n; ++k) {
          gcreg_trace_entry t{};
          check(gcreg_detection_trace_entry(h, k, &t), "detect");
          std::printf("%zu,%.17g,%.17g,%d,%s\n", t.iter, t.phi, t.alpha, t.exception, branch_name(t.branch));
        }
      }
      break;
    }
    case Format::Human: {
      std::cout << "misalignment: " << angle_text(alpha) << '\n'
                << "iterations:   " << iterations << '\n'
                << "status:       " << status_name(status) << '\n';
      std::printf("corrected:    a11=%.10g a12=%.10g a21=%.10g a22=%.10g\n", corrected.a11,
                  corrected.a12, corrected.a21, corrected.a22);
      if (o.trace) {
        std::size_t n = 0;
        check(gcreg_detection_trace_length(h, &n), "detect");
        for (std::size_t k = 0; k < n; ++k) {
          gcreg_trace_entry t{};
          check(gcreg_detection_trace_entry(h, k, &t), "detect");
          std::cout << "  #" << t.iter << " phi=" << angle_text(t.phi) << " alpha=" << angle_text(t.alpha);
          if (t.exception) std::cout << " [" << branch_name(t.branch) << ']';
          std::cout << '\n';
        }
      }
      break;
    }
  }
  return status == GCREG_CONVERGED ? kExitOk : kExitMaxIter;
}

int run_decompose(const FieldSource& field, const std::string& format) {
  const gcreg_field f = field.load("--field");
  gcreg_decomposition d{};
  check(gcreg_decompose(&f, &d), "decompose");
  switch (to_format(format)) {
    case Format::Json: {
      size_t needed = 0;
      check(gcreg_decomposition_to_json(&d, nullptr, 0, &needed), "decompose");
      std::string buf(needed, '\0');
      check(gcreg_decomposition_to_json(&d, buf.data(), buf.size(), &needed), "decompose");
      std::cout << buf.c_str() << '\n';
      break;
    }
    case Format::Csv: std::printf("a,b,c,d\n%.17g,%.17g,%.17g,%.17g\n", d.a, d.b, d.c, d.d); break;
    case Format::Human:
      std::printf("saddle a: %.12g\nsaddle b: %.12g\nsource c: %.12g\nvortex d: %.12g\n", d.a, d.b, d.c, d.d);
      break;
  }
  return kExitOk;
}

int run_recompose(const std::string& coeffs, const std::string& file, const std::string& domain,
                  const std::string& format) {
  gcreg_decomposition d{};
  if (!file.empty()) {
    check(gcreg_decomposition_from_json(read_file(file).c_str(), &d), file);
  } else if (!coeffs.empty()) {
    const std::vector<double> c = parse_list(coeffs, 4, "--coeffs");
    d = {c[0], c[1], c[2], c[3]};
  } else {
    throw Failure{"recompose needs --coeffs or --decomposition-file"};
  }
  const gcreg_domain dom = parse_domain(domain);
  gcreg_field f{};
  check(gcreg_recompose(&d, &dom, &f), "recompose");
  switch (to_format(format)) {
    case Format::Json: std::cout << field_json(f) << '\n'; break;
    case Format::Csv: std::printf("a11,a12,a21,a22\n%.17g,%.17g,%.17g,%.17g\n", f.a11, f.a12, f.a21, f.a22); break;
    case Format::Human: std::printf("((%.12g, %.12g), (%.12g, %.12g))\n", f.a11, f.a12, f.a21, f.a22); break;
  }
  return kExitOk;
}

struct CorrelateOptions {
  FieldSource field;
  FieldSource other;
  std::optional<double> alpha;
  std::string rotation = "total";
  std::string at;
  std::string format = "human";
};

int run_correlate(const CorrelateOptions& o) {
  const gcreg_field v = o.field.load("--field");
  gcreg_field u{};
  if (o.other.given()) {
    u = o.other.load("--other");
  } else if (o.alpha) {
    const gcreg_rotation_kind kind = o.rotation == "outer"   ? GCREG_ROTATE_OUTER
                                     : o.rotation == "inner" ? GCREG_ROTATE_INNER
                                                             : GCREG_ROTATE_TOTAL;
    check(gcreg_rotate(&v, kind, *o.alpha, &u), "rotate");
  } else {
    u = v;
  }
  gcreg_multivector m{};
  if (!o.at.empty()) {
    const std::vector<double> x = parse_list(o.at, 2, "--at");
    check(gcreg_product_at(&u, &v, x[0], x[1], &m), "product");
  } else {
    check(gcreg_correlate(&u, &v, &m), "correlate");
  }
  const double magnitude = std::hypot(m.s, m.e12);
  std::optional<double> argument;
  if (magnitude > 0.0) {
    double a = 0.0;
    check(gcreg_spinor_arg(&m, &a), "argument");
    argument = a;
  }
  switch (to_format(o.format)) {
    case Format::Json: {
      json j = {{"value", json::parse(multivector_json(m))}, {"magnitude", magnitude}};
      j["argument"] = argument ? json(*argument) : json(nullptr);
      std::cout << j.dump() << '\n';
      break;
    }
    case Format::Csv:
      std::printf("s,e1,e2,e12,magnitude,argument\n%.17g,%.17g,%.17g,%.17g,%.17g,", m.s, m.e1, m.e2,
                  m.e12, magnitude);
      if (argument) std::printf("%.17g", *argument);
      std::printf("\n");
      break;
    case Format::Human:
      std::printf("value:     %.12g + %.12g e1 + %.12g e2 + %.12g e12\n", m.s, m.e1, m.e2, m.e12);
      std::printf("magnitude: %.12g\n", magnitude);
      std::cout << "argument:  " << (argument ? angle_text(*argument) : std::string("undefined")) << '\n';
      break;
  }
  return kExitOk;
}

struct SampleOptions {
  FieldSource field;
  std::string preset;
  std::optional<double> alpha;
  std::size_t n = 32;
  std::string out;
  std::string rotated_out;
};

gcreg_sampled_field sample_one(const SampleOptions& o, double angle) {
  gcreg_sampled_field h = nullptr;
  if (o.preset == "counterexample") {
    const gcreg_domain dom = o.field.domain == "square:1" ? gcreg_domain{GCREG_DOMAIN_DISK, 1.0}
                                                          : parse_domain(o.field.domain);
    check(gcreg_sample_counterexample(&dom, angle, o.n, &h), "sample");
    return h;
  }
  gcreg_field f{};
  if (!o.preset.empty()) {
    const gcreg_domain dom = parse_domain(o.field.domain);
    if (o.preset == "saddle-a") f = {1, 0, 0, -1, dom};
    else if (o.preset == "saddle-b") f = {0, 1, 1, 0, dom};
    else if (o.preset == "source") f = {1, 0, 0, 1, dom};
    else if (o.preset == "vortex") f = {0, 1, -1, 0, dom};
    else throw Failure{"unknown preset '" + o.preset + "'"};
  } else {
    f = o.field.load("--field");
  }
  if (angle != 0.0) {
    gcreg_field r{};
    check(gcreg_rotate(&f, GCREG_ROTATE_TOTAL, angle, &r), "rotate");
    f = r;
  }
  check(gcreg_sample_field(&f, o.n, &h), "sample");
  return h;
}

int run_sample(const SampleOptions& o) {
  if (!o.preset.empty() && o.field.given()) throw Failure{"--preset and --field are exclusive"};
  if (!o.rotated_out.empty() && !o.alpha) throw Failure{"--rotated-out needs --alpha"};
  auto write = [&](double angle, const std::string& path) {
    gcreg_sampled_field h = sample_one(o, angle);
    std::unique_ptr<gcreg_sampled_field_s, decltype(&gcreg_sampled_destroy)> guard(h, gcreg_sampled_destroy);
    check(gcreg_sampled_write_csv(h, path.c_str()), "sample");
  };
  // Without --rotated-out, --alpha rotates the single output.
  if (o.rotated_out.empty()) {
    write(o.alpha.value_or(0.0), o.out);
  } else {
    write(0.0, o.out);
    write(*o.alpha, o.rotated_out);
  }
  return kExitOk;
}

struct ExperimentOptions {
  std::size_t trials = 1000;
  double eps = 1e-3;
  std::uint64_t seed = 42;
  double coeff_bound = 1.0;
  std::string domain = "square:1";
  std::string sampling = "matrix";
  std::size_t max_iter = 10000;
  std::size_t threads = 1;
  std::string out;
  std::string format = "json";
};

int run_experiment(const ExperimentOptions& o) {
  gcreg_trial_spec spec = gcreg_trial_spec_default();
  spec.trials = o.trials;
  spec.eps = o.eps;
  spec.seed = o.seed;
  spec.coeff_bound = o.coeff_bound;
  spec.domain = parse_domain(o.domain);
  spec.sampling = o.sampling == "decomposition" ? GCREG_SAMPLE_DECOMPOSITION : GCREG_SAMPLE_MATRIX;
  spec.max_iter = o.max_iter;
  spec.threads = o.threads;
  gcreg_report h = nullptr;
  check(gcreg_run_campaign(&spec, &h), "experiment");
  std::unique_ptr<gcreg_report_s, decltype(&gcreg_report_destroy)> guard(h, gcreg_report_destroy);

  std::string text;
  switch (to_format(o.format)) {
    case Format::Json: {
      const char* j = nullptr;
      check(gcreg_report_json(h, &j), "experiment");
      text = std::string(j) + '\n';
      break;
    }
    case Format::Csv: {
      const char* header = nullptr;
      const char* row = nullptr;
      check(gcreg_report_csv(h, &header, &row), "experiment");
      text = std::string(header) + '\n' + row + '\n';
      break;
    }
    case Format::Human: {
      gcreg_report_summary r{};
      check(gcreg_report_get(h, &r), "experiment");
      char buf[1024];
      std::snprintf(buf, sizeof buf,
                    "eps                 %g\n"
                    "trials              %zu (seed %llu)\n"
                    "average error       %.6g\n"
                    "maximal error       %.6g\n"
                    "average iterations  %.6g\n"
                    "converged           %zu (%.6g)\n"
                    "max_iter exceeded   %zu\n"
                    "degenerate          %zu\n"
                    "near-degenerate     %zu\n",
                    r.eps, r.trials, static_cast<unsigned long long>(r.seed), r.avg_error, r.max_error,
                    r.avg_iterations, r.converged, r.converged_fraction, r.max_iter_exceeded, r.degenerate,
                    r.near_degenerate);
      text = buf;
      break;
    }
  }
  write_text(o.out, text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Total-rotation detection for 2D linear vector fields via geometric correlation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gcreg_version()));

  DetectOptions det;
  auto* detect = app.add_subcommand("detect", "recover the misalignment angle of a rotated pattern");
  det.field.attach(detect, "field", "reference field");
  detect->add_option("--domain", det.field.domain, "domain for --field: square:L or disk:R")->capture_default_str();
  det.pattern.attach(detect, "pattern", "rotated pattern");
  detect->add_option("--alpha", det.alpha, "build the pattern by totally rotating the field (radians)");
  detect->add_option("--eps", det.eps, "accuracy on the correction step")->capture_default_str();
  detect->add_option("--max-iter", det.max_iter, "iteration cap")->capture_default_str();
  detect->add_option("--zero-tol", det.zero_tol, "tolerance for exact-zero tests")->capture_default_str();
  detect->add_flag("--trace", det.trace, "include the per-iteration trace");
  add_format(detect, det.format);

  FieldSource dec_field;
  std::string dec_format = "json";
  auto* decompose = app.add_subcommand("decompose", "saddle/source/vortex coefficients of a field");
  dec_field.attach(decompose, "field", "field");
  decompose->add_option("--domain", dec_field.domain, "domain for --field")->capture_default_str();
  add_format(decompose, dec_format);

  std::string rec_coeffs;
  std::string rec_file;
  std::string rec_domain = "square:1";
  std::string rec_format = "json";
  auto* recompose = app.add_subcommand("recompose", "field from saddle/source/vortex coefficients");
  auto* rc = recompose->add_option("--coeffs", rec_coeffs, "a,b,c,d");
  recompose->add_option("--decomposition-file", rec_file, "JSON {\"a\":..,\"b\":..,\"c\":..,\"d\":..}")->excludes(rc);
  recompose->add_option("--domain", rec_domain, "domain of the result")->capture_default_str();
  add_format(recompose, rec_format);

  CorrelateOptions cor;
  auto* correlate = app.add_subcommand("correlate", "geometric correlation at the origin");
  cor.field.attach(correlate, "field", "reference field v");
  correlate->add_option("--domain", cor.field.domain, "domain for --field and --other")->capture_default_str();
  cor.other.attach(correlate, "other", "second field u");
  correlate->add_option("--alpha", cor.alpha, "build u by rotating v (radians)");
  correlate->add_option("--rotation", cor.rotation, "rotation kind for --alpha")
      ->check(CLI::IsMember({"total", "outer", "inner"}))
      ->capture_default_str();
  correlate->add_option("--at", cor.at, "pointwise product at x1,x2 instead of the integral");
  add_format(correlate, cor.format);

  SampleOptions smp;
  auto* sample = app.add_subcommand("sample", "write cell-centre samples as CSV (x1,x2,v1,v2,inside)");
  smp.field.attach(sample, "field", "field");
  sample->add_option("--domain", smp.field.domain, "domain")->capture_default_str();
  sample->add_option("--preset", smp.preset, "counterexample, saddle-a, saddle-b, source or vortex");
  sample->add_option("--alpha", smp.alpha, "total rotation angle (radians)");
  sample->add_option("--n", smp.n, "grid resolution per axis")->capture_default_str();
  sample->add_option("--out", smp.out, "output CSV path")->required();
  sample->add_option("--rotated-out", smp.rotated_out, "also write the copy rotated by --alpha here");

  ExperimentOptions exp;
  auto* experiment = app.add_subcommand("experiment", "randomised detection campaign");
  experiment->add_option("--trials", exp.trials, "number of trials")->capture_default_str();
  experiment->add_option("--eps", exp.eps, "detector accuracy")->capture_default_str();
  experiment->add_option("--seed", exp.seed, "PRNG seed")->capture_default_str();
  experiment->add_option("--coeff-bound", exp.coeff_bound, "bound on random coefficients")->capture_default_str();
  experiment->add_option("--domain", exp.domain, "domain")->capture_default_str();
  experiment->add_option("--sampling", exp.sampling, "what the bound applies to")
      ->check(CLI::IsMember({"matrix", "decomposition"}))
      ->capture_default_str();
  experiment->add_option("--max-iter", exp.max_iter, "iteration cap per trial")->capture_default_str();
  experiment->add_option("--threads", exp.threads, "worker threads")->capture_default_str();
  experiment->add_option("--out", exp.out, "output path (stdout if omitted)");
  add_format(experiment, exp.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*detect) return run_detect(det);
    if (*decompose) return run_decompose(dec_field, dec_format);
    if (*recompose) return run_recompose(rec_coeffs, rec_file, rec_domain, rec_format);
    if (*correlate) return run_correlate(cor);
    if (*sample) return run_sample(smp);
    if (*experiment) return run_experiment(exp);
  } catch (const Failure& f) {
    std::cerr << "gcreg: " << f.message << '\n';
    return kExitError;
  }
  return kExitError;
}
