#include "gcreg/gcreg.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <optional>
#include <string>

#include "gcreg/clifford2.hpp"
#include "gcreg/correlation.hpp"
#include "gcreg/error.hpp"
#include "gcreg/experiments.hpp"
#include "gcreg/fields.hpp"
#include "gcreg/registration.hpp"
#include "gcreg/serialize.hpp"

struct gcreg_sampled_field_s {
  gcreg::SampledField field;
};

struct gcreg_detection_s {
  double alpha = 0.0;
  std::size_t iterations = 0;
  gcreg::DetectionStatus status = gcreg::DetectionStatus::Converged;
  std::vector<gcreg::TraceEntry> trace;
  std::optional<gcreg::DetectionResult> linear;
  std::string json;
};

struct gcreg_report_s {
  gcreg::ExperimentReport report;
  std::string json;
  std::string header;
  std::string row;
};

namespace {

thread_local std::string last_error;

gcreg_status status_of(gcreg::ErrorCode code) {
  using gcreg::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return GCREG_ERR_INVALID_ARGUMENT;
    case ErrorCode::ContractViolation: return GCREG_ERR_CONTRACT_VIOLATION;
    case ErrorCode::DegenerateSpinor: return GCREG_ERR_DEGENERATE_SPINOR;
    case ErrorCode::DegenerateZeroField: return GCREG_ERR_DEGENERATE_ZERO_FIELD;
    case ErrorCode::DomainMismatch: return GCREG_ERR_DOMAIN_MISMATCH;
    case ErrorCode::ShapeMismatch: return GCREG_ERR_SHAPE_MISMATCH;
    case ErrorCode::Io: return GCREG_ERR_IO;
  }
  return GCREG_ERR_INTERNAL;
}

struct NullArgument {};
struct BufferTooSmall {};

template <typename T>
T& deref(T* p) {
  if (p == nullptr) throw NullArgument{};
  return *p;
}

template <typename F>
gcreg_status try_(F&& f) {
  try {
    f();
    last_error.clear();
    return GCREG_OK;
  } catch (const gcreg::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const BufferTooSmall&) {
    last_error = "output buffer too small";
    return GCREG_ERR_BUFFER_TOO_SMALL;
  } catch (const NullArgument&) {
    last_error = "null pointer argument";
    return GCREG_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GCREG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GCREG_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return GCREG_ERR_INTERNAL;
  }
}

gcreg::Multivector2 from_c(const gcreg_multivector& m) { return {m.s, m.e1, m.e2, m.e12}; }
gcreg_multivector to_c(const gcreg::Multivector2& m) { return {m.s, m.x, m.y, m.b}; }

gcreg::SymmetricDomain from_c(const gcreg_domain& d) {
  switch (d.kind) {
    case GCREG_DOMAIN_SQUARE: return gcreg::SymmetricDomain::square(d.size);
    case GCREG_DOMAIN_DISK: return gcreg::SymmetricDomain::disk(d.size);
  }
  throw gcreg::Error(gcreg::ErrorCode::InvalidArgument, "unknown domain kind");
}

gcreg_domain to_c(const gcreg::SymmetricDomain& d) {
  return {d.kind() == gcreg::DomainKind::Square ? GCREG_DOMAIN_SQUARE : GCREG_DOMAIN_DISK, d.size()};
}

gcreg::LinearField from_c(const gcreg_field& f) {
  return {{f.a11, f.a12, f.a21, f.a22}, from_c(f.domain)};
}

gcreg_field to_c(const gcreg::LinearField& f) {
  const gcreg::Matrix2& m = f.coefficients();
  return {m.a11, m.a12, m.a21, m.a22, to_c(f.domain())};
}

gcreg::DetectorConfig from_c(const gcreg_detector_config* cfg) {
  gcreg::DetectorConfig out;
  if (cfg != nullptr) {
    out.eps = cfg->eps;
    out.max_iter = cfg->max_iter;
    out.zero_tol = cfg->zero_tol;
  }
  return out;
}

gcreg_detection_status to_c(gcreg::DetectionStatus s) {
  switch (s) {
    case gcreg::DetectionStatus::Converged: return GCREG_CONVERGED;
    case gcreg::DetectionStatus::MaxIterExceeded: return GCREG_MAX_ITER_EXCEEDED;
    case gcreg::DetectionStatus::DegenerateZeroField: return GCREG_DEGENERATE_ZERO_FIELD;
  }
  return GCREG_DEGENERATE_ZERO_FIELD;
}

gcreg_branch to_c(gcreg::ExceptionBranch b) {
  switch (b) {
    case gcreg::ExceptionBranch::None: return GCREG_BRANCH_NONE;
    case gcreg::ExceptionBranch::AlignedPerturbation: return GCREG_BRANCH_ALIGNED_PERTURBATION;
    case gcreg::ExceptionBranch::SaddleHalving: return GCREG_BRANCH_SADDLE_HALVING;
    case gcreg::ExceptionBranch::SaddleQuarterTurn: return GCREG_BRANCH_SADDLE_QUARTER_TURN;
  }
  return GCREG_BRANCH_NONE;
}

// Copies `text` into a caller buffer; buf == nullptr only reports the size.
void copy_out(const std::string& text, char* buf, size_t cap, size_t* needed) {
  const size_t size = text.size() + 1;
  if (needed != nullptr) *needed = size;
  if (buf == nullptr) return;
  if (cap < size) throw BufferTooSmall{};
  std::memcpy(buf, text.c_str(), size);
}

}  // namespace

extern "C" {

const char* gcreg_version(void) { return "0.1.0"; }

const char* gcreg_status_string(gcreg_status status) {
  switch (status) {
    case GCREG_OK: return "ok";
    case GCREG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GCREG_ERR_CONTRACT_VIOLATION: return "contract violation";
    case GCREG_ERR_DEGENERATE_SPINOR: return "degenerate spinor";
    case GCREG_ERR_DEGENERATE_ZERO_FIELD: return "degenerate zero field";
    case GCREG_ERR_DOMAIN_MISMATCH: return "domain mismatch";
    case GCREG_ERR_SHAPE_MISMATCH: return "shape mismatch";
    case GCREG_ERR_IO: return "i/o error";
    case GCREG_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case GCREG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* gcreg_last_error(void) { return last_error.c_str(); }

gcreg_status gcreg_gp(const gcreg_multivector* l, const gcreg_multivector* r, gcreg_multivector* out) {
  return try_([&] { deref(out) = to_c(gcreg::gp(from_c(deref(l)), from_c(deref(r)))); });
}

gcreg_status gcreg_reverse(const gcreg_multivector* m, gcreg_multivector* out) {
  return try_([&] { deref(out) = to_c(gcreg::reverse(from_c(deref(m)))); });
}

gcreg_status gcreg_apply_rotor(double angle, const gcreg_multivector* v, gcreg_multivector* out) {
  return try_([&] { deref(out) = to_c(gcreg::apply_rotor(gcreg::Rotor(angle), from_c(deref(v)))); });
}

gcreg_status gcreg_spinor_arg(const gcreg_multivector* m, double* out) {
  return try_([&] { deref(out) = gcreg::spinor_arg(from_c(deref(m))); });
}

gcreg_status gcreg_multivector_to_json(const gcreg_multivector* m, char* buf, size_t cap, size_t* needed) {
  return try_([&] { copy_out(gcreg::to_json(from_c(deref(m))), buf, cap, needed); });
}

gcreg_status gcreg_field_eval(const gcreg_field* f, double x1, double x2, gcreg_multivector* out) {
  return try_([&] { deref(out) = to_c(gcreg::eval(from_c(deref(f)), {x1, x2})); });
}

gcreg_status gcreg_decompose(const gcreg_field* f, gcreg_decomposition* out) {
  return try_([&] {
    const gcreg::Decomposition d = gcreg::decompose(from_c(deref(f)));
    deref(out) = {d.a, d.b, d.c, d.d};
  });
}

gcreg_status gcreg_recompose(const gcreg_decomposition* d, const gcreg_domain* domain, gcreg_field* out) {
  return try_([&] {
    const gcreg_decomposition& p = deref(d);
    deref(out) = to_c(gcreg::recompose({p.a, p.b, p.c, p.d}, from_c(deref(domain))));
  });
}

gcreg_status gcreg_rotate(const gcreg_field* f, gcreg_rotation_kind kind, double angle, gcreg_field* out) {
  return try_([&] {
    const gcreg::LinearField field = from_c(deref(f));
    switch (kind) {
      case GCREG_ROTATE_TOTAL: deref(out) = to_c(gcreg::total_rotate(field, angle)); return;
      case GCREG_ROTATE_OUTER: deref(out) = to_c(gcreg::outer_rotate(field, angle)); return;
      case GCREG_ROTATE_INNER: deref(out) = to_c(gcreg::inner_rotate(field, angle)); return;
    }
    throw gcreg::Error(gcreg::ErrorCode::InvalidArgument, "unknown rotation kind");
  });
}

gcreg_status gcreg_field_from_json(const char* text, gcreg_field* out) {
  return try_([&] { deref(out) = to_c(gcreg::field_from_json(&deref(text))); });
}

gcreg_status gcreg_field_to_json(const gcreg_field* f, char* buf, size_t cap, size_t* needed) {
  return try_([&] { copy_out(gcreg::to_json(from_c(deref(f))), buf, cap, needed); });
}

gcreg_status gcreg_decomposition_from_json(const char* text, gcreg_decomposition* out) {
  return try_([&] {
    const gcreg::Decomposition d = gcreg::decomposition_from_json(&deref(text));
    deref(out) = {d.a, d.b, d.c, d.d};
  });
}

gcreg_status gcreg_decomposition_to_json(const gcreg_decomposition* d, char* buf, size_t cap, size_t* needed) {
  return try_([&] {
    const gcreg_decomposition& p = deref(d);
    copy_out(gcreg::to_json(gcreg::Decomposition{p.a, p.b, p.c, p.d}), buf, cap, needed);
  });
}

gcreg_status gcreg_second_moment(const gcreg_domain* domain, double* out) {
  return try_([&] { deref(out) = gcreg::second_moment(from_c(deref(domain))); });
}

gcreg_status gcreg_correlate(const gcreg_field* u, const gcreg_field* v, gcreg_multivector* out) {
  return try_([&] { deref(out) = to_c(gcreg::correlate_linear(from_c(deref(u)), from_c(deref(v))).value); });
}

gcreg_status gcreg_product_at(const gcreg_field* u, const gcreg_field* v, double x1, double x2,
                              gcreg_multivector* out) {
  return try_([&] { deref(out) = to_c(gcreg::product_at(from_c(deref(u)), from_c(deref(v)), {x1, x2})); });
}

gcreg_status gcreg_sample_field(const gcreg_field* f, size_t n, gcreg_sampled_field* out) {
  return try_([&] {
    gcreg_sampled_field& slot = deref(out);
    slot = new gcreg_sampled_field_s{gcreg::sample(from_c(deref(f)), n)};
  });
}

gcreg_status gcreg_sample_counterexample(const gcreg_domain* domain, double angle, size_t n,
                                         gcreg_sampled_field* out) {
  return try_([&] {
    gcreg_sampled_field& slot = deref(out);
    gcreg::AnalyticField field = gcreg::counterexample_field();
    if (angle != 0.0) field = gcreg::total_rotate(std::move(field), angle);
    slot = new gcreg_sampled_field_s{gcreg::sample(field, from_c(deref(domain)), n)};
  });
}

gcreg_status gcreg_sampled_resolution(gcreg_sampled_field h, size_t* n) {
  return try_([&] { deref(n) = deref(h).field.n; });
}

gcreg_status gcreg_sampled_cell(gcreg_sampled_field h, size_t i, size_t j, double* x1, double* x2,
                                double* v1, double* v2, int* inside) {
  return try_([&] {
    const gcreg::SampledField& f = deref(h).field;
    if (i >= f.n || j >= f.n) {
      throw gcreg::Error(gcreg::ErrorCode::InvalidArgument, "cell index out of range");
    }
    const gcreg::Vec2 p = f.cell_center(i, j);
    if (x1) *x1 = p.x1;
    if (x2) *x2 = p.x2;
    if (v1) *v1 = f.at(i, j).x1;
    if (v2) *v2 = f.at(i, j).x2;
    if (inside) *inside = f.inside(i, j) ? 1 : 0;
  });
}

gcreg_status gcreg_sampled_write_csv(gcreg_sampled_field h, const char* path) {
  return try_([&] {
    const std::string text = gcreg::to_csv(deref(h).field);
    std::ofstream os(&deref(path), std::ios::binary);
    if (!os) throw gcreg::Error(gcreg::ErrorCode::Io, std::string("cannot open ") + path);
    os << text;
    if (!os.flush()) throw gcreg::Error(gcreg::ErrorCode::Io, std::string("cannot write ") + path);
  });
}

gcreg_status gcreg_correlate_sampled(gcreg_sampled_field u, gcreg_sampled_field v, gcreg_multivector* out) {
  return try_([&] { deref(out) = to_c(gcreg::correlate_sampled(deref(u).field, deref(v).field).value); });
}

void gcreg_sampled_destroy(gcreg_sampled_field h) { delete h; }

gcreg_detector_config gcreg_detector_config_default(void) {
  const gcreg::DetectorConfig d;
  return {d.eps, d.max_iter, d.zero_tol};
}

gcreg_status gcreg_detect(const gcreg_field* v, const gcreg_field* u, const gcreg_detector_config* cfg,
                          gcreg_detection* out) {
  return try_([&] {
    gcreg_detection& slot = deref(out);
    gcreg::DetectionResult r = gcreg::detect(from_c(deref(v)), from_c(deref(u)), from_c(cfg));
    auto* h = new gcreg_detection_s;
    h->alpha = r.alpha;
    h->iterations = r.iterations;
    h->status = r.status;
    h->trace = r.trace;
    h->linear = std::move(r);
    slot = h;
  });
}

gcreg_status gcreg_detect_sampled(gcreg_sampled_field v, gcreg_sampled_field u,
                                  const gcreg_detector_config* cfg, gcreg_detection* out) {
  return try_([&] {
    gcreg_detection& slot = deref(out);
    gcreg::SampledDetectionResult r = gcreg::detect(deref(v).field, deref(u).field, from_c(cfg));
    auto* h = new gcreg_detection_s;
    h->alpha = r.alpha;
    h->iterations = r.iterations;
    h->status = r.status;
    h->trace = std::move(r.trace);
    slot = h;
  });
}

gcreg_status gcreg_detection_alpha(gcreg_detection h, double* out) {
  return try_([&] { deref(out) = deref(h).alpha; });
}

gcreg_status gcreg_detection_iterations(gcreg_detection h, size_t* out) {
  return try_([&] { deref(out) = deref(h).iterations; });
}

gcreg_status gcreg_detection_status_of(gcreg_detection h, gcreg_detection_status* out) {
  return try_([&] { deref(out) = to_c(deref(h).status); });
}

gcreg_status gcreg_detection_corrected(gcreg_detection h, gcreg_field* out) {
  return try_([&] {
    const gcreg_detection_s& d = deref(h);
    if (!d.linear) {
      throw gcreg::Error(gcreg::ErrorCode::InvalidArgument, "sampled detections carry no corrected pattern");
    }
    deref(out) = to_c(d.linear->corrected);
  });
}

gcreg_status gcreg_detection_trace_length(gcreg_detection h, size_t* out) {
  return try_([&] { deref(out) = deref(h).trace.size(); });
}

gcreg_status gcreg_detection_trace_entry(gcreg_detection h, size_t index, gcreg_trace_entry* out) {
  return try_([&] {
    const gcreg_detection_s& d = deref(h);
    if (index >= d.trace.size()) {
      throw gcreg::Error(gcreg::ErrorCode::InvalidArgument, "trace index out of range");
    }
    const gcreg::TraceEntry& t = d.trace[index];
    deref(out) = {t.iter, t.phi, t.alpha_after, t.exception ? 1 : 0, to_c(t.branch)};
  });
}

gcreg_status gcreg_detection_json(gcreg_detection h, int include_trace, const char** out) {
  return try_([&] {
    gcreg_detection_s& d = deref(h);
    const char*& slot = deref(out);
    if (d.linear) {
      d.json = gcreg::to_json(*d.linear, include_trace != 0);
    } else {
      gcreg::DetectionResult r{.alpha = d.alpha,
                               .iterations = d.iterations,
                               .trace = d.trace,
                               .status = d.status,
                               .corrected = gcreg::LinearField({}, gcreg::SymmetricDomain::square(1.0))};
      d.json = gcreg::to_json(r, include_trace != 0);
    }
    slot = d.json.c_str();
  });
}

void gcreg_detection_destroy(gcreg_detection h) { delete h; }

gcreg_status gcreg_phi_of_alpha(const gcreg_field* v, double alpha, double* out) {
  return try_([&] { deref(out) = gcreg::phi_of_alpha(from_c(deref(v)), alpha); });
}

gcreg_status gcreg_oracle_detect(const gcreg_field* v, const gcreg_field* u, size_t grid, double* out) {
  return try_([&] {
    deref(out) = gcreg::oracle_detect(from_c(deref(v)), from_c(deref(u)), grid == 0 ? 20001 : grid);
  });
}

gcreg_status gcreg_detect_known_pattern(const gcreg_field* pattern, const gcreg_field* u, double* out) {
  return try_([&] { deref(out) = gcreg::detect_known_pattern(from_c(deref(pattern)), from_c(deref(u))); });
}

gcreg_trial_spec gcreg_trial_spec_default(void) {
  const gcreg::TrialSpec d;
  return {d.trials, d.eps, d.seed, d.coeff_bound, to_c(d.domain), GCREG_SAMPLE_MATRIX,
          d.max_iter, d.threads};
}

gcreg_status gcreg_run_trial(const gcreg_field* v, double alpha, double eps, size_t max_iter,
                             gcreg_trial_outcome* out) {
  return try_([&] {
    const gcreg::TrialOutcome t = gcreg::run_trial(from_c(deref(v)), alpha, eps, max_iter);
    deref(out) = {t.alpha_true, t.alpha_hat, t.error, t.iterations, to_c(t.status), t.weight_ratio};
  });
}

gcreg_status gcreg_run_campaign(const gcreg_trial_spec* spec, gcreg_report* out) {
  return try_([&] {
    gcreg_report& slot = deref(out);
    const gcreg_trial_spec& s = deref(spec);
    gcreg::TrialSpec ts;
    ts.trials = s.trials;
    ts.eps = s.eps;
    ts.seed = s.seed;
    ts.coeff_bound = s.coeff_bound;
    ts.domain = from_c(s.domain);
    ts.sampling = s.sampling == GCREG_SAMPLE_MATRIX ? gcreg::CoefficientSampling::Matrix
                                                    : gcreg::CoefficientSampling::Decomposition;
    ts.max_iter = s.max_iter;
    ts.threads = s.threads;
    auto* h = new gcreg_report_s;
    h->report = gcreg::run_campaign(ts);
    slot = h;
  });
}

gcreg_status gcreg_report_get(gcreg_report h, gcreg_report_summary* out) {
  return try_([&] {
    const gcreg::ExperimentReport& r = deref(h).report;
    deref(out) = {r.eps,
                  r.trials,
                  r.seed,
                  r.avg_error,
                  r.max_error,
                  r.avg_iterations,
                  r.converged_fraction,
                  r.avg_error_converged,
                  r.max_error_converged,
                  r.avg_iterations_converged,
                  r.max_iterations,
                  r.converged,
                  r.max_iter_exceeded,
                  r.degenerate,
                  r.near_degenerate,
                  r.near_degenerate_not_converged};
  });
}

gcreg_status gcreg_report_json(gcreg_report h, const char** out) {
  return try_([&] {
    gcreg_report_s& r = deref(h);
    const char*& slot = deref(out);
    r.json = gcreg::to_json(r.report);
    slot = r.json.c_str();
  });
}

gcreg_status gcreg_report_csv(gcreg_report h, const char** header, const char** row) {
  return try_([&] {
    gcreg_report_s& r = deref(h);
    const char*& hs = deref(header);
    const char*& rs = deref(row);
    r.header = gcreg::report_csv_header();
    r.row = gcreg::to_csv_row(r.report);
    hs = r.header.c_str();
    rs = r.row.c_str();
  });
}

void gcreg_report_destroy(gcreg_report h) { delete h; }

}  // extern "C"
