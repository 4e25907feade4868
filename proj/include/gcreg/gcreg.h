/* C interface to the gcreg library.
 *
 * Every function returns a gcreg_status. On failure, gcreg_last_error()
 * returns a message for the calling thread. Small values travel as plain
 * structs; sampled fields, detection results and experiment reports are
 * opaque handles released with the matching *_destroy function.
 */
#ifndef GCREG_GCREG_H
#define GCREG_GCREG_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  GCREG_OK = 0,
  GCREG_ERR_INVALID_ARGUMENT = 1,
  GCREG_ERR_CONTRACT_VIOLATION = 2,
  GCREG_ERR_DEGENERATE_SPINOR = 3,
  GCREG_ERR_DEGENERATE_ZERO_FIELD = 4,
  GCREG_ERR_DOMAIN_MISMATCH = 5,
  GCREG_ERR_SHAPE_MISMATCH = 6,
  GCREG_ERR_IO = 7,
  GCREG_ERR_BUFFER_TOO_SMALL = 8,
  GCREG_ERR_INTERNAL = 9
} gcreg_status;

const char* gcreg_version(void);
const char* gcreg_status_string(gcreg_status status);
/* Message of the last failed call on this thread, "" if none. */
const char* gcreg_last_error(void);

/* ---- Cl(2,0) ----------------------------------------------------------- */

typedef struct {
  double s;
  double e1;
  double e2;
  double e12;
} gcreg_multivector;

gcreg_status gcreg_gp(const gcreg_multivector* l, const gcreg_multivector* r, gcreg_multivector* out);
gcreg_status gcreg_reverse(const gcreg_multivector* m, gcreg_multivector* out);
/* Turns the pure vector v by +angle. */
gcreg_status gcreg_apply_rotor(double angle, const gcreg_multivector* v, gcreg_multivector* out);
gcreg_status gcreg_spinor_arg(const gcreg_multivector* m, double* out);
gcreg_status gcreg_multivector_to_json(const gcreg_multivector* m, char* buf, size_t cap, size_t* needed);

/* ---- Linear fields ----------------------------------------------------- */

typedef enum { GCREG_DOMAIN_SQUARE = 0, GCREG_DOMAIN_DISK = 1 } gcreg_domain_kind;

typedef struct {
  gcreg_domain_kind kind;
  /* half side for squares, radius for disks */
  double size;
} gcreg_domain;

/* v(x) = (a11 x1 + a12 x2) e1 + (a21 x1 + a22 x2) e2 inside the domain. */
typedef struct {
  double a11;
  double a12;
  double a21;
  double a22;
  gcreg_domain domain;
} gcreg_field;

typedef struct {
  double a;
  double b;
  double c;
  double d;
} gcreg_decomposition;

typedef enum {
  GCREG_ROTATE_TOTAL = 0,
  GCREG_ROTATE_OUTER = 1,
  GCREG_ROTATE_INNER = 2
} gcreg_rotation_kind;

gcreg_status gcreg_field_eval(const gcreg_field* f, double x1, double x2, gcreg_multivector* out);
gcreg_status gcreg_decompose(const gcreg_field* f, gcreg_decomposition* out);
gcreg_status gcreg_recompose(const gcreg_decomposition* d, const gcreg_domain* domain, gcreg_field* out);
gcreg_status gcreg_rotate(const gcreg_field* f, gcreg_rotation_kind kind, double angle, gcreg_field* out);

/* JSON text <-> structs. For *_to_json, pass buf = NULL to query the size
 * (including the terminating NUL) through `needed`. */
gcreg_status gcreg_field_from_json(const char* text, gcreg_field* out);
gcreg_status gcreg_field_to_json(const gcreg_field* f, char* buf, size_t cap, size_t* needed);
gcreg_status gcreg_decomposition_from_json(const char* text, gcreg_decomposition* out);
gcreg_status gcreg_decomposition_to_json(const gcreg_decomposition* d, char* buf, size_t cap, size_t* needed);

/* ---- Correlation ------------------------------------------------------- */

gcreg_status gcreg_second_moment(const gcreg_domain* domain, double* out);
/* Closed-form (u * v)(0); both fields must share a domain. */
gcreg_status gcreg_correlate(const gcreg_field* u, const gcreg_field* v, gcreg_multivector* out);
gcreg_status gcreg_product_at(const gcreg_field* u, const gcreg_field* v, double x1, double x2,
                              gcreg_multivector* out);

/* ---- Sampled fields ---------------------------------------------------- */

typedef struct gcreg_sampled_field_s* gcreg_sampled_field;

gcreg_status gcreg_sample_field(const gcreg_field* f, size_t n, gcreg_sampled_field* out);
/* The unit-magnitude field e1 e^{2 phi e12}, totally rotated by `angle`. */
gcreg_status gcreg_sample_counterexample(const gcreg_domain* domain, double angle, size_t n,
                                         gcreg_sampled_field* out);
gcreg_status gcreg_sampled_resolution(gcreg_sampled_field h, size_t* n);
/* Cell (i, j): column i along x1, row j along x2. */
gcreg_status gcreg_sampled_cell(gcreg_sampled_field h, size_t i, size_t j, double* x1, double* x2,
                                double* v1, double* v2, int* inside);
gcreg_status gcreg_sampled_write_csv(gcreg_sampled_field h, const char* path);
gcreg_status gcreg_correlate_sampled(gcreg_sampled_field u, gcreg_sampled_field v, gcreg_multivector* out);
void gcreg_sampled_destroy(gcreg_sampled_field h);

/* ---- Detection --------------------------------------------------------- */

typedef struct {
  double eps;
  size_t max_iter;
  double zero_tol;
} gcreg_detector_config;

typedef enum {
  GCREG_CONVERGED = 0,
  GCREG_MAX_ITER_EXCEEDED = 1,
  GCREG_DEGENERATE_ZERO_FIELD = 2
} gcreg_detection_status;

typedef enum {
  GCREG_BRANCH_NONE = 0,
  GCREG_BRANCH_ALIGNED_PERTURBATION = 1,
  GCREG_BRANCH_SADDLE_HALVING = 2,
  GCREG_BRANCH_SADDLE_QUARTER_TURN = 3
} gcreg_branch;

typedef struct {
  size_t iter;
  double phi;
  double alpha;
  int exception;
  gcreg_branch branch;
} gcreg_trace_entry;

typedef struct gcreg_detection_s* gcreg_detection;

gcreg_detector_config gcreg_detector_config_default(void);
gcreg_status gcreg_detect(const gcreg_field* v, const gcreg_field* u, const gcreg_detector_config* cfg,
                          gcreg_detection* out);
/* Iteration on sampled fields (bilinear resampling, approximate). The
 * result has no corrected pattern. */
gcreg_status gcreg_detect_sampled(gcreg_sampled_field v, gcreg_sampled_field u,
                                  const gcreg_detector_config* cfg, gcreg_detection* out);
gcreg_status gcreg_detection_alpha(gcreg_detection h, double* out);
gcreg_status gcreg_detection_iterations(gcreg_detection h, size_t* out);
gcreg_status gcreg_detection_status_of(gcreg_detection h, gcreg_detection_status* out);
gcreg_status gcreg_detection_corrected(gcreg_detection h, gcreg_field* out);
gcreg_status gcreg_detection_trace_length(gcreg_detection h, size_t* out);
gcreg_status gcreg_detection_trace_entry(gcreg_detection h, size_t index, gcreg_trace_entry* out);
/* JSON owned by the handle, valid until the next call on it or destroy. */
gcreg_status gcreg_detection_json(gcreg_detection h, int include_trace, const char** out);
void gcreg_detection_destroy(gcreg_detection h);

gcreg_status gcreg_phi_of_alpha(const gcreg_field* v, double alpha, double* out);
/* grid = 0 selects the default of 20001 points. */
gcreg_status gcreg_oracle_detect(const gcreg_field* v, const gcreg_field* u, size_t grid, double* out);
gcreg_status gcreg_detect_known_pattern(const gcreg_field* pattern, const gcreg_field* u, double* out);

/* ---- Experiments ------------------------------------------------------- */

typedef enum {
  GCREG_SAMPLE_MATRIX = 0,
  GCREG_SAMPLE_DECOMPOSITION = 1
} gcreg_coefficient_sampling;

typedef struct {
  size_t trials;
  double eps;
  uint64_t seed;
  double coeff_bound;
  gcreg_domain domain;
  gcreg_coefficient_sampling sampling;
  size_t max_iter;
  size_t threads;
} gcreg_trial_spec;

typedef struct {
  double alpha_true;
  double alpha_hat;
  double error;
  size_t iterations;
  gcreg_detection_status status;
  double weight_ratio;
} gcreg_trial_outcome;

typedef struct {
  double eps;
  size_t trials;
  uint64_t seed;
  double avg_error;
  double max_error;
  double avg_iterations;
  double converged_fraction;
  double avg_error_converged;
  double max_error_converged;
  double avg_iterations_converged;
  size_t max_iterations;
  size_t converged;
  size_t max_iter_exceeded;
  size_t degenerate;
  size_t near_degenerate;
  size_t near_degenerate_not_converged;
} gcreg_report_summary;

typedef struct gcreg_report_s* gcreg_report;

gcreg_trial_spec gcreg_trial_spec_default(void);
gcreg_status gcreg_run_trial(const gcreg_field* v, double alpha, double eps, size_t max_iter,
                             gcreg_trial_outcome* out);
gcreg_status gcreg_run_campaign(const gcreg_trial_spec* spec, gcreg_report* out);
gcreg_status gcreg_report_get(gcreg_report h, gcreg_report_summary* out);
gcreg_status gcreg_report_json(gcreg_report h, const char** out);
/* Header line and one data row, both without trailing newline. */
gcreg_status gcreg_report_csv(gcreg_report h, const char** header, const char** row);
void gcreg_report_destroy(gcreg_report h);

#ifdef __cplusplus
}
#endif

#endif /* GCREG_GCREG_H */
