/*
 * respkit — retrospective human responsibility measures for interactions
 * with intelligent decision-support systems.
 *
 * C API over the C++ core. Conventions:
 *   - every fallible function returns a respkit_status and writes results
 *     through out pointers; RESPKIT_OK means every out pointer was filled
 *   - on failure, respkit_last_error() returns a thread-local message
 *     describing the most recent failing call on this thread
 *   - objects behind opaque handles are created by *_new/_from_* functions
 *     and released with the matching *_free; handles are immutable after
 *     creation and may be shared across threads
 *   - probability vectors over the binary environment are ordered
 *     (signal, noise); rate vectors are ordered (tp, fn, fp, tn)
 *
 * All entropies and divergences are in bits (base-2 logarithms).
 */

#ifndef RESPKIT_H
#define RESPKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(RESPKIT_BUILDING)
#define RESPKIT_API __declspec(dllexport)
#else
#define RESPKIT_API __declspec(dllimport)
#endif
#else
#define RESPKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum respkit_status {
  RESPKIT_OK = 0,
  RESPKIT_ERROR_INVALID_ARGUMENT = 1, /* structurally invalid input */
  RESPKIT_ERROR_DOMAIN = 2,           /* quantity undefined for this input */
  RESPKIT_ERROR_PARSE = 3,            /* malformed JSON/CSV */
  RESPKIT_ERROR_IO = 4,               /* filesystem failure */
  RESPKIT_ERROR_INTERNAL = 5
} respkit_status;

RESPKIT_API const char* respkit_version(void);
RESPKIT_API const char* respkit_status_name(respkit_status status);
/* Message for the most recent failing call on the calling thread; never
 * NULL. Valid until the next failing call on the same thread. */
RESPKIT_API const char* respkit_last_error(void);

/* Frees strings returned through char** out parameters. */
RESPKIT_API void respkit_string_free(char* s);

/* ---------------------------------------------------------------------- */
/* Information metrics                                                    */
/* ---------------------------------------------------------------------- */

/* Shannon entropy of a probability vector (n >= 2, sums to 1 within 1e-9). */
RESPKIT_API respkit_status respkit_entropy(const double* probs, size_t n,
                                           double* out);

/* KLD(p || q); fails with RESPKIT_ERROR_DOMAIN when p(x) > 0 with q(x)=0. */
RESPKIT_API respkit_status respkit_kl_divergence(const double* p,
                                                 const double* q, size_t n,
                                                 double* out);

/* Jensen-Shannon divergence, always finite, in [0, 1]. */
RESPKIT_API respkit_status respkit_js_divergence(const double* p,
                                                 const double* q, size_t n,
                                                 double* out);

/* sqrt(JSD): a bounded metric on probability distributions. */
RESPKIT_API respkit_status respkit_js_distance(const double* p,
                                               const double* q, size_t n,
                                               double* out);

/* ---------------------------------------------------------------------- */
/* Signal detection model                                                 */
/* ---------------------------------------------------------------------- */

/* Expected-payoff-maximizing likelihood-ratio criterion
 * ((1-p)/p) * ((v_tn - v_fp) / (v_tp - v_fn)). */
RESPKIT_API respkit_status respkit_optimal_beta(double prior_signal,
                                                double v_tp, double v_tn,
                                                double v_fp, double v_fn,
                                                double* out);

/* Evidence-axis criterion where the likelihood ratio equals beta. */
RESPKIT_API respkit_status respkit_beta_to_threshold(double beta,
                                                     double d_prime,
                                                     double* out);

/* Confusion rates (tp, fn, fp, tn) of an equal-variance Gaussian detector. */
RESPKIT_API respkit_status respkit_confusion_rates(double d_prime,
                                                   double threshold,
                                                   double out_rates[4]);

/* ---------------------------------------------------------------------- */
/* Scenario                                                               */
/* ---------------------------------------------------------------------- */

typedef struct respkit_scenario respkit_scenario;

/* Strict scenario JSON; see the README for the schema. Unknown keys are
 * rejected by name. */
RESPKIT_API respkit_status respkit_scenario_from_json(const char* json_text,
                                                      respkit_scenario** out);
RESPKIT_API respkit_status respkit_scenario_from_file(const char* path,
                                                      respkit_scenario** out);
RESPKIT_API void respkit_scenario_free(respkit_scenario* scenario);

/* The numeric system criterion, resolving "optimal" against the scenario's
 * prior and payoffs. */
RESPKIT_API respkit_status respkit_scenario_resolved_beta(
    const respkit_scenario* scenario, double* out);

#define RESPKIT_OUTPUT_NOISE 0
#define RESPKIT_OUTPUT_SIGNAL 1

/* The three posteriors for one event: system-only, human-only, combined.
 * Each out array is (signal, noise); any of them may be NULL to skip. */
RESPKIT_API respkit_status respkit_posteriors(
    const respkit_scenario* scenario, int system_output, double observed,
    double out_system[2], double out_human[2], double out_combined[2]);

/* ---------------------------------------------------------------------- */
/* Single-event responsibility                                            */
/* ---------------------------------------------------------------------- */

/* Generic information-share measure over three aligned distributions:
 * resp = D(x_a, x_a_system) / (D(x_a, x_a_system) + D(x_a, x_a_human)).
 * out_coincident is set to 1 (and resp to 0.5) when all three coincide. */
RESPKIT_API respkit_status respkit_resp_information(
    const double* x_a, const double* x_a_system, const double* x_a_human,
    size_t n, double* out_resp, double* out_d_system, double* out_d_human,
    int* out_coincident);

/* SoftMax probabilities exp(U/t)/sum exp(U'/t) over n >= 2 utilities. */
RESPKIT_API respkit_status respkit_softmax(const double* utilities, size_t n,
                                           double temperature,
                                           double* out_probs);

/* p(chosen)/max p: 1 exactly for every maximizer, in (0, 1] always. */
RESPKIT_API respkit_status respkit_reasonability(const double* utilities,
                                                 size_t n, size_t chosen,
                                                 double temperature,
                                                 double* out);

typedef struct respkit_report respkit_report;

/* Runs the single-event pipeline. chosen_action must be "accept" or
 * "reject"; the report covers both actions. */
RESPKIT_API respkit_status respkit_analyze_event(
    const respkit_scenario* scenario, int system_output, double observed,
    const char* chosen_action, respkit_report** out);
RESPKIT_API void respkit_report_free(respkit_report* report);

/* Scalar view of a report. Flag bit 0: coincident distributions. */
typedef struct respkit_report_values {
  double x_a[2];
  double x_a_system[2];
  double x_a_human[2];
  double d_system;
  double d_human;
  double resp_information;
  double ev_accept, ev_reject;
  double softmax_accept, softmax_reject;
  double rsnble_accept, rsnble_reject;
  uint32_t flags;
} respkit_report_values;

#define RESPKIT_FLAG_COINCIDENT (1u << 0)

RESPKIT_API respkit_status respkit_report_get(const respkit_report* report,
                                              respkit_report_values* out);

/* Report serialized with fixed keys (x_a, x_a_system_only, x_a_human_only,
 * d_system, d_human, resp_information, expected_values, softmax,
 * reasonability, flags). Free with respkit_string_free. */
RESPKIT_API respkit_status respkit_report_json(const respkit_report* report,
                                               char** out_json);

/* ---------------------------------------------------------------------- */
/* Event logs and average responsibility                                  */
/* ---------------------------------------------------------------------- */

typedef struct respkit_log respkit_log;

/* Loads the event CSV schema: required column z, one or more y_* condition
 * columns, optional trial/e/state/x_s. */
RESPKIT_API respkit_status respkit_log_load_csv(const char* path,
                                                respkit_log** out);
RESPKIT_API void respkit_log_free(respkit_log* log);
RESPKIT_API size_t respkit_log_size(const respkit_log* log);

typedef struct respkit_resp_summary {
  double resp_z;
  double h_z_bits;
  double h_z_given_y_bits;
  size_t n_events;
} respkit_resp_summary;

/* Average responsibility H(Z|Y)/H(Z) of the post-burn-in log. alpha > 0
 * add-alpha smooths the joint table; 0 is the plain plug-in estimate. */
RESPKIT_API respkit_status respkit_log_resp(const respkit_log* log,
                                            size_t burn_in, double alpha,
                                            respkit_resp_summary* out);

typedef struct respkit_series_point {
  size_t start;   /* absolute record position of the window start */
  double resp_z;  /* meaningful only when has_value != 0 */
  int has_value;  /* 0 for degenerate windows (constant outcome) */
} respkit_series_point;

/* Sliding-window responsibility series; free the array with
 * respkit_series_free. */
RESPKIT_API respkit_status respkit_log_resp_series(
    const respkit_log* log, size_t burn_in, size_t window_size, size_t stride,
    double alpha, respkit_series_point** out_points, size_t* out_n);
RESPKIT_API void respkit_series_free(respkit_series_point* points);

/* Full log report as JSON (keys resp_z, h_z_bits, h_z_given_y_bits,
 * n_events, burn_in, and series when window_size > 0). */
RESPKIT_API respkit_status respkit_log_report_json(const respkit_log* log,
                                                   size_t burn_in,
                                                   size_t window_size,
                                                   size_t stride, double alpha,
                                                   char** out_json);

/* Average responsibility from pre-coded arrays: y_codes[i] is the combined
 * condition code of event i, z_codes[i] its outcome code. */
RESPKIT_API respkit_status respkit_resp_average(const int* y_codes,
                                                const int* z_codes,
                                                size_t n_events, double alpha,
                                                respkit_resp_summary* out);

/* ---------------------------------------------------------------------- */
/* Simulation                                                             */
/* ---------------------------------------------------------------------- */

#define RESPKIT_POLICY_MAXIMIZE_EV 0
#define RESPKIT_POLICY_SOFTMAX_SAMPLE 1

/* Seeded Monte-Carlo interaction log, written in the event CSV schema.
 * When sidecar_json_path is non-NULL the resolved configuration (numeric
 * beta included) is written there as provenance. Identical seeds produce
 * byte-identical files. */
RESPKIT_API respkit_status respkit_simulate_to_csv(
    const respkit_scenario* scenario, uint64_t n_trials, uint64_t seed,
    int policy, const char* csv_path, const char* sidecar_json_path);

/* Quadrature oracle for the average responsibility of a simulated log
 * (absolute tolerance 1e-9 per integration cell). */
RESPKIT_API respkit_status respkit_analytic_resp_z(
    const respkit_scenario* scenario, int policy, double* out);

/* P(accept | system output, true state) under the given policy, by
 * integration of the decision rule over the observed-value axis. */
RESPKIT_API respkit_status respkit_accept_probability(
    const respkit_scenario* scenario, int system_output, int state_is_signal,
    int policy, double* out);

/* ---------------------------------------------------------------------- */
/* Sweeps                                                                 */
/* ---------------------------------------------------------------------- */

typedef struct respkit_sweep_spec {
  double d_human_min, d_human_max;
  size_t d_human_steps;
  double d_system_min, d_system_max;
  size_t d_system_steps;
  const double* e_values;
  size_t n_e_values;
  int system_output;
} respkit_sweep_spec;

/* Fills a spec with the default grid: both sensitivities 0.6..3.0 in 61
 * steps, e in {-1.5, 0, 1.5, 3, 4.5} (caller-owned array), output signal. */
RESPKIT_API void respkit_sweep_spec_defaults(respkit_sweep_spec* spec);
RESPKIT_API extern const double RESPKIT_SWEEP_DEFAULT_E_VALUES[5];

/* Grid of resp(x_a) and per-action reasonability over
 * (d_human, d_system, e), written as CSV with header
 * e,d_human,d_system,resp_xa,rsnble_accept,rsnble_reject. */
RESPKIT_API respkit_status respkit_sweep_to_csv(
    const respkit_scenario* scenario, const respkit_sweep_spec* spec,
    const char* path);

/* One SVG heatmap of resp(x_a) per e value, named
 * <path_prefix>_e<value>.svg. */
RESPKIT_API respkit_status respkit_sweep_to_svg(
    const respkit_scenario* scenario, const respkit_sweep_spec* spec,
    const char* path_prefix);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RESPKIT_H */
