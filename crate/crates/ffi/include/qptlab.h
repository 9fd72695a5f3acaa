#ifndef QPTLAB_H
#define QPTLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes. `Ok` is zero; everything else is an error whose message is
// available from [`qpt_last_error`].
typedef enum QptStatus {
  QPT_STATUS_OK = 0,
  QPT_STATUS_NULL_POINTER = 1,
  QPT_STATUS_INVALID_UTF8 = 2,
  QPT_STATUS_INVALID_PARAMETER = 3,
  QPT_STATUS_ARITY = 4,
  QPT_STATUS_CAPABILITY = 5,
  QPT_STATUS_BUDGET_EXHAUSTED = 6,
  QPT_STATUS_CONTRACT = 7,
  QPT_STATUS_INTERNAL_CONSISTENCY = 8,
  QPT_STATUS_THEOREM_VIOLATION = 9,
  QPT_STATUS_PARSE = 10,
  QPT_STATUS_UNKNOWN_BUILTIN = 11,
  QPT_STATUS_IO = 12,
  QPT_STATUS_PANIC = 13,
} QptStatus;

// Opaque Boolean function.
typedef struct QptFunction QptFunction;

// Opaque random stream.
typedef struct QptRng QptRng;

// Outcome of one tester run.
typedef struct QptVerdict {
  bool accept;
  double statistic;
  uint64_t copies_used;
  uint64_t aborted_iterations;
} QptVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the calling thread's last error message into `buf` (NUL
// terminated, truncated to `len − 1` bytes) and returns the full message
// length in bytes. Pass `len = 0` to query the length.
//
// # Safety
// `buf` must point to `len` writable bytes, or be null with `len = 0`.
size_t qpt_last_error(char *buf, size_t len);

// Library version as a static NUL-terminated string.
const char *qpt_version(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not have been freed.
void qpt_string_free(char *s);

// Parameter-free builtin (`majority`, `parity`, `dictator`, ...) on `n` bits.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum QptStatus qpt_function_builtin(const char *name, size_t n, struct QptFunction **out);

// Function from a lowercase hex truth table.
//
// # Safety
// `hex` must be a NUL-terminated string; `out` must be writable.
enum QptStatus qpt_function_from_hex(const char *hex, struct QptFunction **out);

// Function from a CLI-style spec (`mm:<hex>`, `@path`, builtin name, ...).
// `n = 0` leaves the arity to the spec.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be writable.
enum QptStatus qpt_function_from_spec(const char *spec, size_t n, struct QptFunction **out);

// # Safety
// `f` must be a live handle or null.
void qpt_function_free(struct QptFunction *f);

// Arity, or 0 for a null handle.
//
// # Safety
// `f` must be a live handle or null.
size_t qpt_function_arity(const struct QptFunction *f);

// `f(x)` with `x` an index, most significant bit first.
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum QptStatus qpt_function_get(const struct QptFunction *f, uint32_t x, bool *out);

// Hex truth table as a new string; release with [`qpt_string_free`].
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum QptStatus qpt_function_to_hex(const struct QptFunction *f, char **out);

// # Safety
// `out` must be writable.
enum QptStatus qpt_rng_new(uint64_t seed, uint64_t stream, struct QptRng **out);

// The stream the CLI uses for trial `trial` of the primitive named `tag`.
//
// # Safety
// `tag` must be a NUL-terminated string; `out` must be writable.
enum QptStatus qpt_rng_for_trial(uint64_t seed,
                                 uint64_t trial,
                                 const char *tag,
                                 struct QptRng **out);

// # Safety
// `rng` must be a live handle or null.
void qpt_rng_free(struct QptRng *rng);

// Probability that a random edge endpoint witnesses a monotonicity violation.
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum QptStatus qpt_monotone_violation_probability(const struct QptFunction *f, double *out);

// `Pr_{x,π}[f(x) ≠ f(πx)]`.
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum QptStatus qpt_symmetry_violation_probability(const struct QptFunction *f, double *out);

// `Pr_{x,y}[f(x) = f(y) = f(x⊕y) = 1]`.
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum QptStatus qpt_triangle_density(const struct QptFunction *f, double *out);

// Exact normalised distance to the monotone functions (arity ≤ 5).
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum QptStatus qpt_distance_to_monotone(const struct QptFunction *f, double *out);

// Exact normalised distance to the symmetric functions.
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum QptStatus qpt_distance_to_symmetric(const struct QptFunction *f, double *out);

// # Safety
// Handles must be live; `out` must be writable.
enum QptStatus qpt_test_monotonicity(const struct QptFunction *f,
                                     double epsilon,
                                     double delta,
                                     struct QptRng *rng,
                                     struct QptVerdict *out);

// # Safety
// Handles must be live; `out` must be writable.
enum QptStatus qpt_test_symmetry(const struct QptFunction *f,
                                 double epsilon,
                                 double delta,
                                 struct QptRng *rng,
                                 struct QptVerdict *out);

// `eta ≤ 0` uses the default, `eta = epsilon_tilde`.
//
// # Safety
// Handles must be live; `out` must be writable.
enum QptStatus qpt_test_triangle_freeness(const struct QptFunction *f,
                                          double epsilon_tilde,
                                          double delta,
                                          double eta,
                                          struct QptRng *rng,
                                          struct QptVerdict *out);

// # Safety
// Handles must be live; `out` must be writable.
enum QptStatus qpt_test_mm(const struct QptFunction *f,
                           double delta,
                           struct QptRng *rng,
                           struct QptVerdict *out);

// Estimate of `|A ∩ B|/2^n` for the pair encoding `f`.
//
// # Safety
// Handles must be live; `out` must be writable.
enum QptStatus qpt_estimate_intersection2(const struct QptFunction *f,
                                          double epsilon,
                                          double delta,
                                          struct QptRng *rng,
                                          double *out);

// Closed-form trace norm of the twin-ensemble difference matrix for `m`
// matched pairs on `n` bits at `t` copies. `star_out` may be null.
//
// # Safety
// `total_out` must be writable; `star_out` must be writable or null.
enum QptStatus qpt_trace_norm_closed_form(size_t n,
                                          size_t t,
                                          size_t m,
                                          double *total_out,
                                          double *star_out);

// `Σ|λᵢ|` of a symmetric `dim × dim` row-major matrix.
//
// # Safety
// `data` must point to `dim²` readable doubles; `out` must be writable.
enum QptStatus qpt_trace_norm(const double *data, size_t dim, double *out);

// `1/2 + ‖ρ₀ − ρ₁‖₁/4`, clamped to `[1/2, 1]`.
double qpt_helstrom_from_trace_norm(double norm);

// Runs an experiment from its JSON config (the `config` object of a result
// file) and returns the full JSON result; release it with
// [`qpt_string_free`]. Output and CSV paths in the config are ignored.
//
// # Safety
// `config_json` must be a NUL-terminated string; `out` must be writable.
enum QptStatus qpt_run_experiment(const char *config_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QPTLAB_H */
