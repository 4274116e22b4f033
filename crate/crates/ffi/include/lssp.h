#ifndef LSSP_H
#define LSSP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum LsspStatus {
  LSSP_STATUS_OK = 0,
  LSSP_STATUS_NULL_POINTER = 1,
  LSSP_STATUS_INVALID_UTF8 = 2,
  LSSP_STATUS_PARSE = 3,
  LSSP_STATUS_VALIDATION = 4,
  LSSP_STATUS_DIMENSION = 5,
  LSSP_STATUS_UNSUPPORTED_ANGLE = 6,
  LSSP_STATUS_CAPACITY = 7,
  LSSP_STATUS_SCHEDULING = 8,
  LSSP_STATUS_INVARIANT = 9,
  LSSP_STATUS_DOMAIN = 10,
  LSSP_STATUS_PANIC = 99,
} LsspStatus;

typedef enum LsspRule {
  LSSP_RULE_SERIAL = 0,
  LSSP_RULE_TRIVIAL = 1,
  LSSP_RULE_GENERAL = 2,
} LsspRule;

// Opaque rotation circuit.
typedef struct LsspCircuit LsspCircuit;

// Opaque layout graph.
typedef struct LsspLayout LsspLayout;

// Opaque schedule with its metrics.
typedef struct LsspSchedule LsspSchedule;

typedef struct LsspScheduleOptions {
  enum LsspRule rule;
  // Shuffle candidates with `order_seed` when true.
  bool use_order_seed;
  uint64_t order_seed;
  bool allow_shared_data;
} LsspScheduleOptions;

typedef struct LsspMetrics {
  size_t en;
  size_t lb;
  size_t ub;
  double average_width;
  double t_dep_s;
  double t_sch_s;
  double t_tot_s;
} LsspMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *lssp_last_error_message(void);

// Frees a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string from this library not yet freed.
void lssp_string_free(char *s);

// Parses a circuit in the rotation or gate text format.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be valid for writes.
enum LsspStatus lssp_circuit_parse(const char *text, struct LsspCircuit **out);

// Random π/8 circuit followed by Z measurements on every qubit.
//
// # Safety
// `out` must be valid for writes.
enum LsspStatus lssp_circuit_random(size_t m,
                                    size_t n,
                                    double n_pct,
                                    uint64_t seed,
                                    struct LsspCircuit **out);

// # Safety
// `c` must be null or a handle from this library not yet freed.
void lssp_circuit_free(struct LsspCircuit *c);

// Number of qubits, or 0 for a null handle.
//
// # Safety
// `c` must be null or a live circuit handle.
size_t lssp_circuit_num_qubits(const struct LsspCircuit *c);

// Number of operations, or 0 for a null handle.
//
// # Safety
// `c` must be null or a live circuit handle.
size_t lssp_circuit_len(const struct LsspCircuit *c);

// Number of π/8 rotations, or 0 for a null handle.
//
// # Safety
// `c` must be null or a live circuit handle.
size_t lssp_circuit_pi8_count(const struct LsspCircuit *c);

// Writes the rotation text format; free the result with `lssp_string_free`.
//
// # Safety
// `c` must be a live circuit handle; `out` must be valid for writes.
enum LsspStatus lssp_circuit_emit(const struct LsspCircuit *c, char **out);

// Transpiles `c` to π/8 rotations and measurements, optionally merging
// commuting layers to a fixpoint. The final Clifford is dropped.
//
// # Safety
// `c` must be a live circuit handle; `out` must be valid for writes.
enum LsspStatus lssp_transpile(const struct LsspCircuit *c,
                               bool fixpoint,
                               struct LsspCircuit **out);

// Builds a layout from `{"style", "aisles", "patches_per_aisle", "n_storage", "n_ancillary"}`.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be valid for writes.
enum LsspStatus lssp_layout_from_json(const char *json, struct LsspLayout **out);

// Smallest near-square parallelizable layout holding `n_qubits`.
//
// # Safety
// `out` must be valid for writes.
enum LsspStatus lssp_layout_auto(size_t n_qubits,
                                 size_t n_storage,
                                 size_t n_ancillary,
                                 struct LsspLayout **out);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `l` must be null or a live layout handle.
size_t lssp_layout_num_vertices(const struct LsspLayout *l);

// # Safety
// `l` must be null or a handle from this library not yet freed.
void lssp_layout_free(struct LsspLayout *l);

// General rule, source order, no data sharing.
struct LsspScheduleOptions lssp_schedule_options_default(void);

// Schedules `c` on `l`. A null `opts` means the defaults.
//
// # Safety
// `c` and `l` must be live handles; `opts` null or valid; `out` valid for writes.
enum LsspStatus lssp_schedule(const struct LsspCircuit *c,
                              const struct LsspLayout *l,
                              const struct LsspScheduleOptions *opts,
                              struct LsspSchedule **out);

// Number of time steps, or 0 for a null handle.
//
// # Safety
// `s` must be null or a live schedule handle.
size_t lssp_schedule_steps(const struct LsspSchedule *s);

// # Safety
// `s` must be a live schedule handle; `out` must be valid for writes.
enum LsspStatus lssp_schedule_metrics(const struct LsspSchedule *s, struct LsspMetrics *out);

// Schedule JSON; timings are null unless `with_timing`. Free the result
// with `lssp_string_free`.
//
// # Safety
// `s` must be a live schedule handle; `out` must be valid for writes.
enum LsspStatus lssp_schedule_to_json(const struct LsspSchedule *s, bool with_timing, char **out);

// # Safety
// `s` must be null or a handle from this library not yet freed.
void lssp_schedule_free(struct LsspSchedule *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LSSP_H */
