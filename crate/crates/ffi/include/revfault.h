/* SPDX-License-Identifier: Apache-2.0 */

#ifndef REVFAULT_H
#define REVFAULT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RfImplicationKind {
  RF_IMPLICATION_KIND_LITERAL = 0,
  RF_IMPLICATION_KIND_EQUAL = 1,
  RF_IMPLICATION_KIND_INVERTED = 2,
} RfImplicationKind;

/**
 * Result code of every fallible call.
 */
typedef enum RfStatus {
  RF_STATUS_OK = 0,
  RF_STATUS_NULL_POINTER = 1,
  RF_STATUS_INVALID_UTF8 = 2,
  RF_STATUS_PARSE_ERROR = 3,
  RF_STATUS_IO_ERROR = 4,
  RF_STATUS_TOO_MANY_INPUTS = 5,
  RF_STATUS_OUT_OF_RANGE = 6,
  RF_STATUS_NOT_HOLDING = 7,
  RF_STATUS_MISMATCH = 8,
  RF_STATUS_PANIC = 9,
} RfStatus;

/**
 * Opaque circuit handle.
 */
typedef struct RfCircuit RfCircuit;

/**
 * Opaque list of implications, natural or artificial.
 */
typedef struct RfImplicationList RfImplicationList;

/**
 * Opaque exhaustive truth table handle.
 */
typedef struct RfTruthTable RfTruthTable;

/**
 * Plain-data view of one implication. `antecedent`/`consequent` are only
 * meaningful for `Literal`. Artificial entries have `artificial = 1` and
 * carry the appended gate's line in the list (see
 * [`rf_implication_list_placement`]).
 */
typedef struct RfImplication {
  size_t in_wire;
  size_t out_wire;
  enum RfImplicationKind kind;
  uint8_t antecedent;
  uint8_t consequent;
  uint8_t artificial;
} RfImplication;

typedef struct RfImpact {
  uint64_t error_detected;
  uint64_t error_missed;
  double impact_percent;
  uint8_t denominator_zero;
} RfImpact;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread, or null if the
 * last call succeeded. Valid until the next call on this thread.
 */
const char *rf_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *rf_version(void);

/**
 * Parses `.real` text.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum RfStatus rf_circuit_parse(const char *text, struct RfCircuit **out);

/**
 * Loads a `.real` file.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum RfStatus rf_circuit_load(const char *path, struct RfCircuit **out);

/**
 * # Safety
 * `c` must be null or a handle from this library not yet freed.
 */
void rf_circuit_free(struct RfCircuit *c);

/**
 * Wire, gate, garbage and fault counts. Any out pointer may be null.
 *
 * # Safety
 * `c` must be a live circuit handle; non-null out pointers must be writable.
 */
enum RfStatus rf_circuit_shape(const struct RfCircuit *c,
                               size_t *wires,
                               size_t *gates,
                               size_t *garbage,
                               size_t *faults);

/**
 * Simulates every free-input vector. `max_inputs = 0` uses the default cap.
 *
 * # Safety
 * `c` must be a live circuit handle; `out` must be writable.
 */
enum RfStatus rf_truth_table_new(const struct RfCircuit *c,
                                 size_t max_inputs,
                                 struct RfTruthTable **out);

/**
 * # Safety
 * `t` must be null or a handle from this library not yet freed.
 */
void rf_truth_table_free(struct RfTruthTable *t);

/**
 * # Safety
 * `t` must be a live table handle; `rows` must be writable.
 */
enum RfStatus rf_truth_table_rows(const struct RfTruthTable *t, size_t *rows);

/**
 * Reads one bit. `output = 0` selects the input side.
 *
 * # Safety
 * `t` must be a live table handle; `bit` must be writable.
 */
enum RfStatus rf_truth_table_bit(const struct RfTruthTable *t,
                                 size_t row,
                                 size_t wire,
                                 uint8_t output,
                                 uint8_t *bit);

/**
 * Natural implications of `c`, read from its table `t`.
 *
 * # Safety
 * `c` and `t` must be live handles, `t` built from `c`; `out` writable.
 */
enum RfStatus rf_implications_natural(const struct RfCircuit *c,
                                      const struct RfTruthTable *t,
                                      struct RfImplicationList **out);

/**
 * Artificial implications from the default gate library, all-pairs sites.
 *
 * # Safety
 * `c` and `t` must be live handles, `t` built from `c`; `out` writable.
 */
enum RfStatus rf_implications_artificial(const struct RfCircuit *c,
                                         const struct RfTruthTable *t,
                                         struct RfImplicationList **out);

/**
 * # Safety
 * `l` must be null or a handle from this library not yet freed.
 */
void rf_implication_list_free(struct RfImplicationList *l);

/**
 * # Safety
 * `l` must be a live list handle; `len` must be writable.
 */
enum RfStatus rf_implication_list_len(const struct RfImplicationList *l, size_t *len);

/**
 * # Safety
 * `l` must be a live list handle; `out` must be writable.
 */
enum RfStatus rf_implication_list_get(const struct RfImplicationList *l,
                                      size_t index,
                                      struct RfImplication *out);

/**
 * The appended gate of an artificial entry as a `.real` line (empty for
 * natural entries). The string lives as long as the list.
 *
 * # Safety
 * `l` must be a live list handle; `out` must be writable.
 */
enum RfStatus rf_implication_list_placement(const struct RfImplicationList *l,
                                            size_t index,
                                            const char **out);

/**
 * Impact of entry `index` over the full fault universe. Artificial entries
 * are scored on the circuit with their gate appended.
 *
 * # Safety
 * `c`, `t` and `l` must be live handles derived from the same circuit;
 * `out` must be writable.
 */
enum RfStatus rf_implication_impact(const struct RfCircuit *c,
                                    const struct RfTruthTable *t,
                                    const struct RfImplicationList *l,
                                    size_t index,
                                    struct RfImpact *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* REVFAULT_H */
