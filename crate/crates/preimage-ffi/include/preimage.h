#ifndef PREIMAGE_H
#define PREIMAGE_H

/* Generated by cbindgen from the preimage-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum PreimageStatus {
  PREIMAGE_STATUS_OK = 0,
  PREIMAGE_STATUS_NULL_POINTER = 1,
  PREIMAGE_STATUS_INVALID_ARGUMENT = 2,
  PREIMAGE_STATUS_UNSUPPORTED = 3,
  PREIMAGE_STATUS_VERIFICATION_FAILED = 4,
  PREIMAGE_STATUS_INTERNAL_ERROR = 5,
} PreimageStatus;

/**
 * Opaque reversible-circuit handle.
 */
typedef struct PreimageCircuit PreimageCircuit;

/**
 * Gate tallies and depth figures of one circuit; all counters are 64-bit.
 */
typedef struct PreimageCounts {
  uint64_t x;
  uint64_t cnot;
  uint64_t toffoli;
  uint64_t h;
  uint64_t t;
  uint64_t tdg;
  uint64_t p;
  uint64_t pdg;
  uint64_t z;
  /**
   * T plus T-dagger.
   */
  uint64_t t_count;
  uint64_t total_gates;
  /**
   * Layers containing a T or T-dagger under as-soon-as-possible layering.
   */
  uint64_t t_depth;
  uint64_t total_depth;
  /**
   * Layers containing a Toffoli.
   */
  uint64_t toffoli_stages;
  /**
   * Wires in the circuit.
   */
  uint64_t width;
} PreimageCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string; never freed.
 */
const char *preimage_version(void);

/**
 * Static human-readable message for a status code; never freed.
 */
const char *preimage_status_message(enum PreimageStatus status);

/**
 * Build the reversible SHA-256 compression circuit and hand back an owned
 * handle through `out`.
 *
 * # Safety
 * `out` must be a valid pointer to writable memory for one pointer.
 */
enum PreimageStatus preimage_sha256_circuit_new(struct PreimageCircuit **out);

/**
 * Resource counts of a circuit handle.
 *
 * # Safety
 * `circuit` must be a live handle from this library; `out` must point to
 * writable memory for one `PreimageCounts`.
 */
enum PreimageStatus preimage_circuit_counts(const struct PreimageCircuit *circuit,
                                            struct PreimageCounts *out);

/**
 * Write a circuit handle to `path` in the plain-text netlist format.
 *
 * # Safety
 * `circuit` must be a live handle; `path` must be a NUL-terminated UTF-8
 * string.
 */
enum PreimageStatus preimage_circuit_write_text(const struct PreimageCircuit *circuit,
                                                const char *path);

/**
 * Release a circuit handle; a null pointer is a no-op.
 *
 * # Safety
 * `circuit` must be null or a live handle from this library, and must not
 * be used afterwards.
 */
void preimage_circuit_free(struct PreimageCircuit *circuit);

/**
 * Resource counts of the full 24-round reversible permutation circuit
 * (1600-bit state plus temporary register). Walks all ~33M gates; takes a
 * few seconds.
 *
 * # Safety
 * `out` must point to writable memory for one `PreimageCounts`.
 */
enum PreimageStatus preimage_keccak_counts(struct PreimageCounts *out);

/**
 * SHA-256 digest of a message of at most 55 bytes (one padded block),
 * through the software reference oracle. `digest` receives 32 bytes.
 *
 * # Safety
 * `msg` must point to `len` readable bytes (may be null when `len` is 0);
 * `digest` must point to 32 writable bytes.
 */
enum PreimageStatus preimage_sha256_digest(const uint8_t *msg, size_t len, uint8_t *digest);

/**
 * Run the reversible SHA-256 circuit on a fixed message and compare with
 * the software reference; `VerificationFailed` on any mismatch.
 */
enum PreimageStatus preimage_sha256_self_check(void);

/**
 * Estimate the fault-tolerant attack cost for `hash` ("sha256" or
 * "sha3-256") at key size `k`, using the published optimized circuit
 * counts and default physical parameters. On `Ok`, `out` receives a
 * NUL-terminated JSON report owned by the caller (release with
 * [`preimage_string_free`]).
 *
 * # Safety
 * `hash` must be a NUL-terminated string; `out` must point to writable
 * memory for one pointer.
 */
enum PreimageStatus preimage_estimate_json(const char *hash, uint32_t k, char **out);

/**
 * Release a string returned by this library; a null pointer is a no-op.
 *
 * # Safety
 * `s` must be null or a string returned by this library, and must not be
 * used afterwards.
 */
void preimage_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PREIMAGE_H */
