#ifndef NUMSG_H
#define NUMSG_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum NumsgStatus {
  NUMSG_STATUS_OK = 0,
  NUMSG_STATUS_NULL_POINTER = 1,
  NUMSG_STATUS_INVALID_ARGUMENT = 2,
  NUMSG_STATUS_NOT_A_SEMIGROUP = 3,
  NUMSG_STATUS_OUT_OF_RANGE = 4,
  NUMSG_STATUS_BUFFER_TOO_SMALL = 5,
  NUMSG_STATUS_PANIC = 6,
} NumsgStatus;

/**
 * Opaque handle on the statistics of one genus.
 */
typedef struct NumsgAggregate NumsgAggregate;

/**
 * Opaque semigroup handle.
 */
typedef struct NumsgSemigroup NumsgSemigroup;

typedef struct NumsgInvariants {
  uint32_t genus;
  uint32_t multiplicity;
  /**
   * -1 for the nonnegative integers.
   */
  int32_t frobenius;
  uint32_t embedding_dim;
  uint32_t e1;
  uint32_t e2;
  uint32_t type_t;
  uint32_t t1;
  uint32_t t2;
  uint64_t weight;
  uint64_t gap_sum;
} NumsgInvariants;

/**
 * Static description of a status code.
 */
const char *numsg_status_message(enum NumsgStatus status);

/**
 * Detail of the last failure on this thread; empty after a success. Valid
 * until the next call into the library from the same thread.
 */
const char *numsg_last_error_message(void);

/**
 * The semigroup with the given gaps (any order).
 *
 * # Safety
 * `gaps` must point to `len` readable values (or be null with `len == 0`);
 * `out` must be writable.
 */
enum NumsgStatus numsg_semigroup_from_gaps(const uint32_t *gaps,
                                           size_t len,
                                           struct NumsgSemigroup **out);

/**
 * The semigroup generated by `gens`, which must have gcd 1.
 *
 * # Safety
 * As for [`numsg_semigroup_from_gaps`].
 */
enum NumsgStatus numsg_semigroup_from_generators(const uint32_t *gens,
                                                 size_t len,
                                                 struct NumsgSemigroup **out);

/**
 * # Safety
 * `s` must be null or a handle from this library not yet freed.
 */
void numsg_semigroup_free(struct NumsgSemigroup *s);

/**
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum NumsgStatus numsg_semigroup_invariants(const struct NumsgSemigroup *s,
                                            struct NumsgInvariants *out);

/**
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum NumsgStatus numsg_semigroup_contains(const struct NumsgSemigroup *s, uint32_t n, bool *out);

/**
 * Sorted gaps.
 *
 * # Safety
 * `s` must be a live handle, `buf` writable for `cap` values, `len` writable.
 */
enum NumsgStatus numsg_semigroup_gaps(const struct NumsgSemigroup *s,
                                      uint32_t *buf,
                                      size_t cap,
                                      size_t *len);

/**
 * Sorted minimal generators.
 *
 * # Safety
 * As for [`numsg_semigroup_gaps`].
 */
enum NumsgStatus numsg_semigroup_generators(const struct NumsgSemigroup *s,
                                            uint32_t *buf,
                                            size_t cap,
                                            size_t *len);

/**
 * Sorted pseudo-Frobenius numbers.
 *
 * # Safety
 * As for [`numsg_semigroup_gaps`].
 */
enum NumsgStatus numsg_semigroup_pseudo_frobenius(const struct NumsgSemigroup *s,
                                                  uint32_t *buf,
                                                  size_t cap,
                                                  size_t *len);

/**
 * Kunz coordinates `x_1 .. x_{m-1}` (empty for the nonnegative integers).
 *
 * # Safety
 * As for [`numsg_semigroup_gaps`].
 */
enum NumsgStatus numsg_semigroup_kunz(const struct NumsgSemigroup *s,
                                      uint32_t *buf,
                                      size_t cap,
                                      size_t *len);

/**
 * Number of semigroups of genus `genus`. `threads == 0` uses every core.
 *
 * # Safety
 * `out` must be writable.
 */
enum NumsgStatus numsg_count_genus(uint32_t genus, uint32_t threads, uint64_t *out);

/**
 * Enumerates genus `genus` into a new aggregate handle.
 *
 * # Safety
 * `out` must be writable.
 */
enum NumsgStatus numsg_aggregate_genus(uint32_t genus,
                                       uint32_t threads,
                                       struct NumsgAggregate **out);

/**
 * # Safety
 * `a` must be null or a handle from this library not yet freed.
 */
void numsg_aggregate_free(struct NumsgAggregate *a);

/**
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
enum NumsgStatus numsg_aggregate_count(const struct NumsgAggregate *a, uint64_t *out);

/**
 * Number of semigroups of the genus containing `n`.
 *
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
enum NumsgStatus numsg_aggregate_membership_count(const struct NumsgAggregate *a,
                                                  uint32_t n,
                                                  uint64_t *out);

/**
 * Canonical JSON of the aggregate, NUL-terminated. `len` receives the
 * length without the terminator; `cap` must exceed it.
 *
 * # Safety
 * `a` must be a live handle, `buf` writable for `cap` bytes, `len` writable.
 */
enum NumsgStatus numsg_aggregate_json(const struct NumsgAggregate *a,
                                      char *buf,
                                      size_t cap,
                                      size_t *len);

#endif  /* NUMSG_H */
