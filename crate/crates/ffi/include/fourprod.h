#ifndef FOURPROD_H
#define FOURPROD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FourprodStatus {
  FOURPROD_STATUS_OK = 0,
  FOURPROD_STATUS_NULL_POINTER = 1,
  FOURPROD_STATUS_INVALID_ARGUMENT = 2,
  FOURPROD_STATUS_NO_SOLUTION = 3,
  FOURPROD_STATUS_DEGENERATE = 4,
  FOURPROD_STATUS_INDEX_OUT_OF_RANGE = 5,
  FOURPROD_STATUS_INTERNAL = 6,
} FourprodStatus;

typedef enum FourprodMethod {
  FOURPROD_METHOD_ELIMINATION = 0,
  FOURPROD_METHOD_DIFFERENCES = 1,
  FOURPROD_METHOD_DIRECT = 2,
  FOURPROD_METHOD_ALL = 3,
} FourprodMethod;

// Opaque list of solutions.
typedef struct FourprodSolutionSet FourprodSolutionSet;

typedef struct FourprodComplex {
  double re;
  double im;
} FourprodComplex;

// One solution `(v, x, y, z)` with its residual.
typedef struct FourprodSolution {
  struct FourprodComplex v;
  struct FourprodComplex x;
  struct FourprodComplex y;
  struct FourprodComplex z;
  double residual;
  enum FourprodMethod method;
} FourprodSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Solve for `(v, x, y, z)` given the four products. `method` is a
// `FourprodMethod` value.
//
// On success `*out` receives a new set, which must be released with
// `fourprod_solution_set_free`. On failure `*out` is set to null.
//
// # Safety
// `out` must be null or point to writable storage for a pointer.
enum FourprodStatus fourprod_solve(double a,
                                   double b,
                                   double c,
                                   double d,
                                   uint32_t method,
                                   double tol,
                                   struct FourprodSolutionSet **out);

// # Safety
// `set` must come from `fourprod_solve` and not yet be freed; `len` must be
// writable.
enum FourprodStatus fourprod_solution_set_len(const struct FourprodSolutionSet *set, size_t *len);

// # Safety
// `set` must come from `fourprod_solve` and not yet be freed; `out` must be
// writable.
enum FourprodStatus fourprod_solution_set_get(const struct FourprodSolutionSet *set,
                                              size_t index,
                                              struct FourprodSolution *out);

// Branch label of solution `index`, or null. The string lives as long as
// the set.
//
// # Safety
// `set` must be null or come from `fourprod_solve` and not yet be freed.
const char *fourprod_solution_set_branch(const struct FourprodSolutionSet *set, size_t index);

// # Safety
// `set` must be null or come from `fourprod_solve`, and is invalid afterwards.
void fourprod_solution_set_free(struct FourprodSolutionSet *set);

// Products `(a, b, c, d)` of a real quadruple.
//
// # Safety
// `q` must point to 4 readable doubles and `out` to 4 writable doubles.
enum FourprodStatus fourprod_forward_map(const double *q, double *out);

// Maximum relative defect of `q` in the four equations for `inst`.
//
// # Safety
// `q` must point to 4 readable complex values, `inst` to 4 readable doubles
// and `out` to a writable double.
enum FourprodStatus fourprod_residual(const struct FourprodComplex *q,
                                      const double *inst,
                                      double *out);

// Coefficients of `w⁴ … w⁰` of the elimination quartic in `w = (v+x+y+z)²`,
// formed exactly from the given doubles and rounded once.
//
// # Safety
// `inst` must point to 4 readable doubles and `out` to 5 writable doubles.
enum FourprodStatus fourprod_method1_quartic(const double *inst, double *out);

// Static description of a status code.
const char *fourprod_status_message(enum FourprodStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FOURPROD_H */
