#ifndef VERLINDE_H
#define VERLINDE_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Status codes. Zero is success.
typedef enum VerlindeStatus {
  VERLINDE_STATUS_OK = 0,
  VERLINDE_STATUS_NULL_POINTER = 1,
  VERLINDE_STATUS_INVALID_UTF8 = 2,
  VERLINDE_STATUS_INVALID_TYPE = 3,
  VERLINDE_STATUS_INVALID_ARGUMENT = 4,
  VERLINDE_STATUS_RESOURCE_CAP = 5,
  VERLINDE_STATUS_NON_CONVERGENCE = 6,
  VERLINDE_STATUS_NUMERICAL = 7,
  VERLINDE_STATUS_IO = 8,
  VERLINDE_STATUS_INTERNAL = 9,
  VERLINDE_STATUS_PANIC = 10,
} VerlindeStatus;

// Opaque handle to a level-l fusion ring.
typedef struct VerlindeFusionRing VerlindeFusionRing;

// Opaque handle to a simple type together with its representation cache.
typedef struct VerlindeRootSystem VerlindeRootSystem;

// Library version as a static nul-terminated string.
const char *verlinde_version(void);

// Message for the last failed call on this thread, or NULL. Free it with
// `verlinde_string_free`.
char *verlinde_last_error_message(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void verlinde_string_free(char *s);

// Creates a root system from a type string such as `"B3"` or `"E8"`.
//
// # Safety
// `type_name` must be a valid nul-terminated string and `out` writable.
enum VerlindeStatus verlinde_root_system_new(const char *type_name,
                                             struct VerlindeRootSystem **out);

// # Safety
// `h` must be NULL or a handle from `verlinde_root_system_new`.
void verlinde_root_system_free(struct VerlindeRootSystem *h);

// # Safety
// `h` must be a live handle and `rank` writable.
enum VerlindeStatus verlinde_root_system_rank(const struct VerlindeRootSystem *h, size_t *rank);

// # Safety
// `h` must be a live handle and `out` writable.
enum VerlindeStatus verlinde_root_system_dual_coxeter(const struct VerlindeRootSystem *h,
                                                      int64_t *out);

// Exact maximum of ε over the LP relaxation for W^⊗k, as a reduced fraction.
//
// # Safety
// `h` must be a live handle, `num` and `den` writable.
enum VerlindeStatus verlinde_lp_epsilon_max(const struct VerlindeRootSystem *h,
                                            uint32_t k,
                                            int64_t *num,
                                            int64_t *den);

// Depth d(l) with its proven bounds. `classical` selects the untruncated
// support computation.
//
// # Safety
// `h` must be a live handle; the three out-pointers must be writable.
enum VerlindeStatus verlinde_depth(const struct VerlindeRootSystem *h,
                                   int64_t level,
                                   bool classical,
                                   uint32_t *depth_out,
                                   uint32_t *lower,
                                   uint32_t *upper);

// Builds the level-l fusion ring.
//
// # Safety
// `h` must be a live handle and `out` writable.
enum VerlindeStatus verlinde_fusion_ring_new(const struct VerlindeRootSystem *h,
                                             uint32_t level,
                                             struct VerlindeFusionRing **out);

// # Safety
// `r` must be NULL or a handle from `verlinde_fusion_ring_new`.
void verlinde_fusion_ring_free(struct VerlindeFusionRing *r);

// Number of basis elements |D_l|.
//
// # Safety
// `r` must be a live handle and `size` writable.
enum VerlindeStatus verlinde_fusion_ring_size(const struct VerlindeFusionRing *r, size_t *size);

// Structure constant N_{ij}^k.
//
// # Safety
// `r` must be a live handle and `out` writable.
enum VerlindeStatus verlinde_fusion_ring_coefficient(const struct VerlindeFusionRing *r,
                                                     size_t i,
                                                     size_t j,
                                                     size_t k,
                                                     uint32_t *out);

// Basis and nonzero structure constants as JSON.
//
// # Safety
// `r` must be a live handle and `json` writable.
enum VerlindeStatus verlinde_fusion_ring_json(const struct VerlindeFusionRing *r, char **json);

// Perron-Frobenius eigenvalue of the stationary inclusion matrix.
//
// # Safety
// `r` must be a live handle and `out` writable.
enum VerlindeStatus verlinde_fusion_ring_pf_eigenvalue(const struct VerlindeFusionRing *r,
                                                       double *out);

// Bratteli tower up to `floors` as JSON.
//
// # Safety
// `r` must be a live handle and `json` writable.
enum VerlindeStatus verlinde_tower_json(const struct VerlindeFusionRing *r,
                                        size_t floors,
                                        char **json);

// Runs the tower property checks. `report` may be NULL when only the
// verdict is wanted.
//
// # Safety
// `r` must be a live handle, `all_pass` writable, `report` NULL or writable.
enum VerlindeStatus verlinde_verify_tower(const struct VerlindeFusionRing *r,
                                          size_t floors,
                                          bool *all_pass,
                                          char **report);

#endif  /* VERLINDE_H */
