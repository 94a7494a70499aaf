/*
 * hyperd1 C API.
 *
 * Opaque handles own their data; every handle returned through an out
 * parameter must be released with the matching *_free function. Functions
 * return HD1_OK or an error status; on error the out parameters are left
 * untouched and hd1_last_error() describes the failure for the calling
 * thread. Handles are immutable after creation and may be shared between
 * threads.
 */
#ifndef HYPERD1_H
#define HYPERD1_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(HD1_BUILDING_LIBRARY)
#    define HD1_API __declspec(dllexport)
#  else
#    define HD1_API __declspec(dllimport)
#  endif
#else
#  define HD1_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hd1_status {
  HD1_OK = 0,
  HD1_ERR_INVALID_ARGUMENT = 1,
  HD1_ERR_PARSE = 2,
  HD1_ERR_INVALID_METRIC = 3,
  HD1_ERR_INDEX_OUT_OF_RANGE = 4,
  HD1_ERR_DUPLICATE_INDEX = 5,
  HD1_ERR_EMPTY_SET = 6,
  HD1_ERR_SPACE_MISMATCH = 7,
  HD1_ERR_INVALID_GRAPH = 8,
  HD1_ERR_COMPONENT_MISSES_SET = 9,
  HD1_ERR_VERTEX_NOT_COVERED = 10,
  HD1_ERR_TOO_LARGE = 11,
  HD1_ERR_CAP_EXCEEDED = 12,
  HD1_ERR_NOT_SEPARATED = 13,
  HD1_ERR_NOT_A_TREE = 14,
  HD1_ERR_DEGENERATE_LADDER = 15,
  HD1_ERR_GENERATOR_FAILURE = 16,
  HD1_ERR_NO_CONTRACTION_INFO = 17,
  HD1_ERR_CERTIFICATE_UNAVAILABLE = 18,
  HD1_ERR_SELFTEST_FAILED = 19,
  HD1_ERR_INTERNAL = 99
} hd1_status;

typedef struct hd1_space hd1_space;
typedef struct hd1_report hd1_report;

typedef struct hd1_caps {
  size_t terminal_cap;
  size_t pool_cap;
  size_t oracle_cap;
} hd1_caps;

/* Options for hd1_run. Zero-initialize, then call hd1_run_options_init. */
typedef struct hd1_run_options {
  int verify;
  int diagnostic;
  int timing;
  unsigned jobs;
  unsigned long long seed;
  int has_depth;
  size_t depth;
  int has_epsilon;
  double epsilon;
  hd1_caps caps;
} hd1_run_options;

HD1_API const char* hd1_version(void);
HD1_API const char* hd1_status_name(hd1_status status);
/* Message for the last failure on this thread; never NULL. */
HD1_API const char* hd1_last_error(void);
HD1_API void hd1_default_caps(hd1_caps* caps);
HD1_API void hd1_run_options_init(hd1_run_options* options);

/* --- spaces ------------------------------------------------------------ */

HD1_API hd1_status hd1_space_create_line(const double* coords, size_t n, hd1_space** out);
/* `dist` is row-major n*n. */
HD1_API hd1_status hd1_space_create_matrix(const double* dist, size_t n, hd1_space** out);
/* `coords` is row-major n*dim. */
HD1_API hd1_status hd1_space_create_euclidean(const double* coords, size_t n, size_t dim, hd1_space** out);
HD1_API hd1_status hd1_space_from_json(const char* json, hd1_space** out);
HD1_API void hd1_space_free(hd1_space* space);
HD1_API size_t hd1_space_size(const hd1_space* space);
HD1_API hd1_status hd1_space_distance(const hd1_space* space, size_t i, size_t j, double* out);

/* --- distances between finite sets (index arrays into `space`) ---------- */

HD1_API hd1_status hd1_hausdorff(const hd1_space* space, const size_t* a, size_t na, const size_t* b,
                                 size_t nb, double* out);
/* Line spaces only. */
HD1_API hd1_status hd1_d1_line(const hd1_space* space, const size_t* a, size_t na, const size_t* b, size_t nb,
                               double* out);
/* `pool` may be NULL when npool == 0; `caps` may be NULL for defaults. */
HD1_API hd1_status hd1_d1_exact(const hd1_space* space, const size_t* a, size_t na, const size_t* b, size_t nb,
                                const size_t* pool, size_t npool, const hd1_caps* caps, double* out);
HD1_API hd1_status hd1_mst_upper_bound(const hd1_space* space, const size_t* a, size_t na, const size_t* b,
                                       size_t nb, double* out);
HD1_API hd1_status hd1_separation_lower_bound(const hd1_space* space, const size_t* a, size_t na,
                                              double epsilon, double* out);

/* --- JSON command runner ------------------------------------------------ */

/* Runs a CLI subcommand on a JSON document. On HD1_OK (and on
 * HD1_ERR_SELFTEST_FAILED) *out receives a report. `input_json` may be NULL
 * for commands that take no input. */
HD1_API hd1_status hd1_run(const char* command, const char* input_json, const hd1_run_options* options,
                           hd1_report** out);
/* Pretty-printed report JSON, owned by the report. */
HD1_API const char* hd1_report_json(const hd1_report* report);
HD1_API void hd1_report_free(hd1_report* report);

/* Exit code the CLI uses for a status: 0 ok, 1 selftest/internal failure,
 * 2 input validation error, 3 cap exceeded. */
HD1_API int hd1_exit_code(hd1_status status);

#ifdef __cplusplus
}
#endif

#endif /* HYPERD1_H */
