/* C interface to the mixnorm library. All strings are UTF-8. Strings returned
 * through char** must be released with mn_string_free. */
#ifndef MIXNORM_H
#define MIXNORM_H

#include <stddef.h>

#if defined(MN_BUILDING_LIBRARY)
#define MN_API __attribute__((visibility("default")))
#else
#define MN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  MN_OK = 0,
  MN_ERR_SPEC_PARSE = 1,
  MN_ERR_UNSUPPORTED_DIMENSION = 2,
  MN_ERR_UNKNOWN_SUITE = 3,
  MN_ERR_UNKNOWN_FAMILY = 4,
  MN_ERR_NOT_ADMISSIBLE = 5,
  MN_ERR_NEGATIVE_GAMMA = 6,
  MN_ERR_NON_FINITE_SAMPLE = 7,
  MN_ERR_QUADRATURE_FAILURE = 8,
  MN_ERR_DEGENERATE_FIT = 9,
  MN_ERR_INVALID_ARGUMENT = 10,
  MN_ERR_INTERNAL = 100
} mn_status;

typedef enum {
  MN_NORM_MIXED = 0,                   /* L^{p2}(L^{p1}) */
  MN_NORM_MIXED_WEAK = 1,              /* L^{p,inf} */
  MN_NORM_ITERATED_WEAK = 2,           /* L^{p2,inf}(L^{p1,inf}) */
  MN_NORM_OUTER_STRONG_INNER_WEAK = 3, /* L^{p2}(L^{p1,inf}) */
  MN_NORM_OUTER_WEAK_INNER_STRONG = 4  /* L^{p2,inf}(L^{p1}) */
} mn_norm_family;

typedef enum { MN_METHOD_CLOSED_FORM = 0, MN_METHOD_LAMBDA_SEARCH = 1, MN_METHOD_GRID_EXACT = 2 } mn_method;

typedef struct {
  double value; /* +inf when the norm diverges */
  mn_method method;
  double err_bound;
  int has_lambda;
  double maximizing_lambda;
} mn_norm_result;

typedef struct mn_func mn_func;

/* Message of the last failed call on this thread; empty after success. */
MN_API const char* mn_last_error(void);
MN_API const char* mn_status_name(mn_status s);
MN_API void mn_string_free(char* s);

/* Accepts a JSON function spec or the shortcut "constant-indicator". */
MN_API mn_status mn_func_from_json(const char* spec, mn_func** out);
MN_API void mn_func_free(mn_func* f);
MN_API mn_status mn_func_to_json(const mn_func* f, char** out);

/* p is an exponent pair such as "2,2", "inf,3/2". */
MN_API mn_status mn_norm(const mn_func* f, mn_norm_family family, const char* p, mn_norm_result* out);
MN_API mn_status mn_norm_result_json(const mn_norm_result* r, char** out);

/* Phi(lambda) = ||chi_{f > lambda}||_{L^p} at n ascending lambdas; exact[i] is 1
 * when the value came from a closed form. Either output may be NULL. */
MN_API mn_status mn_curve(const mn_func* f, const char* p, const double* lambdas, size_t n, double* phi,
                          int* exact);

/* Runs a suite ("all" for every suite). config_json may be NULL for defaults;
 * seed overrides the config seed when nonzero. Counts may be NULL. */
MN_API mn_status mn_verify(const char* suite, const char* config_json, unsigned long long seed,
                           char** report_json, size_t* passed, size_t* failed, size_t* indeterminate);

/* Counterexample family run as JSON. p and q may be NULL when the family has
 * defaults. */
MN_API mn_status mn_counterexample(const char* family, const char* p, const char* q, const double* Ns, size_t n,
                                   char** out_json);

/* Newline-separated names. */
MN_API mn_status mn_suite_names(char** out);
MN_API mn_status mn_family_names(char** out);

#ifdef __cplusplus
}
#endif

#endif
