#ifndef QVOL_QVOL_H
#define QVOL_QVOL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QVOL_BUILDING)
#    define QVOL_API __declspec(dllexport)
#  else
#    define QVOL_API __declspec(dllimport)
#  endif
#else
#  define QVOL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qvol_status {
  QVOL_OK = 0,
  QVOL_E_DOMAIN = 1,
  QVOL_E_BRANCH = 2,
  QVOL_E_TOLERANCE = 3,
  QVOL_E_CONTINUATION = 4,
  QVOL_E_DEGENERATE = 5,
  QVOL_E_PRECISION = 6,
  QVOL_E_CONSISTENCY = 7,
  QVOL_E_INSUFFICIENT_DATA = 8,
  QVOL_E_INTERNAL = 9,
  QVOL_E_INVALID_ARGUMENT = 10,
  QVOL_E_NON_FINITE = 11,
  QVOL_E_EXCEPTIONAL = 12
} qvol_status;

/* Every function taking (errmsg, errmsg_len) writes a NUL-terminated message
   there on failure; errmsg may be NULL. */

typedef struct qvol_manifold qvol_manifold;  /* K_{twist}(p, q) */
typedef struct qvol_geometry qvol_geometry;  /* solved hyperbolic structure */
typedef struct qvol_report qvol_report;      /* JSON (and optional CSV) text plus a pass flag */

typedef enum qvol_precision { QVOL_PRECISION_DOUBLE = 0, QVOL_PRECISION_EXTENDED = 1 } qvol_precision;
typedef enum qvol_expansion { QVOL_EXPANSION_CANONICAL = 0, QVOL_EXPANSION_ALTERNATE = 1 } qvol_expansion;

/* Zero-initialized options select double precision, QVOL_THREADS or all cores,
   the fast reduction and the canonical expansion. */
typedef struct qvol_rt_options {
  int precision;
  int threads;
  int deterministic;
  int expansion;
} qvol_rt_options;

typedef struct qvol_rt_value {
  int r;
  double re, im;
  double log_abs;
  double growth_rate;
  double seconds;
  long long terms_summed;
  double condition;
} qvol_rt_value;

QVOL_API const char* qvol_version(void);
QVOL_API const char* qvol_status_name(int status);

QVOL_API int qvol_manifold_create(long long p, long long q, long long twist, qvol_manifold** out, char* errmsg,
                                  size_t errmsg_len);
QVOL_API void qvol_manifold_destroy(qvol_manifold* m);
/* 1 when hyperbolic; otherwise 0 and the reason is copied to reason */
QVOL_API int qvol_manifold_is_hyperbolic(const qvol_manifold* m, char* reason, size_t reason_len);

/* residual_tol <= 0 keeps the default of 1e-12 */
QVOL_API int qvol_geometry_solve(const qvol_manifold* m, double residual_tol, qvol_geometry** out, char* errmsg,
                                 size_t errmsg_len);
QVOL_API void qvol_geometry_destroy(qvol_geometry* g);
QVOL_API double qvol_geometry_volume(const qvol_geometry* g);
QVOL_API double qvol_geometry_cs(const qvol_geometry* g);
QVOL_API double qvol_geometry_residual(const qvol_geometry* g);
QVOL_API int qvol_geometry_is_geometric(const qvol_geometry* g);
/* i in 0..4 for c_1..c_5 */
QVOL_API int qvol_geometry_shape(const qvol_geometry* g, int i, double* re, double* im);
/* owned by g */
QVOL_API const char* qvol_geometry_json(const qvol_geometry* g);
QVOL_API const char* qvol_geometry_csv(const qvol_geometry* g);

QVOL_API int qvol_rt(const qvol_manifold* m, int r, const qvol_rt_options* opt, qvol_rt_value* out, char* errmsg,
                     size_t errmsg_len);
QVOL_API int qvol_tv(const qvol_manifold* m, int r, const qvol_rt_options* opt, double* out, char* errmsg,
                     size_t errmsg_len);
QVOL_API int qvol_colored_jones(long long twist, int color, int r, double* re, double* im, char* errmsg,
                                size_t errmsg_len);

QVOL_API int qvol_verify(const qvol_manifold* m, int r_min, int r_max, const qvol_rt_options* opt, qvol_report** out,
                         char* errmsg, size_t errmsg_len);
QVOL_API int qvol_identities(uint64_t seed, int samples, qvol_report** out, char* errmsg, size_t errmsg_len);
QVOL_API int qvol_appendix(qvol_report** out, char* errmsg, size_t errmsg_len);

QVOL_API void qvol_report_destroy(qvol_report* rep);
QVOL_API int qvol_report_passed(const qvol_report* rep);
/* owned by rep; the CSV is empty for reports without rows */
QVOL_API const char* qvol_report_json(const qvol_report* rep);
QVOL_API const char* qvol_report_csv(const qvol_report* rep);

#ifdef __cplusplus
}
#endif

#endif
