/* khoszul C API: Khovanov, pointed Khovanov and Koszul homology of links.
 *
 * Handles are opaque. Every call returns a khz_status; on failure
 * khz_last_error() describes the problem (per thread). Strings returned
 * through out-parameters are owned by the handle and stay valid until the
 * handle is destroyed.
 */
#ifndef KHOSZUL_H
#define KHOSZUL_H

#include <stddef.h>

#if defined(KHOSZUL_BUILDING_LIBRARY)
#define KHZ_API __attribute__((visibility("default")))
#else
#define KHZ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum khz_status {
  KHZ_OK = 0,
  KHZ_E_BAD_PARAM = 1, /* null handle or out-pointer */
  KHZ_E_PARSE = 2,     /* malformed diagram, marking spec or option */
  KHZ_E_INTERNAL = 3,  /* an algebraic invariant failed (d*d != 0, ...) */
  KHZ_E_MEMORY = 4,
  KHZ_E_UNKNOWN = 5
} khz_status;

typedef struct khz_diagram* khz_diagram_t;
typedef struct khz_report* khz_report_t;

typedef struct khz_options {
  const char* coefficients; /* "Z", "Q", "F<p>", "Zhalf"; NULL means Z */
  int reduced;              /* nonzero: reduced complex at the basepoint */
  const char* variant;      /* "standard" or "doubled"; NULL means standard */
  long khi_dim;             /* > 0 overrides the catalog value in verify */
  int timings;              /* nonzero: include timings_ms in the report */
} khz_options;

KHZ_API void khz_options_init(khz_options* opts);

/* Diagrams */
KHZ_API khz_status khz_diagram_from_pd(const char* text, khz_diagram_t* out);
KHZ_API khz_status khz_diagram_from_json(const char* text, khz_diagram_t* out);
KHZ_API khz_status khz_diagram_from_braid(const char* word, int strands, khz_diagram_t* out);
KHZ_API khz_status khz_diagram_from_catalog(const char* id, khz_diagram_t* out);
KHZ_API khz_status khz_diagram_mirror(khz_diagram_t d, khz_diagram_t* out);
/* "arc:off,arc:off,..." or "one-per-component". Replaces existing markings. */
KHZ_API khz_status khz_diagram_set_points(khz_diagram_t d, const char* spec);
/* "arc" or "arc:off"; NULL clears the basepoint. */
KHZ_API khz_status khz_diagram_set_basepoint(khz_diagram_t d, const char* spec);
KHZ_API khz_status khz_diagram_crossings(khz_diagram_t d, size_t* n);
KHZ_API khz_status khz_diagram_components(khz_diagram_t d, size_t* n);
KHZ_API khz_status khz_diagram_render_pd(khz_diagram_t d, const char** text);
KHZ_API khz_status khz_diagram_render_json(khz_diagram_t d, const char** text);
KHZ_API void khz_diagram_destroy(khz_diagram_t d);

/* Computations; opts may be NULL for defaults. */
KHZ_API khz_status khz_run_kh(khz_diagram_t d, const khz_options* opts, khz_report_t* out);
KHZ_API khz_status khz_run_pointed(khz_diagram_t d, const khz_options* opts, khz_report_t* out);
KHZ_API khz_status khz_run_koszul(khz_diagram_t d, const khz_options* opts, khz_report_t* out);
KHZ_API khz_status khz_run_ss(khz_diagram_t d, const khz_options* opts, khz_report_t* out);
KHZ_API khz_status khz_run_verify(khz_diagram_t d, const khz_options* opts, khz_report_t* out);

/* Reports */
KHZ_API khz_status khz_report_json(khz_report_t r, const char** json);
KHZ_API khz_status khz_report_text(khz_report_t r, const char** text);
/* 0 when every requested verification passed or was unknown, 1 otherwise. */
KHZ_API khz_status khz_report_exit_code(khz_report_t r, int* code);
KHZ_API void khz_report_destroy(khz_report_t r);

KHZ_API const char* khz_last_error(void);
KHZ_API const char* khz_status_string(khz_status s);
KHZ_API const char* khz_version(void);

#ifdef __cplusplus
}
#endif

#endif /* KHOSZUL_H */
