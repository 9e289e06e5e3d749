#ifndef MAGRES_MAGRES_H
#define MAGRES_MAGRES_H

/* C interface of the magres library.
 *
 * Every fallible call returns a magres_status and writes its result through
 * an out parameter. On failure the message is available from
 * magres_last_error() on the calling thread until the next call on that
 * thread. Handles are opaque; free each with its own *_free function.
 * Strings returned through char** are owned by the caller and must be
 * released with magres_string_free(). */

#include <stddef.h>

#if defined(MAGRES_BUILDING_LIBRARY)
#define MAGRES_API __attribute__((visibility("default")))
#else
#define MAGRES_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum magres_status {
  MAGRES_OK = 0,
  MAGRES_ERR_INVALID = 1,    /* bad argument or config */
  MAGRES_ERR_IO = 2,         /* file could not be read or written */
  MAGRES_ERR_NUMERICAL = 3,  /* solver failure or structural check violated */
  MAGRES_ERR_TRUNCATION = 4, /* domain or sector range too small for the request */
  MAGRES_ERR_INTERNAL = 5
} magres_status;

typedef struct magres_field magres_field;
typedef struct magres_table magres_table;

MAGRES_API const char* magres_version(void);
MAGRES_API const char* magres_last_error(void);
MAGRES_API const char* magres_status_name(magres_status status);
MAGRES_API void magres_string_free(char* s);
/* 64-bit FNV-1a of a string as 16 hex digits (manifest ids). */
MAGRES_API magres_status magres_fingerprint(const char* text, char** out);

/* ---- fields ---------------------------------------------------------- */

MAGRES_API magres_status magres_field_load(const char* path, magres_field** out);
MAGRES_API magres_status magres_field_parse(const char* json, magres_field** out);
MAGRES_API void magres_field_free(magres_field* field);

/* Total flux (1/2pi) int B dx; +inf for fields filling the plane. */
MAGRES_API magres_status magres_field_flux(const magres_field* field, double* out);
MAGRES_API magres_status magres_field_value(const magres_field* field, double r, double* out);
/* Angular potential a(r) of the radial gauge, r > 0. */
MAGRES_API magres_status magres_field_potential(const magres_field* field, double r, double* out);
/* Normalized config JSON. */
MAGRES_API magres_status magres_field_json(const magres_field* field, char** out);

/* ---- tables ---------------------------------------------------------- */

MAGRES_API size_t magres_table_rows(const magres_table* t);
MAGRES_API size_t magres_table_cols(const magres_table* t);
/* NULL when col is out of range. Valid until the table is freed. */
MAGRES_API const char* magres_table_column(const magres_table* t, size_t col);
/* Numeric cell (integers are converted); MAGRES_ERR_INVALID for text cells. */
MAGRES_API magres_status magres_table_get(const magres_table* t, size_t row, size_t col, double* out);
/* Any cell as text, formatted as in the CSV. */
MAGRES_API magres_status magres_table_text(const magres_table* t, size_t row, size_t col, char** out);
/* Number of '#' comment lines after the rows, and one of them. */
MAGRES_API size_t magres_table_notes(const magres_table* t);
MAGRES_API const char* magres_table_note(const magres_table* t, size_t i);
MAGRES_API magres_status magres_table_csv(const magres_table* t, char** out);
MAGRES_API magres_status magres_table_json(const magres_table* t, char** out);
MAGRES_API void magres_table_free(magres_table* t);

/* ---- spectrum -------------------------------------------------------- */

typedef enum magres_boundary {
  MAGRES_BOUNDARY_AUTO = 0, /* Neumann wall for island fields, Dirichlet otherwise */
  MAGRES_BOUNDARY_DIRICHLET = 1,
  MAGRES_BOUNDARY_NEUMANN = 2
} magres_boundary;

typedef struct magres_spectrum_options {
  double b;        /* field scale; ignored when h > 0 */
  double h;        /* > 0: b = 1/h and values are reported as h^2 lambda */
  int levels;      /* per sector, or distinct levels when merged */
  int m_lo, m_hi;  /* sector range; m_lo > m_hi selects the default range */
  double r_max;    /* <= 0: 20, or the outer wall for island fields */
  size_t grid_n;
  magres_boundary boundary;
  int richardson;
  int merged; /* 0: rows per (m, n); 1: lowest distinct levels over all sectors */
} magres_spectrum_options;

MAGRES_API void magres_spectrum_options_init(magres_spectrum_options* o);
/* Columns (m, n, value) or, merged, (level, value, m). */
MAGRES_API magres_status magres_spectrum(const magres_field* field, const magres_spectrum_options* o,
                                         magres_table** out);

/* ---- step band ------------------------------------------------------- */

typedef struct magres_band_options {
  double a;
  double resolution; /* grid step 0.005 / resolution */
  double xi_lo, xi_hi;
  double table_step; /* <= 0: no band table */
} magres_band_options;

MAGRES_API void magres_band_options_init(magres_band_options* o);
/* constants: one row (a, beta, zeta, mu2, phi0, phi0p, C1, C2, L, N); C1 and
 * C2 are NaN for a = -1 where they are not defined. samples: (xi, mu), may
 * be NULL on input to skip it. a = -1 and a = 1 run the validation mode. */
MAGRES_API magres_status magres_band(const magres_band_options* o, magres_table** constants,
                                     magres_table** samples);

/* ---- resonances ------------------------------------------------------ */

typedef struct magres_resonance_options {
  const double* h; /* h values, each > 0 */
  size_t h_count;
  int m_lo, m_hi;
  /* Search window in units of h: Re z in [re_lo h, re_hi h], Im z in [im_lo h, im_hi h]. */
  double re_lo, re_hi, im_lo, im_hi;
  double theta1, theta2;
  double R1, T0, r_max; /* 0: derived from the support radius */
  size_t grid_n;
  double tol;
} magres_resonance_options;

MAGRES_API void magres_resonance_options_init(magres_resonance_options* o);
/* Rows (h, m, re, im, drift, theta1, theta2, grid_n, continuum_ratio). With
 * three or more h values the notes carry a least-squares fit of log|Im z|
 * against 1/h over the resonance nearest the window center of each h. */
MAGRES_API magres_status magres_resonances(const magres_field* field, const magres_resonance_options* o,
                                           magres_table** out);

/* ---- quasimodes ------------------------------------------------------ */

typedef struct magres_quasimode_options {
  const char* model; /* landau, anharmonic, well or island */
  int n, m;
  const double* b;
  size_t b_count;
  double r0, delta; /* r0 <= 0: 1, or rho2 for island */
  double r_max; /* <= 0: 20 (rho2 for island) */
  size_t grid_n;
  double gamma;      /* anharmonic */
  double b0;         /* well */
  double rho1, rho2; /* island */
} magres_quasimode_options;

MAGRES_API void magres_quasimode_options_init(magres_quasimode_options* o);
/* Rows (model, n, m, b, r0, delta, norm_defect, residual, eigenvalue,
 * defect_bound); notes carry the fitted slope of log residual against b. */
MAGRES_API magres_status magres_quasimode(const magres_quasimode_options* o, magres_table** out);

typedef struct magres_tz_window {
  double center, h, c, r0, alpha;
  double S, R, half_width, depth;
} magres_tz_window;

/* alpha <= 0 selects 2c. */
MAGRES_API magres_status magres_tz_window_eval(double center, double h, double c, double r0, double alpha,
                                               magres_tz_window* out);
MAGRES_API magres_status magres_tz_crossover(double c, double r0, double* out);

/* ---- expansions and comparisons -------------------------------------- */

typedef struct magres_compare_options {
  const char* model; /* landau, anharmonic, well or island */
  int n;
  const double* h; /* island: field scales b instead (h = 1/b) */
  size_t h_count;
  double r_max;
  size_t grid_n;
  double gamma;
  double b0, detH, trSqrtH;
  double rho1, rho2;
  double theta1, theta2;     /* landau only */
  const magres_field* field; /* landau only; NULL: unit disk */
} magres_compare_options;

MAGRES_API void magres_compare_options_init(magres_compare_options* o);
/* Rows (model, n, h, expansion, direct, diff, ratio); notes carry the
 * observed and expected order. */
MAGRES_API magres_status magres_compare(const magres_compare_options* o, magres_table** out);

/* Real-part expansion of one model. Extras not used by the model are ignored. */
typedef struct magres_expansion {
  const char* model;
  int n;
  double h;
  double gamma;
  const double* lambda; /* anharmonic Lambda_0.. */
  size_t lambda_count;
  double beta, C1, C2, k0, k2;
  double b0, detH, trSqrtH;
  const double* ell; /* island Dirichlet eigenvalues */
  size_t ell_count;
} magres_expansion;

MAGRES_API void magres_expansion_init(magres_expansion* e);
MAGRES_API magres_status magres_expansion_real_part(const magres_expansion* e, double* out);

#ifdef __cplusplus
}
#endif

#endif
