/* Exercises the shared library through its C header only. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "magres/magres.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

#define EXPECT_OK(call)                                                                  \
  do {                                                                                   \
    magres_status s_ = (call);                                                           \
    if (s_ != MAGRES_OK) {                                                               \
      fprintf(stderr, "%s:%d: %s -> %s: %s\n", __FILE__, __LINE__, #call, magres_status_name(s_), \
              magres_last_error());                                                      \
      ++failures;                                                                        \
    }                                                                                    \
  } while (0)

static double cell(const magres_table* t, size_t row, size_t col) {
  double v = NAN;
  EXPECT_OK(magres_table_get(t, row, col, &v));
  return v;
}

static void test_fields(void) {
  magres_field* f = NULL;
  EXPECT_OK(magres_field_parse("{\"kind\": \"constant_disk\", \"params\": {\"r0\": 1}, \"R0\": 1}", &f));
  double v = 0.0;
  EXPECT_OK(magres_field_flux(f, &v));
  EXPECT(fabs(v - 0.5) < 1e-15);
  EXPECT_OK(magres_field_potential(f, 2.0, &v));
  EXPECT(fabs(v - 0.25) < 1e-15);
  EXPECT_OK(magres_field_value(f, 0.5, &v));
  EXPECT(v == 1.0);
  char* json = NULL;
  EXPECT_OK(magres_field_json(f, &json));
  EXPECT(json != NULL && strstr(json, "constant_disk") != NULL);
  magres_string_free(json);
  magres_field_free(f);

  f = (magres_field*)0x1;
  EXPECT(magres_field_load("/no/such/config.json", &f) == MAGRES_ERR_IO);
  EXPECT(f == NULL);
  EXPECT(strstr(magres_last_error(), "/no/such/config.json") != NULL);
  EXPECT(magres_field_parse("{\"kind\": \"square\"}", &f) == MAGRES_ERR_INVALID);
  EXPECT(magres_field_parse(NULL, &f) == MAGRES_ERR_INVALID);
  EXPECT(magres_field_flux(NULL, &v) == MAGRES_ERR_INVALID);

  /* the error is cleared by the next successful call */
  EXPECT_OK(magres_field_load(MAGRES_CONFIG_DIR "/island.json", &f));
  EXPECT(strlen(magres_last_error()) == 0);
  magres_field_free(f);
}

static void test_spectrum(void) {
  magres_field* f = NULL;
  EXPECT_OK(magres_field_load(MAGRES_CONFIG_DIR "/landau.json", &f));
  magres_spectrum_options o;
  magres_spectrum_options_init(&o);
  o.m_lo = 0;
  o.m_hi = 1;
  magres_table* t = NULL;
  EXPECT_OK(magres_spectrum(f, &o, &t));
  EXPECT(magres_table_rows(t) == 6);
  EXPECT(magres_table_cols(t) == 3);
  EXPECT(strcmp(magres_table_column(t, 2), "value") == 0);
  EXPECT(magres_table_column(t, 3) == NULL);
  for (size_t i = 0; i < 3; ++i) {
    EXPECT(cell(t, i, 0) == 0.0);
    EXPECT(fabs(cell(t, i, 2) - (2.0 * i + 1.0)) < 1e-5);
  }
  char* text = NULL;
  EXPECT_OK(magres_table_text(t, 0, 2, &text));
  EXPECT(text != NULL && strchr(text, 'e') != NULL);
  magres_string_free(text);
  char* csv = NULL;
  EXPECT_OK(magres_table_csv(t, &csv));
  EXPECT(strstr(csv, "m,n,value\n") != NULL);
  magres_string_free(csv);
  double v = 0.0;
  EXPECT(magres_table_get(t, 99, 0, &v) == MAGRES_ERR_INVALID);
  magres_table_free(t);

  o.merged = 1;
  o.m_lo = 1;
  o.m_hi = 0;
  EXPECT_OK(magres_spectrum(f, &o, &t));
  EXPECT(magres_table_rows(t) == 3);
  EXPECT(fabs(cell(t, 2, 1) - 5.0) < 1e-5);
  magres_table_free(t);

  o.levels = 0;
  EXPECT(magres_spectrum(f, &o, &t) == MAGRES_ERR_INVALID);
  EXPECT(t == NULL);
  magres_field_free(f);

  /* the unit disk has no bound states below the wall: truncation */
  EXPECT_OK(magres_field_load(MAGRES_CONFIG_DIR "/disk.json", &f));
  magres_spectrum_options_init(&o);
  o.grid_n = 1000;
  EXPECT(magres_spectrum(f, &o, &t) == MAGRES_ERR_TRUNCATION);
  magres_field_free(f);
}

static void test_band(void) {
  magres_band_options o;
  magres_band_options_init(&o);
  o.a = -1.0;
  o.table_step = 0.5;
  magres_table *c = NULL, *s = NULL;
  EXPECT_OK(magres_band(&o, &c, &s));
  EXPECT(fabs(cell(c, 0, 1) - 0.590106) < 1e-4);
  EXPECT(isnan(cell(c, 0, 6)));
  EXPECT(magres_table_rows(s) == 11);
  magres_table_free(c);
  magres_table_free(s);

  o.a = 1.0;
  EXPECT(magres_band(&o, &c, NULL) == MAGRES_ERR_NUMERICAL);
  EXPECT(strstr(magres_last_error(), "flat") != NULL);
  o.a = 0.0;
  EXPECT(magres_band(&o, &c, NULL) == MAGRES_ERR_INVALID);
}

static void test_small_calls(void) {
  magres_tz_window w;
  EXPECT_OK(magres_tz_window_eval(0.1, 0.1, 0.2, 1.0, 0.0, &w));
  EXPECT(fabs(w.half_width - 100.0 * exp(-1.0)) < 1e-12);
  EXPECT(fabs(w.depth - 1000.0 * exp(-2.0)) < 1e-11);
  EXPECT(w.alpha == 0.4);
  double hs = 0.0;
  EXPECT_OK(magres_tz_crossover(0.2, 1.0, &hs));
  EXPECT(hs > 0.0 && hs < 0.05);
  EXPECT(magres_tz_window_eval(0.1, -1.0, 0.2, 1.0, 0.0, &w) == MAGRES_ERR_INVALID);

  magres_expansion e;
  magres_expansion_init(&e);
  e.model = "well";
  e.h = 0.1;
  double v = 0.0;
  EXPECT_OK(magres_expansion_real_part(&e, &v));
  EXPECT(fabs(v - 0.14) < 1e-15);
  e.model = "nonsense";
  EXPECT(magres_expansion_real_part(&e, &v) == MAGRES_ERR_INVALID);

  char* id = NULL;
  EXPECT_OK(magres_fingerprint("a", &id));
  EXPECT(strcmp(id, "af63dc4c8601ec8c") == 0);
  magres_string_free(id);
  EXPECT(strlen(magres_version()) > 0);
}

static void test_quasimode_and_compare(void) {
  const double bs[] = {9.0, 16.0, 25.0};
  magres_quasimode_options q;
  magres_quasimode_options_init(&q);
  q.b = bs;
  q.b_count = 3;
  magres_table* t = NULL;
  EXPECT_OK(magres_quasimode(&q, &t));
  EXPECT(magres_table_rows(t) == 3);
  EXPECT(cell(t, 2, 7) < cell(t, 0, 7));
  EXPECT(magres_table_notes(t) == 2);
  EXPECT(strstr(magres_table_note(t, 0), "slope") != NULL);
  magres_table_free(t);
  q.model = "torus";
  EXPECT(magres_quasimode(&q, &t) == MAGRES_ERR_INVALID);

  const double hs[] = {0.1, 0.05};
  magres_compare_options c;
  magres_compare_options_init(&c);
  c.h = hs;
  c.h_count = 2;
  EXPECT(magres_compare(&c, &t) == MAGRES_ERR_INVALID);
  c.model = "step";
  EXPECT(magres_compare(&c, &t) == MAGRES_ERR_INVALID);
}

int main(void) {
  test_fields();
  test_spectrum();
  test_band();
  test_small_calls();
  test_quasimode_and_compare();
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("capi: all checks passed\n");
  return 0;
}
