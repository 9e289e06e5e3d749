#include "magres/magres.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "magres/cscale.hpp"
#include "magres/errors.hpp"
#include "magres/field.hpp"
#include "magres/levels.hpp"
#include "magres/numerics.hpp"
#include "magres/parallel.hpp"
#include "magres/quasimode.hpp"
#include "magres/radial.hpp"
#include "magres/report.hpp"
#include "magres/stepband.hpp"

struct magres_field {
  magres::FieldSpec spec;
  magres::FieldProfile profile;
};

struct magres_table {
  magres::Table table;
};

namespace {

using namespace magres;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

thread_local std::string last_error;

template <class F>
magres_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return MAGRES_OK;
  } catch (const ValidationError& e) {
    last_error = e.what();
    return MAGRES_ERR_INVALID;
  } catch (const IoError& e) {
    last_error = e.what();
    return MAGRES_ERR_IO;
  } catch (const TruncationError& e) {
    last_error = e.what();
    return MAGRES_ERR_TRUNCATION;
  } catch (const NumericalError& e) {
    last_error = e.what();
    return MAGRES_ERR_NUMERICAL;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return MAGRES_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MAGRES_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return MAGRES_ERR_INTERNAL;
  }
}

void need(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

template <class T>
void need_ptr(const T* p, const char* name) {
  if (p == nullptr) throw ValidationError(std::string(name) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::vector<double> as_vector(const double* p, std::size_t count, const char* name) {
  need(count == 0 || p != nullptr, std::string(name) + " list is NULL");
  return std::vector<double>(p, p + count);
}

magres_table* wrap(Table t) { return new magres_table{std::move(t)}; }

std::string fixed_note(const std::string& key, double v) { return key + "=" + format_double(v); }

const Cell& cell_at(const magres_table* t, std::size_t row, std::size_t col) {
  need_ptr(t, "table");
  need(row < t->table.rows.size() && col < t->table.columns.size(), "table index out of range");
  return t->table.rows[row][col];
}

// ---- spectrum -----------------------------------------------------------

Table run_spectrum(const magres_field& field, const magres_spectrum_options& o) {
  need(o.levels >= 1, "levels must be >= 1");
  const bool semiclassical = o.h > 0.0;
  const double b = semiclassical ? 1.0 / o.h : o.b;
  need(std::isfinite(b) && b > 0.0, "field scale b must be positive (or give h > 0)");
  const bool island = field.spec.kind == FieldKind::island_annular;

  Boundary boundary = Boundary::dirichlet_far;
  if (o.boundary == MAGRES_BOUNDARY_NEUMANN || (o.boundary == MAGRES_BOUNDARY_AUTO && island))
    boundary = Boundary::neumann_far;
  else
    need(o.boundary == MAGRES_BOUNDARY_AUTO || o.boundary == MAGRES_BOUNDARY_DIRICHLET, "unknown boundary code");

  double r_max = o.r_max;
  if (!(r_max > 0.0)) r_max = island ? field.spec.param_or("rho2", field.spec.R0) : 20.0;
  const auto k = static_cast<std::size_t>(o.levels);
  const SectorRange range = o.m_lo > o.m_hi ? default_sector_range(k - 1) : SectorRange{o.m_lo, o.m_hi};
  // An artificial Dirichlet wall must sit in the classically forbidden region;
  // a Neumann wall is part of the problem.
  FiberSolveOptions opts{RadialGrid(r_max, o.grid_n), boundary, o.richardson != 0,
                         boundary == Boundary::dirichlet_far};
  auto sweep = sector_sweep(field.profile, b, k, range, opts);
  const double scale = semiclassical ? o.h * o.h : 1.0;

  Table t;
  t.preamble.push_back("field: " + std::string(to_string(field.spec.kind)));
  t.preamble.push_back(fixed_note("b", b) + (semiclassical ? ", values are h^2 lambda" : ""));
  t.preamble.push_back("grid: r_max=" + format_double(r_max) + ", N=" + std::to_string(o.grid_n) +
                       (boundary == Boundary::neumann_far ? ", neumann" : ", dirichlet") +
                       (o.richardson ? ", richardson" : ""));
  if (!o.merged) {
    std::sort(sweep.begin(), sweep.end(),
              [](const Level& x, const Level& y) { return x.m != y.m ? x.m < y.m : x.index < y.index; });
    t.columns = {"m", "n", "value"};
    for (const auto& l : sweep)
      t.add_row({std::int64_t{l.m}, static_cast<std::int64_t>(l.index), l.value * scale});
    return t;
  }

  const auto merged = merge_distinct(sweep, k);
  if (merged.size() < k) throw TruncationError("sector range yields fewer than the requested distinct levels");
  // A level of a sector outside the range would first show up in the edge
  // sectors; values there that duplicate a kept level are harmless.
  const double top = merged.back().value;
  for (const auto& l : sweep) {
    if (l.m != range.lo && l.m != range.hi) continue;
    if (l.value > top + 1e-8 * (1.0 + std::abs(top))) continue;
    const bool duplicate = std::any_of(merged.begin(), merged.end(), [&](const Level& kept) {
      return std::abs(kept.value - l.value) <= 1e-8 * (1.0 + std::abs(l.value));
    });
    if (!duplicate)
      throw TruncationError("edge sector m=" + std::to_string(l.m) + " reaches level " + format_double(l.value) +
                            " below the highest requested level; widen the sector range");
  }
  t.columns = {"level", "value", "m"};
  for (std::size_t i = 0; i < merged.size(); ++i)
    t.add_row({static_cast<std::int64_t>(i), merged[i].value * scale, std::int64_t{merged[i].m}});
  return t;
}

// ---- band ---------------------------------------------------------------

void run_band(const magres_band_options& o, Table& constants, Table* samples) {
  need(o.resolution > 0.0, "resolution must be positive");
  const bool validation = o.a == -1.0 || o.a == 1.0;
  const auto params = StepParams::for_a(o.a, o.resolution, o.xi_lo, o.xi_hi, validation);
  params.validate();

  SpectralConstants c;
  if (o.a > -1.0 && o.a < 0.0) {
    c = spectral_constants(params, o.xi_lo, o.xi_hi);
  } else {
    const auto mn = minimize_band(params, o.xi_lo, o.xi_hi);
    const auto d2 = band_second_derivative(params, mn.zeta);
    const auto at = band_value(params, mn.zeta, true);
    c.a = o.a;
    c.beta = mn.beta;
    c.zeta = mn.zeta;
    c.mu2 = d2.value;
    c.phi0 = at.phi0;
    c.phi0p = at.phi0p;
    c.C1 = kNaN;
    c.C2 = kNaN;
    c.L = params.L;
    c.N = params.N;
  }
  constants.columns = {"a", "beta", "zeta", "mu2", "phi0", "phi0p", "C1", "C2", "L", "N"};
  constants.add_row({c.a, c.beta, c.zeta, c.mu2, c.phi0, c.phi0p, c.C1, c.C2, c.L, static_cast<std::int64_t>(c.N)});

  if (samples != nullptr && o.table_step > 0.0) {
    samples->columns = {"xi", "mu"};
    samples->preamble.push_back(fixed_note("a", o.a) + ", " + fixed_note("L", params.L) +
                                ", N=" + std::to_string(params.N));
    for (const auto& s : band_table(params, o.xi_lo, o.xi_hi, o.table_step)) samples->add_row({s.xi, s.mu});
  }
}

// ---- resonances ---------------------------------------------------------

Table run_resonances(const magres_field& field, const magres_resonance_options& o) {
  const auto hs = as_vector(o.h, o.h_count, "h");
  need(!hs.empty(), "at least one h value is required");
  for (double h : hs) need(std::isfinite(h) && h > 0.0, "h values must be positive");
  need(o.theta1 != o.theta2, "theta1 and theta2 must differ");
  need(o.re_lo < o.re_hi && o.im_lo < o.im_hi, "window bounds are not ordered");
  need(o.m_lo <= o.m_hi, "sector range is empty");

  Table t;
  t.columns = {"h", "m", "re", "im", "drift", "theta1", "theta2", "grid_n", "continuum_ratio"};
  t.preamble.push_back("field: " + std::string(to_string(field.spec.kind)));
  std::vector<double> fit_x, fit_y;
  std::string missing;
  for (double h : hs) {
    ResonanceSearch s;
    s.h = h;
    s.sectors = {o.m_lo, o.m_hi};
    s.window = Window{o.re_lo * h, o.re_hi * h, o.im_lo * h, o.im_hi * h};
    s.theta1 = o.theta1;
    s.theta2 = o.theta2;
    s.R1 = o.R1;
    s.T0 = o.T0;
    s.r_max = o.r_max;
    s.grid_n = o.grid_n;
    s.tol = o.tol;
    const auto run = find_resonances(field.profile, s);
    for (const auto& r : run.resonances)
      t.add_row({r.h, std::int64_t{r.m}, r.z.real(), r.z.imag(), r.drift, r.theta1, r.theta2,
                 static_cast<std::int64_t>(r.grid_n), run.continuum_ratio});
    t.preamble.push_back(fixed_note("h", h) + ": " + fixed_note("R1", run.R1) + ", " + fixed_note("T0", run.T0) +
                         ", " + fixed_note("r_max", run.r_max) + ", found=" + std::to_string(run.resonances.size()));
    if (run.resonances.empty()) {
      missing += (missing.empty() ? "" : ",") + format_double(h);
      continue;
    }
    const double center = 0.5 * (o.re_lo + o.re_hi) * h;
    const auto best = std::min_element(run.resonances.begin(), run.resonances.end(), [&](const auto& x, const auto& y) {
      return std::abs(x.z.real() - center) < std::abs(y.z.real() - center);
    });
    fit_x.push_back(1.0 / h);
    fit_y.push_back(std::log(std::abs(best->z.imag())));
  }
  if (hs.size() >= 3) {
    if (!missing.empty()) {
      t.trailer.push_back("fit skipped: no resonance at h=" + missing);
    } else {
      const auto fit = num::fit_line(fit_x, fit_y);
      t.trailer.push_back("fit log|Im z| = intercept + slope / h: " + fixed_note("slope", fit.slope) + ", " +
                          fixed_note("intercept", fit.intercept) + ", " + fixed_note("r2", fit.r2));
      const double r0 = field.profile.support_radius();
      if (std::isfinite(r0) && r0 > 0.0) t.trailer.push_back(fixed_note("c", -fit.slope / (r0 * r0)));
    }
  }
  return t;
}

// ---- quasimodes ---------------------------------------------------------

struct QuasimodeRow {
  double norm_defect = 0.0;
  double residual = 0.0;
  double eigenvalue = 0.0;
  double defect_bound = kNaN;
};

QuasimodeRow discrete_quasimode(const magres_quasimode_options& o, QuasimodeModel model, double b, double r0) {
  FieldProfile profile;
  Boundary boundary = Boundary::dirichlet_far;
  double r_max = o.r_max > 0.0 ? o.r_max : 20.0;
  switch (model) {
    case QuasimodeModel::anharmonic: profile = anharmonic_profile(o.gamma); break;
    case QuasimodeModel::well: profile = well_profile(o.b0); break;
    case QuasimodeModel::island: {
      FieldSpec spec;
      spec.kind = FieldKind::island_annular;
      spec.params = {{"rho1", o.rho1}, {"rho2", o.rho2}};
      spec.R0 = o.rho2;
      spec.validate();
      profile = make_profile(spec);
      boundary = Boundary::neumann_far;
      r_max = o.rho2;
      break;
    }
  }
  const RadialGrid grid(r_max, o.grid_n);
  const auto k = static_cast<std::size_t>(o.n) + 1;
  const auto eig = eigs_lowest(assemble_fiber(profile, o.m, b, grid, boundary), k);
  if (eig.values.size() < k) throw NumericalError("eigensolver returned too few eigenpairs");
  const double lambda = eig.values[k - 1];
  if (boundary == Boundary::dirichlet_far && eig.potential.back() < lambda + 10.0)
    throw TruncationError("domain too short: V(r_max) = " + format_double(eig.potential.back()) +
                          " < eigenvalue + 10; raise --rmax");
  const Cutoff cutoff(r0, o.delta);
  if (o.delta * r0 / grid.dr() < 16.0) throw ValidationError("cutoff shoulder under-resolved; raise --grid-n");

  QuasimodeRow row;
  row.residual = generic_quasimode_residual(eig, k - 1, cutoff, profile, model);
  const auto& u = eig.vectors[k - 1];
  double kept = 0.0, lost = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double chi = cutoff.value(grid.node(j));
    const double w = u[j] * u[j] * grid.node(j) * grid.dr();
    kept += chi * chi * w;
    lost += (1.0 - chi * chi) * w;
  }
  row.norm_defect = lost / (1.0 + std::sqrt(kept));
  row.eigenvalue = lambda;
  return row;
}

Table run_quasimode(const magres_quasimode_options& o) {
  need_ptr(o.model, "model");
  const std::string model = o.model;
  const bool landau = model == "landau";
  const QuasimodeModel generic = landau ? QuasimodeModel::anharmonic : quasimode_model_from_string(model);
  const auto bs = as_vector(o.b, o.b_count, "b");
  need(!bs.empty(), "at least one b value is required");
  for (double b : bs) need(std::isfinite(b) && b > 0.0, "b values must be positive");
  need(o.n >= 0, "n must be >= 0");
  const double r0 = o.r0 > 0.0 ? o.r0 : (!landau && generic == QuasimodeModel::island ? o.rho2 : 1.0);

  const auto rows = parallel_map(bs.size(), [&](std::size_t i) {
    const double b = bs[i];
    if (!landau) return discrete_quasimode(o, generic, b, r0);
    const RadialGrid grid(o.r_max > 0.0 ? o.r_max : 20.0, o.grid_n);
    const auto q = build_quasimode(o.n, o.m, b, r0, o.delta, grid);
    const auto res = quasimode_residual(q, constant_plane_profile());
    QuasimodeRow row;
    row.norm_defect = q.norm_defect;
    row.residual = res.residual;
    row.eigenvalue = res.eigenvalue;
    const double shrink = (1.0 - o.delta) * r0;
    row.defect_bound = std::pow(b, std::abs(o.m) + 1.0) * std::exp(-0.5 * shrink * shrink * b);
    return row;
  });

  Table t;
  t.columns = {"model", "n", "m", "b", "r0", "delta", "norm_defect", "residual", "eigenvalue", "defect_bound"};
  for (std::size_t i = 0; i < bs.size(); ++i)
    t.add_row({model, std::int64_t{o.n}, std::int64_t{o.m}, bs[i], r0, o.delta, rows[i].norm_defect, rows[i].residual,
               rows[i].eigenvalue, rows[i].defect_bound});
  if (bs.size() >= 2 && std::all_of(rows.begin(), rows.end(), [](const QuasimodeRow& r) { return r.residual > 0.0; })) {
    const bool sqrt_b = !landau && generic == QuasimodeModel::island;
    std::vector<double> x, y;
    for (std::size_t i = 0; i < bs.size(); ++i) {
      x.push_back(sqrt_b ? std::sqrt(bs[i]) : bs[i]);
      y.push_back(std::log(rows[i].residual));
    }
    const auto fit = num::fit_line(x, y);
    t.trailer.push_back(std::string("fit log residual vs ") + (sqrt_b ? "sqrt(b)" : "b") + ": " +
                        fixed_note("slope", fit.slope) + ", " + fixed_note("r2", fit.r2));
    if (landau) {
      const double shrink = (1.0 - o.delta) * r0;
      t.trailer.push_back(fixed_note("lemma_exponent", -0.25 * shrink * shrink));
    }
  }
  return t;
}

// ---- comparisons --------------------------------------------------------

Table run_compare(const magres_compare_options& o) {
  need_ptr(o.model, "model");
  const Model model = model_from_string(o.model);
  const auto hs = as_vector(o.h, o.h_count, model == Model::island ? "b" : "h");
  need(o.n >= 0, "n must be >= 0");
  ComparisonReport rep;
  switch (model) {
    case Model::well:
      rep = compare_well(o.b0, o.n, hs, RadialGrid(o.r_max > 0.0 ? o.r_max : 4.0, o.grid_n), o.detH, o.trSqrtH);
      break;
    case Model::island: rep = compare_island(o.rho1, o.rho2, o.n, hs, o.grid_n); break;
    case Model::anharmonic:
      rep = compare_anharmonic(o.gamma, o.n, hs, RadialGrid(o.r_max > 0.0 ? o.r_max : 8.0, o.grid_n));
      break;
    case Model::landau: {
      FieldProfile profile;
      if (o.field != nullptr) {
        profile = o.field->profile;
      } else {
        FieldSpec spec;
        spec.R0 = 1.0;
        profile = make_profile(spec);
      }
      ResonanceSearch base;
      base.theta1 = o.theta1;
      base.theta2 = o.theta2;
      base.r_max = o.r_max;
      base.grid_n = o.grid_n;
      rep = compare_landau_resonances(profile, o.n, hs, base);
      break;
    }
    case Model::step:
      throw ValidationError("model 'step' has no direct solver; its constants come from the band command");
  }
  Table t;
  t.columns = {"model", "n", "h", "expansion", "direct", "diff", "ratio"};
  for (const auto& r : rep.rows)
    t.add_row({std::string(to_string(r.model)), std::int64_t{r.n}, r.h, r.expansion, r.direct, r.diff, r.ratio});
  t.trailer.push_back(fixed_note("observed_order", rep.observed_order) + ", " + fixed_note("fit_r2", rep.fit_r2) +
                      ", " + fixed_note("expected_order", rep.expected_order));
  return t;
}

}  // namespace

extern "C" {

const char* magres_version(void) { return MAGRES_VERSION; }

const char* magres_last_error(void) { return last_error.c_str(); }

const char* magres_status_name(magres_status status) {
  switch (status) {
    case MAGRES_OK: return "ok";
    case MAGRES_ERR_INVALID: return "invalid argument";
    case MAGRES_ERR_IO: return "i/o error";
    case MAGRES_ERR_NUMERICAL: return "numerical failure";
    case MAGRES_ERR_TRUNCATION: return "truncation";
    case MAGRES_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void magres_string_free(char* s) { std::free(s); }

magres_status magres_field_load(const char* path, magres_field** out) {
  return guarded([&] {
    need_ptr(path, "path");
    need_ptr(out, "out");
    *out = nullptr;
    auto spec = load_field_spec(path);
    auto profile = make_profile(spec);
    *out = new magres_field{std::move(spec), std::move(profile)};
  });
}

magres_status magres_field_parse(const char* json, magres_field** out) {
  return guarded([&] {
    need_ptr(json, "json");
    need_ptr(out, "out");
    *out = nullptr;
    auto spec = parse_field_spec(json);
    auto profile = make_profile(spec);
    *out = new magres_field{std::move(spec), std::move(profile)};
  });
}

void magres_field_free(magres_field* field) { delete field; }

magres_status magres_field_flux(const magres_field* field, double* out) {
  return guarded([&] {
    need_ptr(field, "field");
    need_ptr(out, "out");
    *out = flux(field->profile);
  });
}

magres_status magres_field_value(const magres_field* field, double r, double* out) {
  return guarded([&] {
    need_ptr(field, "field");
    need_ptr(out, "out");
    need(r >= 0.0, "radius must be >= 0");
    *out = field->profile.field(r);
  });
}

magres_status magres_field_potential(const magres_field* field, double r, double* out) {
  return guarded([&] {
    need_ptr(field, "field");
    need_ptr(out, "out");
    *out = angular_potential(field->profile, r);
  });
}

magres_status magres_field_json(const magres_field* field, char** out) {
  return guarded([&] {
    need_ptr(field, "field");
    need_ptr(out, "out");
    *out = dup_string(field_spec_to_json(field->spec));
  });
}

size_t magres_table_rows(const magres_table* t) { return t ? t->table.rows.size() : 0; }

size_t magres_table_cols(const magres_table* t) { return t ? t->table.columns.size() : 0; }

const char* magres_table_column(const magres_table* t, size_t col) {
  if (t == nullptr || col >= t->table.columns.size()) return nullptr;
  return t->table.columns[col].c_str();
}

magres_status magres_table_get(const magres_table* t, size_t row, size_t col, double* out) {
  return guarded([&] {
    need_ptr(out, "out");
    const auto& c = cell_at(t, row, col);
    if (const auto* d = std::get_if<double>(&c)) *out = *d;
    else if (const auto* i = std::get_if<std::int64_t>(&c)) *out = static_cast<double>(*i);
    else throw ValidationError("cell holds text");
  });
}

magres_status magres_table_text(const magres_table* t, size_t row, size_t col, char** out) {
  return guarded([&] {
    need_ptr(out, "out");
    const auto& c = cell_at(t, row, col);
    if (const auto* d = std::get_if<double>(&c)) *out = dup_string(format_double(*d));
    else if (const auto* i = std::get_if<std::int64_t>(&c)) *out = dup_string(std::to_string(*i));
    else *out = dup_string(std::get<std::string>(c));
  });
}

size_t magres_table_notes(const magres_table* t) { return t ? t->table.trailer.size() : 0; }

const char* magres_table_note(const magres_table* t, size_t i) {
  if (t == nullptr || i >= t->table.trailer.size()) return nullptr;
  return t->table.trailer[i].c_str();
}

magres_status magres_table_csv(const magres_table* t, char** out) {
  return guarded([&] {
    need_ptr(t, "table");
    need_ptr(out, "out");
    *out = dup_string(t->table.to_csv());
  });
}

magres_status magres_table_json(const magres_table* t, char** out) {
  return guarded([&] {
    need_ptr(t, "table");
    need_ptr(out, "out");
    *out = dup_string(t->table.to_json());
  });
}

void magres_table_free(magres_table* t) { delete t; }

void magres_spectrum_options_init(magres_spectrum_options* o) {
  if (o == nullptr) return;
  o->b = 1.0;
  o->h = 0.0;
  o->levels = 3;
  o->m_lo = 1;
  o->m_hi = 0;
  o->r_max = 0.0;
  o->grid_n = 4000;
  o->boundary = MAGRES_BOUNDARY_AUTO;
  o->richardson = 1;
  o->merged = 0;
}

magres_status magres_spectrum(const magres_field* field, const magres_spectrum_options* o, magres_table** out) {
  return guarded([&] {
    need_ptr(field, "field");
    need_ptr(o, "options");
    need_ptr(out, "out");
    *out = nullptr;
    *out = wrap(run_spectrum(*field, *o));
  });
}

void magres_band_options_init(magres_band_options* o) {
  if (o == nullptr) return;
  o->a = -0.5;
  o->resolution = 1.0;
  o->xi_lo = -4.0;
  o->xi_hi = 1.0;
  o->table_step = 0.05;
}

magres_status magres_band(const magres_band_options* o, magres_table** constants, magres_table** samples) {
  return guarded([&] {
    need_ptr(o, "options");
    need_ptr(constants, "constants");
    *constants = nullptr;
    if (samples != nullptr) *samples = nullptr;
    Table c, s;
    run_band(*o, c, samples != nullptr ? &s : nullptr);
    *constants = wrap(std::move(c));
    if (samples != nullptr) *samples = wrap(std::move(s));
  });
}

void magres_resonance_options_init(magres_resonance_options* o) {
  if (o == nullptr) return;
  o->h = nullptr;
  o->h_count = 0;
  o->m_lo = 0;
  o->m_hi = 0;
  o->re_lo = 0.6;
  o->re_hi = 1.4;
  o->im_lo = -0.3;
  o->im_hi = 0.0;
  o->theta1 = 0.25;
  o->theta2 = 0.35;
  o->R1 = 0.0;
  o->T0 = 0.0;
  o->r_max = 0.0;
  o->grid_n = 3000;
  o->tol = 1e-5;
}

magres_status magres_resonances(const magres_field* field, const magres_resonance_options* o, magres_table** out) {
  return guarded([&] {
    need_ptr(field, "field");
    need_ptr(o, "options");
    need_ptr(out, "out");
    *out = nullptr;
    *out = wrap(run_resonances(*field, *o));
  });
}

void magres_quasimode_options_init(magres_quasimode_options* o) {
  if (o == nullptr) return;
  o->model = "landau";
  o->n = 0;
  o->m = 0;
  o->b = nullptr;
  o->b_count = 0;
  o->r0 = 0.0;
  o->delta = 0.2;
  o->r_max = 0.0;
  o->grid_n = 4000;
  o->gamma = 2.0;
  o->b0 = 1.0;
  o->rho1 = 1.0;
  o->rho2 = 1.5;
}

magres_status magres_quasimode(const magres_quasimode_options* o, magres_table** out) {
  return guarded([&] {
    need_ptr(o, "options");
    need_ptr(out, "out");
    *out = nullptr;
    *out = wrap(run_quasimode(*o));
  });
}

magres_status magres_tz_window_eval(double center, double h, double c, double r0, double alpha,
                                    magres_tz_window* out) {
  return guarded([&] {
    need_ptr(out, "out");
    const auto w = tz_window(center, h, c, r0, alpha);
    *out = magres_tz_window{w.center, w.h, w.c, w.r0, w.alpha, w.S, w.R, w.half_width, w.depth};
  });
}

magres_status magres_tz_crossover(double c, double r0, double* out) {
  return guarded([&] {
    need_ptr(out, "out");
    *out = tz_crossover(c, r0);
  });
}

void magres_compare_options_init(magres_compare_options* o) {
  if (o == nullptr) return;
  o->model = "well";
  o->n = 0;
  o->h = nullptr;
  o->h_count = 0;
  o->r_max = 0.0;
  o->grid_n = 4000;
  o->gamma = 2.0;
  o->b0 = 1.0;
  o->detH = 1.0;
  o->trSqrtH = 2.0;
  o->rho1 = 1.0;
  o->rho2 = 1.5;
  o->theta1 = 0.25;
  o->theta2 = 0.35;
  o->field = nullptr;
}

magres_status magres_compare(const magres_compare_options* o, magres_table** out) {
  return guarded([&] {
    need_ptr(o, "options");
    need_ptr(out, "out");
    *out = nullptr;
    *out = wrap(run_compare(*o));
  });
}

void magres_expansion_init(magres_expansion* e) {
  if (e == nullptr) return;
  *e = magres_expansion{};
  e->model = "landau";
  e->h = 0.1;
  e->k2 = -1.0;
  e->b0 = 1.0;
  e->detH = 1.0;
  e->trSqrtH = 2.0;
}

magres_status magres_expansion_real_part(const magres_expansion* e, double* out) {
  return guarded([&] {
    need_ptr(e, "expansion");
    need_ptr(e->model, "model");
    need_ptr(out, "out");
    ExpansionParams p;
    p.model = model_from_string(e->model);
    p.n = e->n;
    p.h = e->h;
    p.gamma = e->gamma;
    p.lambda = as_vector(e->lambda, e->lambda_count, "lambda");
    p.beta = e->beta;
    p.C1 = e->C1;
    p.C2 = e->C2;
    p.k0 = e->k0;
    p.k2 = e->k2;
    p.b0 = e->b0;
    p.detH = e->detH;
    p.trSqrtH = e->trSqrtH;
    p.ell = as_vector(e->ell, e->ell_count, "ell");
    *out = expansion_real_part(p);
  });
}

magres_status magres_fingerprint(const char* text, char** out) {
  return guarded([&] {
    need_ptr(text, "text");
    need_ptr(out, "out");
    *out = dup_string(fnv1a_hex(text));
  });
}

}  // extern "C"
