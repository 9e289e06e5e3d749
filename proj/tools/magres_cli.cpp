// magres command-line front end. Talks to the library only through the C API.

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "magres/magres.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Failure {
  int code;
  std::string message;
};

int exit_code_for(magres_status s) {
  return s == MAGRES_ERR_INVALID || s == MAGRES_ERR_IO ? kExitUsage : kExitNumerical;
}

void check(magres_status s) {
  if (s != MAGRES_OK) throw Failure{exit_code_for(s), std::string(magres_status_name(s)) + ": " + magres_last_error()};
}

struct FieldDeleter {
  void operator()(magres_field* f) const { magres_field_free(f); }
};
struct TableDeleter {
  void operator()(magres_table* t) const { magres_table_free(t); }
};
using FieldPtr = std::unique_ptr<magres_field, FieldDeleter>;
using TablePtr = std::unique_ptr<magres_table, TableDeleter>;

std::string take_string(char* s) {
  std::string out(s);
  magres_string_free(s);
  return out;
}

FieldPtr load_field(const std::string& path) {
  magres_field* f = nullptr;
  check(magres_field_load(path.c_str(), &f));
  return FieldPtr(f);
}

std::string field_json(const magres_field* f) {
  char* s = nullptr;
  check(magres_field_json(f, &s));
  return take_string(s);
}

std::string table_csv(const magres_table* t) {
  char* s = nullptr;
  check(magres_table_csv(t, &s));
  return take_string(s);
}

std::string fingerprint(const std::string& text) {
  char* s = nullptr;
  check(magres_fingerprint(text.c_str(), &s));
  return take_string(s);
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Failure{kExitUsage, "cannot write '" + path + "'"};
  f << text;
  if (!f) throw Failure{kExitUsage, "write to '" + path + "' failed"};
}

// Flags shared by the subcommands. Zero means "use the command default".
struct Common {
  std::size_t grid_n = 0;
  double rmax = 0.0;
  double theta1 = 0.25;
  double theta2 = 0.35;
  std::string out;
};

void add_common(CLI::App* sub, Common& c, bool thetas) {
  sub->add_option("--grid-n", c.grid_n, "radial grid points")->check(CLI::Range(64, 10000000));
  sub->add_option("--rmax", c.rmax, "outer radius of the radial grid")->check(CLI::PositiveNumber);
  if (thetas) {
    sub->add_option("--theta1", c.theta1, "first scaling angle")->check(CLI::Range(0.0, 0.7));
    sub->add_option("--theta2", c.theta2, "second scaling angle")->check(CLI::Range(0.0, 0.7));
  }
  sub->add_option("--out", c.out, "output file (stdout when absent)");
}

// Run record: the id hashes everything that determines the output bytes, so
// the CSV stays identical when only the output path or the clock differs.
struct Manifest {
  std::string command;
  std::vector<std::string> argv;  // without --out
  json params = json::object();
  json field;  // null when the command takes no field

  std::string id() const {
    json core;
    core["command"] = command;
    core["params"] = params;
    core["field"] = field;
    core["version"] = magres_version();
    return fingerprint(core.dump());
  }

  void write(const std::string& out) const {
    json doc;
    doc["id"] = id();
    doc["command"] = command;
    doc["argv"] = argv;
    doc["params"] = params;
    doc["field"] = field;
    doc["version"] = magres_version();
    doc["timestamp"] = utc_timestamp();
    write_file(out + ".manifest.json", doc.dump(2) + "\n");
  }
};

std::vector<std::string> strip_out(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out") {
      ++i;
      continue;
    }
    if (args[i].rfind("--out=", 0) == 0) continue;
    kept.push_back(args[i]);
  }
  return kept;
}

void emit_csv(const Manifest& m, const std::string& csv, const std::string& out) {
  const std::string text = "# manifest: " + m.id() + "\n" + csv;
  if (out.empty()) {
    std::cout << text;
    return;
  }
  write_file(out, text);
  m.write(out);
}

double parse_resolution(std::string s) {
  if (!s.empty() && (s.back() == 'x' || s.back() == 'X')) s.pop_back();
  std::istringstream in(s);
  in.imbue(std::locale::classic());
  double v = 0.0;
  if (!(in >> v) || !in.eof() || !(v > 0.0)) throw Failure{kExitUsage, "invalid --resolution '" + s + "'"};
  return v;
}

json json_number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

int run(const std::vector<std::string>& args);

int dispatch(CLI::App& app, const std::vector<std::string>& args) {
  Common common;
  Manifest manifest;
  manifest.argv = strip_out(args);

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "levels of the radial fibers of a field");
  std::string sp_field, sp_boundary = "auto";
  double sp_b = 1.0, sp_h = 0.0;
  int sp_levels = 3, sp_m_lo = 1, sp_m_hi = 0;
  bool sp_merged = false, sp_no_richardson = false;
  sp->add_option("--field", sp_field, "field config (JSON)")->required();
  auto* opt_b = sp->add_option("--b", sp_b, "field scale")->check(CLI::PositiveNumber);
  sp->add_option("--h", sp_h, "semiclassical parameter (b = 1/h, values scaled by h^2)")
      ->check(CLI::PositiveNumber)
      ->excludes(opt_b);
  sp->add_option("--levels", sp_levels, "levels per sector (distinct levels with --merged)");
  sp->add_option("--m-lo", sp_m_lo, "lowest sector");
  sp->add_option("--m-hi", sp_m_hi, "highest sector");
  sp->add_option("--boundary", sp_boundary, "outer wall")->check(CLI::IsMember({"auto", "dirichlet", "neumann"}));
  sp->add_flag("--merged", sp_merged, "lowest distinct levels over all sectors");
  sp->add_flag("--no-richardson", sp_no_richardson, "report the raw grid values");
  add_common(sp, common, false);

  // band
  auto* bd = app.add_subcommand("band", "band function and spectral constants of the magnetic step");
  double bd_a = 0.0, bd_xi_lo = -4.0, bd_xi_hi = 1.0, bd_step = 0.05;
  std::string bd_resolution = "1";
  bd->add_option("--a", bd_a, "field value on the negative side")->required();
  bd->add_option("--resolution", bd_resolution, "grid refinement factor, e.g. 2x");
  bd->add_option("--xi-lo", bd_xi_lo, "lower end of the xi scan");
  bd->add_option("--xi-hi", bd_xi_hi, "upper end of the xi scan");
  bd->add_option("--table-step", bd_step, "xi step of the band table (0: no table)");
  bd->add_option("--out", common.out, "band table CSV; constants go to <out>.constants.json");

  // resonances
  auto* rs = app.add_subcommand("resonances", "complex-scaled resonances near the Landau level");
  std::string rs_field;
  std::vector<double> rs_h, rs_window;
  int rs_m_lo = 0, rs_m_hi = 0;
  double rs_R1 = 0.0, rs_T0 = 0.0, rs_tol = 1e-5;
  rs->add_option("--field", rs_field, "field config (JSON)")->required();
  rs->add_option("--h", rs_h, "comma separated h values")->required()->delimiter(',');
  rs->add_option("--m-lo", rs_m_lo, "lowest sector");
  rs->add_option("--m-hi", rs_m_hi, "highest sector");
  rs->add_option("--window", rs_window, "re_lo,re_hi,im_lo,im_hi in units of h")->delimiter(',')->expected(4);
  rs->add_option("--R1", rs_R1, "start of the deformation");
  rs->add_option("--T0", rs_T0, "end of the deformation");
  rs->add_option("--tol", rs_tol, "relative drift tolerance")->check(CLI::PositiveNumber);
  add_common(rs, common, true);

  // quasimode
  auto* qm = app.add_subcommand("quasimode", "cutoff quasimodes and their residuals");
  std::string qm_model = "landau";
  int qm_n = 0, qm_m = 0;
  std::vector<double> qm_b;
  double qm_r0 = 0.0, qm_delta = 0.2, qm_gamma = 2.0, qm_b0 = 1.0, qm_rho1 = 1.0, qm_rho2 = 1.5, qm_tz_c = 0.0;
  qm->add_option("--model", qm_model, "landau, anharmonic, well or island");
  qm->add_option("--n", qm_n, "level index");
  qm->add_option("--m", qm_m, "sector");
  qm->add_option("--b", qm_b, "comma separated field scales")->required()->delimiter(',');
  qm->add_option("--r0", qm_r0, "cutoff radius");
  qm->add_option("--delta", qm_delta, "cutoff shoulder fraction");
  qm->add_option("--gamma", qm_gamma, "anharmonic exponent");
  qm->add_option("--b0", qm_b0, "well minimum");
  qm->add_option("--rho1", qm_rho1, "island radius");
  qm->add_option("--rho2", qm_rho2, "outer wall of the island problem");
  qm->add_option("--tz-c", qm_tz_c, "report Tang-Zworski windows with this c (h = 1/b)")->check(CLI::PositiveNumber);
  add_common(qm, common, false);

  // compare
  auto* cp = app.add_subcommand("compare", "expansion against direct computation");
  std::string cp_model, cp_field;
  int cp_n = 0;
  std::vector<double> cp_h, cp_b;
  double cp_gamma = 2.0, cp_b0 = 1.0, cp_detH = 1.0, cp_trSqrtH = 2.0, cp_rho1 = 1.0, cp_rho2 = 1.5;
  cp->add_option("--model", cp_model, "landau, anharmonic, well or island")->required();
  cp->add_option("--n", cp_n, "level index");
  auto* opt_h = cp->add_option("--h", cp_h, "comma separated h values")->delimiter(',');
  cp->add_option("--b", cp_b, "comma separated field scales (island)")->delimiter(',')->excludes(opt_h);
  cp->add_option("--gamma", cp_gamma, "anharmonic exponent");
  cp->add_option("--b0", cp_b0, "well minimum");
  cp->add_option("--detH", cp_detH, "well Hessian determinant");
  cp->add_option("--trSqrtH", cp_trSqrtH, "trace of the Hessian square root");
  cp->add_option("--rho1", cp_rho1, "island radius");
  cp->add_option("--rho2", cp_rho2, "outer wall of the island problem");
  cp->add_option("--field", cp_field, "field config for the landau model (unit disk when absent)");
  add_common(cp, common, true);

  // rerun
  auto* rr = app.add_subcommand("rerun", "repeat the run recorded in a manifest");
  std::string rr_manifest;
  rr->add_option("manifest", rr_manifest, "manifest JSON")->required();
  rr->add_option("--out", common.out, "output file");

  app.require_subcommand(1);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  app.parse(reversed);

  const auto grid = [&](std::size_t fallback) { return common.grid_n ? common.grid_n : fallback; };

  if (*rr) {
    std::ifstream f(rr_manifest);
    if (!f) throw Failure{kExitUsage, "cannot open manifest '" + rr_manifest + "'"};
    json doc;
    try {
      doc = json::parse(f);
    } catch (const json::exception& e) {
      throw Failure{kExitUsage, "manifest '" + rr_manifest + "' is not valid JSON: " + e.what()};
    }
    if (!doc.contains("argv") || !doc["argv"].is_array())
      throw Failure{kExitUsage, "manifest '" + rr_manifest + "' has no argv"};
    if (doc.value("version", "") != magres_version())
      std::cerr << "warning: manifest written by version " << doc.value("version", "?") << ", running "
                << magres_version() << "\n";
    auto again = doc["argv"].get<std::vector<std::string>>();
    if (!again.empty() && again.front() == "rerun") throw Failure{kExitUsage, "manifest records a rerun"};
    if (!common.out.empty()) {
      again.push_back("--out");
      again.push_back(common.out);
    }
    return run(again);
  }

  if (*sp) {
    auto field = load_field(sp_field);
    magres_spectrum_options o;
    magres_spectrum_options_init(&o);
    o.b = sp_b;
    o.h = sp_h;
    o.levels = sp_levels;
    o.m_lo = sp_m_lo;
    o.m_hi = sp_m_hi;
    o.r_max = common.rmax;
    o.grid_n = grid(4000);
    o.boundary = sp_boundary == "dirichlet" ? MAGRES_BOUNDARY_DIRICHLET
                 : sp_boundary == "neumann" ? MAGRES_BOUNDARY_NEUMANN
                                            : MAGRES_BOUNDARY_AUTO;
    o.richardson = sp_no_richardson ? 0 : 1;
    o.merged = sp_merged ? 1 : 0;
    if (o.levels < 1) throw Failure{kExitUsage, "--levels must be >= 1"};
    magres_table* t = nullptr;
    check(magres_spectrum(field.get(), &o, &t));
    TablePtr table(t);
    manifest.command = "spectrum";
    manifest.field = json::parse(field_json(field.get()));
    manifest.params = {{"b", o.h > 0 ? 1.0 / o.h : o.b}, {"h", o.h}, {"levels", o.levels}, {"m_lo", o.m_lo},
                       {"m_hi", o.m_hi}, {"r_max", o.r_max}, {"grid_n", o.grid_n}, {"boundary", sp_boundary},
                       {"richardson", o.richardson}, {"merged", o.merged}};
    emit_csv(manifest, table_csv(table.get()), common.out);
    return 0;
  }

  if (*bd) {
    magres_band_options o;
    magres_band_options_init(&o);
    o.a = bd_a;
    o.resolution = parse_resolution(bd_resolution);
    o.xi_lo = bd_xi_lo;
    o.xi_hi = bd_xi_hi;
    o.table_step = common.out.empty() ? 0.0 : bd_step;
    magres_table *c = nullptr, *s = nullptr;
    check(magres_band(&o, &c, &s));
    TablePtr constants(c), samples(s);
    manifest.command = "band";
    manifest.params = {{"a", o.a},         {"resolution", o.resolution}, {"xi_lo", o.xi_lo},
                       {"xi_hi", o.xi_hi}, {"table_step", o.table_step}};
    json doc;
    doc["manifest"] = manifest.id();
    for (std::size_t j = 0; j < magres_table_cols(constants.get()); ++j) {
      double v = 0.0;
      check(magres_table_get(constants.get(), 0, j, &v));
      doc[magres_table_column(constants.get(), j)] = json_number(v);
    }
    if (common.out.empty()) {
      std::cout << doc.dump(2) << "\n";
      return 0;
    }
    write_file(common.out + ".constants.json", doc.dump(2) + "\n");
    emit_csv(manifest, samples ? table_csv(samples.get()) : std::string(), common.out);
    return 0;
  }

  if (*rs) {
    auto field = load_field(rs_field);
    magres_resonance_options o;
    magres_resonance_options_init(&o);
    o.h = rs_h.data();
    o.h_count = rs_h.size();
    o.m_lo = rs_m_lo;
    o.m_hi = rs_m_hi;
    if (!rs_window.empty()) {
      o.re_lo = rs_window[0];
      o.re_hi = rs_window[1];
      o.im_lo = rs_window[2];
      o.im_hi = rs_window[3];
    }
    o.theta1 = common.theta1;
    o.theta2 = common.theta2;
    if (o.theta1 == o.theta2) throw Failure{kExitUsage, "--theta1 and --theta2 must differ"};
    o.R1 = rs_R1;
    o.T0 = rs_T0;
    o.r_max = common.rmax;
    o.grid_n = grid(3000);
    o.tol = rs_tol;
    magres_table* t = nullptr;
    check(magres_resonances(field.get(), &o, &t));
    TablePtr table(t);
    manifest.command = "resonances";
    manifest.field = json::parse(field_json(field.get()));
    manifest.params = {{"h", rs_h},          {"m_lo", o.m_lo},       {"m_hi", o.m_hi},
                       {"window", {o.re_lo, o.re_hi, o.im_lo, o.im_hi}},
                       {"theta1", o.theta1}, {"theta2", o.theta2},   {"R1", o.R1},
                       {"T0", o.T0},         {"r_max", o.r_max},     {"grid_n", o.grid_n},
                       {"tol", o.tol}};
    emit_csv(manifest, table_csv(table.get()), common.out);
    return 0;
  }

  if (*qm) {
    magres_quasimode_options o;
    magres_quasimode_options_init(&o);
    o.model = qm_model.c_str();
    o.n = qm_n;
    o.m = qm_m;
    o.b = qm_b.data();
    o.b_count = qm_b.size();
    o.r0 = qm_r0;
    o.delta = qm_delta;
    o.r_max = common.rmax;
    o.grid_n = grid(qm_model == "island" ? 2000 : 4000);
    o.gamma = qm_gamma;
    o.b0 = qm_b0;
    o.rho1 = qm_rho1;
    o.rho2 = qm_rho2;
    magres_table* t = nullptr;
    check(magres_quasimode(&o, &t));
    TablePtr table(t);
    manifest.command = "quasimode";
    manifest.params = {{"model", qm_model}, {"n", o.n},         {"m", o.m},         {"b", qm_b},
                       {"r0", o.r0},        {"delta", o.delta}, {"r_max", o.r_max}, {"grid_n", o.grid_n},
                       {"gamma", o.gamma},  {"b0", o.b0},       {"rho1", o.rho1},   {"rho2", o.rho2},
                       {"tz_c", qm_tz_c}};
    if (qm_tz_c > 0.0) {
      json windows;
      windows["manifest"] = manifest.id();
      double r0 = 0.0;
      check(magres_table_get(table.get(), 0, 4, &r0));
      double crossover = 0.0;
      check(magres_tz_crossover(qm_tz_c, r0, &crossover));
      windows["crossover_h"] = json_number(crossover);
      windows["windows"] = json::array();
      for (std::size_t i = 0; i < qm_b.size(); ++i) {
        double lambda = 0.0;
        check(magres_table_get(table.get(), i, 8, &lambda));
        const double h = 1.0 / qm_b[i];
        magres_tz_window w;
        check(magres_tz_window_eval(lambda * h * h, h, qm_tz_c, r0, 0.0, &w));
        windows["windows"].push_back({{"h", w.h},
                                      {"center", w.center},
                                      {"c", w.c},
                                      {"r0", w.r0},
                                      {"alpha", w.alpha},
                                      {"S", w.S},
                                      {"R", w.R},
                                      {"half_width", w.half_width},
                                      {"depth", w.depth}});
      }
      if (common.out.empty()) std::cerr << windows.dump(2) << "\n";
      else write_file(common.out + ".windows.json", windows.dump(2) + "\n");
    }
    emit_csv(manifest, table_csv(table.get()), common.out);
    return 0;
  }

  if (*cp) {
    magres_compare_options o;
    magres_compare_options_init(&o);
    o.model = cp_model.c_str();
    o.n = cp_n;
    const auto& list = cp_model == "island" ? cp_b : cp_h;
    if (list.empty())
      throw Failure{kExitUsage, cp_model == "island" ? "--b is required for the island model" : "--h is required"};
    o.h = list.data();
    o.h_count = list.size();
    o.r_max = common.rmax;
    o.grid_n = grid(cp_model == "island" ? 2000 : cp_model == "landau" ? 3000 : 4000);
    o.gamma = cp_gamma;
    o.b0 = cp_b0;
    o.detH = cp_detH;
    o.trSqrtH = cp_trSqrtH;
    o.rho1 = cp_rho1;
    o.rho2 = cp_rho2;
    o.theta1 = common.theta1;
    o.theta2 = common.theta2;
    FieldPtr field;
    if (!cp_field.empty()) {
      field = load_field(cp_field);
      o.field = field.get();
    }
    magres_table* t = nullptr;
    check(magres_compare(&o, &t));
    TablePtr table(t);
    manifest.command = "compare";
    if (field) manifest.field = json::parse(field_json(field.get()));
    manifest.params = {{"model", cp_model}, {"n", o.n},         {"values", list},       {"r_max", o.r_max},
                       {"grid_n", o.grid_n}, {"gamma", o.gamma}, {"b0", o.b0},           {"detH", o.detH},
                       {"trSqrtH", o.trSqrtH}, {"rho1", o.rho1}, {"rho2", o.rho2},       {"theta1", o.theta1},
                       {"theta2", o.theta2}};
    emit_csv(manifest, table_csv(table.get()), common.out);
    return 0;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"magres: spectra and resonances of radial magnetic Laplacians"};
  // "-h" would collide with the --h option of several subcommands.
  app.set_help_flag("--help", "print this help and exit");
  app.set_version_flag("--version", std::string(magres_version()));
  try {
    return dispatch(app, args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args);
}
