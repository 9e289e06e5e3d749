#include "magres/field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "magres/errors.hpp"
#include "magres/numerics.hpp"

namespace magres {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double piece_field(const FieldPiece& p, double r) {
  double b = 0.0;
  for (const auto& t : p.terms) b += t.coef * std::pow(r, t.power);
  return b;
}

// int_lo^r s B(s) ds for one piece, in closed form.
double piece_moment(const FieldPiece& p, double r) {
  double m = 0.0;
  for (const auto& t : p.terms) {
    const double q = t.power + 2.0;
    m += t.coef * (std::pow(r, q) - std::pow(p.lo, q)) / q;
  }
  return m;
}

bool piece_is_zero(const FieldPiece& p) {
  return std::all_of(p.terms.begin(), p.terms.end(), [](const Monomial& t) { return t.coef == 0.0; });
}

const std::set<std::string>& allowed_params(FieldKind kind) {
  static const std::set<std::string> disk{"r0"};
  static const std::set<std::string> ah{"gamma"};
  static const std::set<std::string> well{"b0"};
  static const std::set<std::string> island{"rho1", "rho2"};
  switch (kind) {
    case FieldKind::constant_disk: return disk;
    case FieldKind::anharmonic: return ah;
    case FieldKind::well_radial: return well;
    case FieldKind::island_annular: return island;
  }
  return disk;
}

}  // namespace

std::string_view to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::constant_disk: return "constant_disk";
    case FieldKind::anharmonic: return "anharmonic";
    case FieldKind::well_radial: return "well_radial";
    case FieldKind::island_annular: return "island_annular";
  }
  return "unknown";
}

FieldKind field_kind_from_string(std::string_view name) {
  if (name == "constant_disk") return FieldKind::constant_disk;
  if (name == "anharmonic") return FieldKind::anharmonic;
  if (name == "well_radial") return FieldKind::well_radial;
  if (name == "island_annular") return FieldKind::island_annular;
  throw ValidationError("unknown field kind '" + std::string(name) +
                        "' (expected constant_disk, anharmonic, well_radial or island_annular)");
}

double FieldSpec::param(const std::string& name) const {
  auto it = params.find(name);
  if (it == params.end())
    throw ValidationError("field '" + std::string(to_string(kind)) + "' requires parameter '" + name + "'");
  return it->second;
}

double FieldSpec::param_or(const std::string& name, double fallback) const {
  auto it = params.find(name);
  return it == params.end() ? fallback : it->second;
}

void FieldSpec::validate() const {
  const auto& allowed = allowed_params(kind);
  for (const auto& [key, value] : params) {
    if (!allowed.count(key))
      throw ValidationError("unknown parameter '" + key + "' for field kind '" + std::string(to_string(kind)) + "'");
    if (!std::isfinite(value)) throw ValidationError("parameter '" + key + "' must be finite");
  }
  if (!(R0 > 0.0)) throw ValidationError("R0 must be positive");

  switch (kind) {
    case FieldKind::constant_disk: {
      const double r0 = param_or("r0", R0);
      if (!std::isfinite(r0)) throw ValidationError("constant_disk needs a finite r0 or R0");
      if (!(r0 > 0.0)) throw ValidationError("r0 must be positive, got " + std::to_string(r0));
      if (r0 > R0) throw ValidationError("r0 must not exceed R0");
      break;
    }
    case FieldKind::anharmonic: {
      const double gamma = param("gamma");
      if (gamma < 0.0) throw ValidationError("gamma must be >= 0, got " + std::to_string(gamma));
      break;
    }
    case FieldKind::well_radial: {
      const double b0 = param("b0");
      if (!(b0 > 0.0)) throw ValidationError("b0 must be positive, got " + std::to_string(b0));
      break;
    }
    case FieldKind::island_annular: {
      const double rho1 = param("rho1");
      const double rho2 = param_or("rho2", R0);
      if (!(rho1 > 0.0)) throw ValidationError("rho1 must be positive");
      if (!std::isfinite(rho2)) throw ValidationError("island_annular needs a finite rho2 or R0");
      if (!(rho1 < rho2)) throw ValidationError("island radii must satisfy rho1 < rho2");
      if (rho2 > R0) throw ValidationError("rho2 must not exceed R0");
      break;
    }
  }
}

FieldProfile FieldProfile::from_pieces(std::vector<FieldPiece> pieces) {
  FieldProfile prof;
  double prev_hi = 0.0;
  double moment = 0.0;
  for (const auto& p : pieces) {
    if (!(p.lo >= prev_hi) || !(p.hi > p.lo))
      throw ValidationError("field pieces must be sorted, non-overlapping and non-empty");
    for (const auto& t : p.terms)
      if (!(t.power > -2.0)) throw ValidationError("field monomial power must exceed -2");
    prof.moment_at_lo_.push_back(moment);
    if (std::isfinite(p.hi)) moment += piece_moment(p, p.hi);
    else if (!piece_is_zero(p)) moment = kInf;
    if (!piece_is_zero(p)) prof.support_ = p.hi;
    prev_hi = p.hi;
  }
  prof.pieces_ = std::move(pieces);
  prof.flux_ = moment;
  return prof;
}

FieldProfile FieldProfile::combine(const FieldProfile& lhs, const FieldProfile& rhs) {
  std::set<double> cuts{0.0, kInf};
  for (const auto* prof : {&lhs, &rhs})
    for (const auto& p : prof->pieces_) cuts.insert({p.lo, p.hi});
  std::vector<double> edges(cuts.begin(), cuts.end());
  std::vector<FieldPiece> merged;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    FieldPiece piece{edges[i], edges[i + 1], {}};
    const double probe = std::isfinite(piece.hi) ? 0.5 * (piece.lo + piece.hi) : piece.lo + 1.0;
    for (const auto* prof : {&lhs, &rhs})
      for (const auto& p : prof->pieces_)
        if (probe >= p.lo && probe < p.hi) piece.terms.insert(piece.terms.end(), p.terms.begin(), p.terms.end());
    if (!piece.terms.empty()) merged.push_back(std::move(piece));
  }
  auto out = from_pieces(std::move(merged));
  out.support_ = std::max({out.support_, lhs.support_, rhs.support_});
  return out;
}

double FieldProfile::field(double r) const {
  for (const auto& p : pieces_)
    if (r >= p.lo && r < p.hi) return piece_field(p, r);
  return 0.0;
}

double FieldProfile::moment(double r) const {
  if (r >= support_ && std::isfinite(flux_)) return flux_;
  for (std::size_t i = pieces_.size(); i-- > 0;) {
    const auto& p = pieces_[i];
    if (r >= p.hi) return moment_at_lo_[i] + piece_moment(p, p.hi);
    if (r >= p.lo) return moment_at_lo_[i] + piece_moment(p, r);
  }
  return 0.0;
}

double FieldProfile::potential(double r) const {
  if (r >= support_ && std::isfinite(flux_)) return flux_ / r;
  return moment(r) / r;
}

double FieldProfile::potential_derivative(double r) const {
  return field(r) - moment(r) / (r * r);
}

FieldProfile make_profile(const FieldSpec& spec) {
  spec.validate();
  const double R0 = spec.R0;
  std::vector<FieldPiece> pieces;
  switch (spec.kind) {
    case FieldKind::constant_disk:
      pieces.push_back({0.0, spec.param_or("r0", R0), {{1.0, 0.0}}});
      break;
    case FieldKind::anharmonic:
      pieces.push_back({0.0, R0, {{1.0, spec.param("gamma")}}});
      break;
    case FieldKind::well_radial:
      pieces.push_back({0.0, R0, {{spec.param("b0"), 0.0}, {1.0, 2.0}}});
      break;
    case FieldKind::island_annular:
      pieces.push_back({spec.param("rho1"), spec.param_or("rho2", R0), {{1.0, 0.0}}});
      break;
  }
  return FieldProfile::from_pieces(std::move(pieces));
}

double flux(const FieldProfile& profile) { return profile.flux(); }

double angular_potential(const FieldProfile& profile, double r) {
  if (!(r > 0.0)) throw ValidationError("angular_potential: r must be positive");
  return profile.potential(r);
}

double flux_by_quadrature(const FieldProfile& profile) {
  double total = 0.0;
  for (const auto& p : profile.pieces()) {
    if (piece_is_zero(p)) continue;
    if (!std::isfinite(p.hi)) return kInf;
    total += num::integrate([&](double s) { return s * piece_field(p, s); }, p.lo, p.hi, 64);
  }
  return total;
}

FieldSpec parse_field_spec(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("field config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("field config must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (key != "kind" && key != "params" && key != "R0") throw ValidationError("unknown field config key '" + key + "'");
  if (!doc.contains("kind") || !doc["kind"].is_string()) throw ValidationError("field config needs a string 'kind'");

  FieldSpec spec;
  spec.kind = field_kind_from_string(doc["kind"].get<std::string>());
  if (doc.contains("params")) {
    if (!doc["params"].is_object()) throw ValidationError("'params' must be an object of numbers");
    for (const auto& [key, value] : doc["params"].items()) {
      if (!value.is_number()) throw ValidationError("parameter '" + key + "' must be a number");
      spec.params[key] = value.get<double>();
    }
  }
  if (doc.contains("R0") && !doc["R0"].is_null()) {
    if (!doc["R0"].is_number()) throw ValidationError("'R0' must be a number");
    spec.R0 = doc["R0"].get<double>();
  }
  spec.validate();
  return spec;
}

FieldSpec load_field_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open field config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_field_spec(buf.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string field_spec_to_json(const FieldSpec& spec) {
  nlohmann::ordered_json doc;
  doc["kind"] = std::string(to_string(spec.kind));
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : spec.params) params[key] = value;
  doc["params"] = params;
  if (std::isfinite(spec.R0)) doc["R0"] = spec.R0;
  else doc["R0"] = nullptr;
  return doc.dump();
}

}  // namespace magres
