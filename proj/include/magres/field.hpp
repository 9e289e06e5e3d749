#pragma once

#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace magres {

enum class FieldKind { constant_disk, anharmonic, well_radial, island_annular };

std::string_view to_string(FieldKind kind);
FieldKind field_kind_from_string(std::string_view name);

/// Declarative description of a radial field preset, as read from a config
/// file. Lengths are in dimensionless units.
///
/// Recognized params per kind:
///   constant_disk   r0 (defaults to R0)
///   anharmonic      gamma >= 0
///   well_radial     b0 > 0
///   island_annular  rho1 < rho2 (rho2 defaults to R0)
///
/// R0 is the outer support radius. For anharmonic and well_radial an absent
/// (infinite) R0 means the field fills the plane; a finite R0 cuts the field
/// off sharply there.
struct FieldSpec {
  FieldKind kind = FieldKind::constant_disk;
  std::map<std::string, double> params;
  double R0 = std::numeric_limits<double>::infinity();

  void validate() const;
  double param(const std::string& name) const;
  double param_or(const std::string& name, double fallback) const;
};

/// One term c * r^p of a field piece.
struct Monomial {
  double coef = 0.0;
  double power = 0.0;
};

/// B(r) = sum of monomials on [lo, hi).
struct FieldPiece {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  std::vector<Monomial> terms;
};

/// Immutable radial magnetic field with its canonical radial-gauge potential
///   a(r) = (1/r) * int_0^r s B(s) ds,
/// stored piecewise in closed form. Beyond the support radius the potential
/// is exactly alpha / r (Aharonov-Bohm tail), alpha being the flux
/// (1/2pi) int B dx.
class FieldProfile {
public:
  FieldProfile() = default;

  /// Pieces must be sorted, non-overlapping and start at r >= 0. Gaps carry
  /// zero field.
  static FieldProfile from_pieces(std::vector<FieldPiece> pieces);

  /// Field of the sum of two profiles.
  static FieldProfile combine(const FieldProfile& lhs, const FieldProfile& rhs);

  double field(double r) const;
  double potential(double r) const;
  /// d/dr of a(r); used by the residual checks.
  double potential_derivative(double r) const;
  /// int_0^r s B(s) ds.
  double moment(double r) const;

  double flux() const { return flux_; }
  double support_radius() const { return support_; }
  bool full_plane() const { return support_ == std::numeric_limits<double>::infinity(); }
  const std::vector<FieldPiece>& pieces() const { return pieces_; }

private:
  std::vector<FieldPiece> pieces_;
  std::vector<double> moment_at_lo_;  // int_0^{lo_i} s B ds
  double flux_ = 0.0;
  double support_ = 0.0;
};

FieldProfile make_profile(const FieldSpec& spec);

/// alpha = (1/2pi) int B dx. Infinite for full-plane profiles.
double flux(const FieldProfile& profile);

/// a(r), r > 0.
double angular_potential(const FieldProfile& profile, double r);

/// Numerical (1/2pi) int B dx by adaptive Gauss-Legendre over the pieces;
/// independent of the closed-form moments.
double flux_by_quadrature(const FieldProfile& profile);

FieldSpec parse_field_spec(std::string_view json_text);
FieldSpec load_field_spec(const std::string& path);
std::string field_spec_to_json(const FieldSpec& spec);

}  // namespace magres
