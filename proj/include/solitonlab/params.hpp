#pragma once

#include <string_view>

namespace solitonlab {

// Natural units: hbar = m = a = 1, so the zero-point velocity c0 = hbar/(m a)
// is 1 and the identification t a^2 = hbar^2/m forces t = 1.
inline constexpr double kHbar = 1.0;
inline constexpr double kMass = 1.0;
inline constexpr double kLatticeSpacing = 1.0;
inline constexpr double kZeroPointVelocity = kHbar / (kMass * kLatticeSpacing);

/// Which order-parameter equation a set of groups refers to.
enum class Side { hgpe, gpe };

std::string_view to_string(Side side);

/// Lattice and interaction constants of the extended Bose-Hubbard model.
///
/// `rho0` is the background particle density on the hard-core side and the
/// background condensate density rho_g^0 on the GPE side. `U` is only read on
/// the GPE side.
struct PhysicalParams {
  double t = 1.0;
  double V = 1.0 / 3.0;
  double U = 0.0;
  double rho0 = 0.5;

  bool operator==(const PhysicalParams&) const = default;
};

/// Every derived and dimensionless quantity used by the other modules.
///
/// `Lambda`, `vbar`, `gamma` and the widths are computed from the sound speed of
/// `side`. `zeta` and `width_s` are NaN on the GPE side when 2 Lambda^2 >= 1.
struct DerivedGroups {
  Side side = Side::hgpe;
  PhysicalParams params;

  double g = 0.0;       // easy-plane anisotropy t - V (d = 1)
  double mu = 0.0;      // chemical potential of the uniform background
  double h_z = 0.0;     // transverse field g (1 - 2 rho0)
  double rho_s0 = 0.0;  // rho0 (1 - rho0)
  double c_s = 0.0;     // hard-core sound speed sqrt(2 g rho_s0 / m)
  double c_g = 0.0;     // GPE sound speed sqrt(U rho0 / m); 0 when U = 0
  double c0 = kZeroPointVelocity;
  double Lambda = 0.0;
  double v = 0.0;  // lab-frame soliton speed
  double vbar = 0.0;
  double gamma = 1.0;
  double zeta = 0.0;
  double xi = 0.0;       // healing length a / (sqrt(2) Lambda)
  double width_s = 0.0;  // (2 gamma zeta)^-1
  double width_g = 0.0;  // (2 gamma Lambda)^-1

  /// Sound speed of `side`.
  double sound_speed() const { return side == Side::hgpe ? c_s : c_g; }
};

/// Computes all derived groups for a soliton moving at lab-frame speed `v`.
///
/// Throws PhysicsError when t != 1, V is outside (0, t), rho0 is outside (0, 1)
/// on the hard-core side, U <= 0 or rho0 <= 0 on the GPE side, v < 0, or
/// v / c >= 1.
DerivedGroups derive_groups(const PhysicalParams& p, Side side, double v);

/// Same as derive_groups with the speed given as a fraction of the side's sound speed.
DerivedGroups derive_groups_vbar(const PhysicalParams& p, Side side, double vbar);

/// GPE parameters whose condensate-density soliton matches a half-filled
/// hard-core system: rho_g^0 = 1/4 and U = 2 g rho_s0 / rho_g^0, so c_g = c_s.
PhysicalParams match_gpe_to_hgpe(const PhysicalParams& hgpe);

/// Validates the parameter invariants shared by both sides (t = 1, 0 < V < t).
void validate_lattice(const PhysicalParams& p);

}  // namespace solitonlab
