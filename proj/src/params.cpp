#include "solitonlab/params.hpp"

#include <cmath>
#include <limits>

#include "solitonlab/error.hpp"

namespace solitonlab {

std::string_view to_string(Side side) { return side == Side::hgpe ? "hgpe" : "gpe"; }

void validate_lattice(const PhysicalParams& p) {
  if (!std::isfinite(p.t) || p.t != 1.0) {
    throw PhysicsError("t = 1 required: natural units hbar = m = a = 1 fix t a^2 = hbar^2/m");
  }
  if (!std::isfinite(p.V) || p.V >= p.t) {
    throw PhysicsError("g = t - V <= 0: sound speed would be imaginary (need V < t)");
  }
  if (p.V <= 0.0) {
    throw PhysicsError("V <= 0: zeta = Lambda / sqrt(1 - 2 Lambda^2) needs V > 0");
  }
}

namespace {

// Fills the speed-dependent fields; Lambda must already be set.
void set_speed(DerivedGroups& d, double vbar) {
  if (!(vbar >= 0.0)) throw PhysicsError("vbar < 0: soliton speed must be >= 0");
  if (!(vbar < 1.0)) throw PhysicsError("vbar >= 1: gamma^2 = 1 - vbar^2 must be positive");
  d.vbar = vbar;
  d.v = vbar * d.sound_speed();
  d.gamma = std::sqrt(1.0 - vbar * vbar);

  const double one_minus = 1.0 - 2.0 * d.Lambda * d.Lambda;
  d.zeta = one_minus > 0.0 ? d.Lambda / std::sqrt(one_minus)
                           : std::numeric_limits<double>::quiet_NaN();
  d.xi = kLatticeSpacing / (std::sqrt(2.0) * d.Lambda);
  d.width_s = 1.0 / (2.0 * d.gamma * d.zeta);
  d.width_g = 1.0 / (2.0 * d.gamma * d.Lambda);
}

DerivedGroups rest_groups(const PhysicalParams& p, Side side) {
  validate_lattice(p);
  if (side == Side::hgpe && !(p.rho0 > 0.0 && p.rho0 < 1.0)) {
    throw PhysicsError("rho0 outside (0, 1) for the hard-core system");
  }
  if (side == Side::gpe) {
    if (!(p.rho0 > 0.0)) throw PhysicsError("rho_g0 <= 0 for the GPE background");
    if (!(p.U > 0.0)) throw PhysicsError("U <= 0: GPE needs repulsive onsite interaction");
  }

  DerivedGroups d;
  d.side = side;
  d.params = p;
  d.g = p.t - p.V;
  d.rho_s0 = p.rho0 * (1.0 - p.rho0);
  d.c_s = std::sqrt(2.0 * d.g * d.rho_s0 / kMass);
  d.c_g = p.U > 0.0 ? std::sqrt(p.U * p.rho0 / kMass) : 0.0;
  d.h_z = d.g * (1.0 - 2.0 * p.rho0);
  d.mu = side == Side::hgpe ? 2.0 * d.g * p.rho0 : p.U * p.rho0;
  d.Lambda = d.sound_speed() / d.c0;
  return d;
}

}  // namespace

DerivedGroups derive_groups(const PhysicalParams& p, Side side, double v) {
  DerivedGroups d = rest_groups(p, side);
  if (!std::isfinite(v)) throw PhysicsError("v must be finite");
  set_speed(d, v / d.sound_speed());
  d.v = v;
  return d;
}

DerivedGroups derive_groups_vbar(const PhysicalParams& p, Side side, double vbar) {
  DerivedGroups d = rest_groups(p, side);
  set_speed(d, vbar);
  return d;
}

PhysicalParams match_gpe_to_hgpe(const PhysicalParams& hgpe) {
  const DerivedGroups d = rest_groups(hgpe, Side::hgpe);
  if (hgpe.rho0 != 0.5) throw PhysicsError("rho0 != 1/2: GPE matching needs half filling");
  PhysicalParams gpe = hgpe;
  gpe.rho0 = 0.25;
  gpe.U = 2.0 * d.g * d.rho_s0 / gpe.rho0;
  return gpe;
}

}  // namespace solitonlab
