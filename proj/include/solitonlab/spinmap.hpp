#pragma once

#include <complex>
#include <span>
#include <vector>

#include "solitonlab/params.hpp"

namespace solitonlab {

/// Classical spin of length 1/2 per grid point.
struct SpinField {
  std::vector<double> sx;
  std::vector<double> sy;
  std::vector<double> sz;

  std::size_t size() const { return sz.size(); }
  /// Polar angle from +z.
  std::vector<double> theta() const;
  /// Azimuth in the xy-plane.
  std::vector<double> azimuth() const;
};

/// S_z = 1/2 - rho, in-plane length sqrt(1/4 - S_z^2) along phi.
/// rho is clamped to [0, 1] only for the in-plane length, so |S| = 1/2 exactly.
SpinField to_spins(std::span<const double> rho, std::span<const double> phi);

/// Same from the order parameter: the in-plane direction is arg Psi_s, and zero
/// where Psi_s vanishes.
SpinField to_spins(std::span<const double> rho, std::span<const std::complex<double>> psi);

/// S_x^2 + S_y^2, equal to rho (1 - rho).
std::vector<double> inplane_mag_sq(const SpinField& s);

/// Largest | |S| - 1/2 | over the field.
double spin_length_defect(const SpinField& s);

struct SpinChainParams {
  double exchange = 0.0;    // t
  double anisotropy = 0.0;  // g = t - V
  double h_z = 0.0;         // g (1 - 2 rho0)
  double mu = 0.0;          // 2 g rho0
  double theta0 = 0.0;      // cone angle, cos theta0 = 1 - 2 rho0
};

/// Throws PhysicsError for rho0 outside [0, 1] or an invalid lattice.
SpinChainParams spin_chain_params(const PhysicalParams& p);

}  // namespace solitonlab
