#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "solitonlab/params.hpp"

namespace solitonlab {

enum class Branch { dark, antidark, none };

std::string_view to_string(Branch branch);
Branch parse_branch(std::string_view text);

enum class ProfileKind { hgpe_density, hgpe_condensate, hgpe_phase, gpe_wavefunction, gpe_density };

std::string_view to_string(ProfileKind kind);

/// A sampled field on a uniform 1D grid together with the parameters that produced it.
struct Profile {
  using RealValues = std::vector<double>;
  using ComplexValues = std::vector<std::complex<double>>;

  std::vector<double> z;
  std::variant<RealValues, ComplexValues> values;
  ProfileKind kind = ProfileKind::hgpe_density;
  DerivedGroups groups;
  Branch branch = Branch::none;
  double center = 0.0;

  bool is_complex() const { return std::holds_alternative<ComplexValues>(values); }
  const RealValues& real() const { return std::get<RealValues>(values); }
  const ComplexValues& complex() const { return std::get<ComplexValues>(values); }
};

// Pointwise closed forms. z is measured in lattice units from the soliton centre.
// All of them throw PhysicsError for vbar outside [0, 1).

/// Hard-core particle density 1/2 +- (gamma/2) sech(2 gamma zeta z); + is antidark.
double hgpe_density(double z, double vbar, double zeta, Branch branch);

/// Hard-core condensate density 1/4 - (gamma^2/4) sech^2(2 gamma zeta z), either branch.
double hgpe_condensate(double z, double vbar, double zeta);

/// GPE order parameter sqrt(rho_g0) (gamma tanh(gamma Lambda z) + i vbar).
std::complex<double> gpe_wavefunction(double z, double vbar, double Lambda, double rho_g0);

/// GPE density rho_g0 (1 - gamma^2 sech^2(gamma Lambda z)).
double gpe_density(double z, double vbar, double Lambda, double rho_g0);

/// Magnitude of the GPE phase jump across the soliton, 2 atan(gamma / vbar); pi at vbar = 0.
double gpe_phase_jump(double vbar);

/// Sign/normalisation of the continuity law rho_t = kappa d/dx[rho (1 - rho) phi_x]
/// obtained by separating the hard-core order-parameter equation.
inline constexpr double kContinuityKappa = -1.0;

struct PhaseProfile {
  std::vector<double> phi;  // unwrapped, phi = 0 at the left grid edge
  double step = 0.0;        // phi(right edge) - phi(left edge)
  bool discontinuous = false;
  std::string note;
};

/// Phase of the hard-core soliton from the traveling-wave first integral
/// dphi/dz = kappa v (rho0 - rho) / (rho (1 - rho)), integrated from the left edge.
///
/// Needs half filling. At vbar = 0 on a soliton branch the integrand is singular
/// at the node: the result is the pi step of the sign-changing order parameter and
/// `discontinuous` is set.
PhaseProfile hgpe_phase(std::span<const double> z, const DerivedGroups& groups, Branch branch,
                        double center = 0.0);

/// Phase step of hgpe_phase over the whole real line.
double hgpe_phase_step(const DerivedGroups& groups, Branch branch);

/// Wraps an angle into (-pi, pi].
double wrap_phase(double phi);

// Samplers on an explicit grid.
Profile sample_hgpe_density(std::span<const double> z, const DerivedGroups& groups, Branch branch,
                            double center = 0.0);
Profile sample_hgpe_condensate(std::span<const double> z, const DerivedGroups& groups,
                               double center = 0.0);
Profile sample_hgpe_phase(std::span<const double> z, const DerivedGroups& groups, Branch branch,
                          double center = 0.0);
Profile sample_gpe_wavefunction(std::span<const double> z, const DerivedGroups& groups,
                                double center = 0.0);
Profile sample_gpe_density(std::span<const double> z, const DerivedGroups& groups,
                           double center = 0.0);

/// Uniform grid of n points on [-half_width, half_width].
std::vector<double> symmetric_grid(double half_width, std::size_t n);

}  // namespace solitonlab
