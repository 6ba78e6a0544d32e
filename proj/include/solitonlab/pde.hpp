#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "solitonlab/analytic.hpp"
#include "solitonlab/params.hpp"

namespace solitonlab {

/// Uniform periodic grid on [-L/2, L/2) with N points.
struct Grid1D {
  double length = 0.0;
  std::size_t n = 0;

  /// Throws ConfigError unless N is even and at least 256 and L > 0.
  static Grid1D make(double length, std::size_t n);

  double dx() const { return length / static_cast<double>(n); }
  double x(std::size_t i) const { return -0.5 * length + dx() * static_cast<double>(i); }
  std::vector<double> points() const;
  /// Signed periodic distance x - center mapped into [-L/2, L/2).
  double wrap(double distance) const;
};

struct GpeState {
  Grid1D grid;
  std::vector<std::complex<double>> psi;
  double time = 0.0;
  PhysicalParams params;  // rho0 is rho_g0, U > 0
};

/// How the hard-core state is carried.
///
/// `phase` integrates the hydrodynamic pair (rho, phi). `order_parameter`
/// integrates (rho, Psi_s) directly, which stays smooth through a density node
/// where phi jumps; it is used for black solitons.
enum class HgpeTracking { phase, order_parameter };

std::string_view to_string(HgpeTracking tracking);

struct HgpeState {
  Grid1D grid;
  std::vector<double> rho;
  std::vector<double> phi;                        // phase mode
  std::vector<std::complex<double>> psi;          // order-parameter mode
  HgpeTracking tracking = HgpeTracking::phase;
  double time = 0.0;
  PhysicalParams params;
  double eps_rho = 1e-9;

  /// Phase field in either mode (arg Psi_s in order-parameter mode).
  std::vector<double> phase() const;
};

inline constexpr double kCflFactor = 0.2;  // dt <= kCflFactor dx^2

using GpeObserver = std::function<void(const GpeState&, std::size_t step)>;
using HgpeObserver = std::function<void(const HgpeState&, std::size_t step)>;

/// Strang split-step Fourier for i Psi_t = -Psi_xx / 2 + U |Psi|^2 Psi - mu Psi,
/// mu = U rho_g0. The observer sees step 0, every `every` steps and the last step.
/// Throws NumericalError for dt > 0.2 dx^2 or a non-finite field.
GpeState evolve_gpe(GpeState state, double dt, std::size_t steps, const GpeObserver& observer = {},
                    std::size_t every = 0);

/// Classical RK4 with 4th-order centred differences for
///   rho_t = kappa (rho (1 - rho) phi_x)_x,                          kappa = -1
///   phi_t = (1 - 2 rho)(R_xx / R - phi_x^2) / 2 + V rho_xx - 2 g rho + mu,  R^2 = rho (1 - rho)
/// or, in order-parameter mode, the complex equation with the continuity flux
/// Im(conj(Psi) Psi_x). mu = 2 g rho0.
/// Throws NumericalError for dt > 0.2 dx^2, non-finite values, and (phase mode)
/// rho leaving [eps_rho, 1 - eps_rho].
HgpeState evolve_hgpe(HgpeState state, double dt, std::size_t steps,
                      const HgpeObserver& observer = {}, std::size_t every = 0);

struct Observables {
  double n_total = 0.0;
  double energy = 0.0;
  double momentum = 0.0;
  std::vector<double> rho_s;
  std::vector<double> rho_d;
  double constraint_drift = 0.0;  // max | |Psi_s|^2 - rho (1 - rho) |, order-parameter mode
};

Observables observables(const GpeState& state);
Observables observables(const HgpeState& state);

// Initial data.
GpeState uniform_gpe(const Grid1D& grid, const PhysicalParams& gpe);
HgpeState uniform_hgpe(const Grid1D& grid, const PhysicalParams& hgpe);

/// Soliton moving at +v centred at -L/4 times its conjugate (moving at -v) at +L/4,
/// divided by sqrt(rho_g0) so both ends sit on the same background phase.
GpeState gpe_soliton_pair(const Grid1D& grid, const DerivedGroups& gpe);

enum class TravelingWave { exact, analytic };

std::string_view to_string(TravelingWave tw);
TravelingWave parse_traveling_wave(std::string_view text);

/// `branch` soliton at -L/4 and the opposite branch at +L/4, both moving at +v.
/// The density comes from the exact first integral (quadrature) or from the
/// closed form; the phase from dphi/dx = v (rho - 1/2) / (rho (1 - rho)).
/// At vbar = 0 the state is built in order-parameter mode with a sign-changing
/// real Psi_s; otherwise in phase mode.
HgpeState hgpe_soliton_pair(const Grid1D& grid, const DerivedGroups& hgpe, Branch branch,
                            TravelingWave tw = TravelingWave::exact);

/// Density perturbation rho0 (1 + eps exp(-x^2 / (2 w^2))) at rest.
HgpeState hgpe_pulse(const Grid1D& grid, const PhysicalParams& hgpe, double eps, double width);
GpeState gpe_pulse(const Grid1D& grid, const PhysicalParams& gpe, double eps, double width);

/// Exact hard-core traveling-wave variation f = rho - 1/2 at signed distances `z`.
std::vector<double> hgpe_exact_variation(std::span<const double> z, const DerivedGroups& hgpe,
                                         Branch branch);

/// Density fields of a GPE state.
std::vector<double> density(const GpeState& state);

}  // namespace solitonlab
