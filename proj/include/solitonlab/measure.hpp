#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "solitonlab/params.hpp"

namespace solitonlab {

enum class Polarity { dark, bright, automatic };

Polarity parse_polarity(std::string_view text);

/// Fit of B - A sech^2((x - x0) / width) (dark) or B + A sech^2(...) (bright).
struct FitResult {
  double amplitude = 0.0;
  double width = 0.0;
  double center = 0.0;
  double background = 0.0;
  double residual = 0.0;  // sup-norm of data - model
  bool converged = false;
  int iterations = 0;
  Polarity polarity = Polarity::dark;
};

struct FitGuess {
  double amplitude;
  double width;
  double center;
  double background;
};

/// Damped Gauss-Newton (Levenberg-Marquardt) with moment-based starting values.
/// Converges when the parameter step is below 1e-12; after 200 iterations the
/// best point so far is returned with converged = false.
/// Throws AnalysisError for a flat profile ("no extremum") or when fewer than 50
/// points fall within three widths of the extremum.
FitResult fit_sech2(std::span<const double> x, std::span<const double> y,
                    Polarity polarity = Polarity::automatic,
                    std::optional<FitGuess> guess = std::nullopt);

/// Points of a periodic profile within `half_width` of `center`, unwrapped to a
/// contiguous coordinate range and sorted. `period` <= 0 means non-periodic.
struct Window {
  std::vector<double> x;
  std::vector<double> y;
};
Window extract_window(std::span<const double> x, std::span<const double> y, double center,
                      double half_width, double period);

struct Snapshot {
  double time = 0.0;
  std::vector<double> x;
  std::vector<double> y;
};

struct TrackOptions {
  Polarity polarity = Polarity::dark;
  double initial_center = 0.0;
  double window = 10.0;  // half-width of the fit window
  double period = 0.0;   // domain length for periodic snapshots
};

struct TrackResult {
  double speed = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<double> times;
  std::vector<double> centers;  // unwrapped
  std::vector<FitResult> fits;
  std::string warning;  // "non-ballistic motion" when R^2 < 0.999
};

/// Fits each snapshot inside a window that follows the soliton and returns the
/// least-squares slope of centre against time. Needs at least 5 snapshots.
TrackResult track_soliton(std::span<const Snapshot> snapshots, const TrackOptions& options);

enum class System { gpe, hgpe };

std::string_view to_string(System system);
System parse_system(std::string_view text);

struct SoundOptions {
  double length = 400.0;
  std::size_t n = 1600;
  double width = 10.0;
  double duration = 150.0;
  double dt = 0.0;  // 0 selects 0.2 dx^2
};

struct SoundResult {
  double speed = 0.0;
  double speed_right = 0.0;
  double speed_left = 0.0;
  double asymmetry = 0.0;  // worst |lead - trail| / (lead + trail) of the outgoing pulses
  double expected = 0.0;   // c_s or c_g
};

/// Launches a Gaussian density bump of relative amplitude eps at rest and tracks
/// the half-maximum midpoints of the two outgoing pulses. For the GPE `params`
/// are GPE parameters (rho0 = rho_g0, U > 0).
/// Throws AnalysisError("eps too large ...") when a pulse is more than 5% asymmetric.
SoundResult measure_sound_speed(System system, const PhysicalParams& params, double eps,
                                const SoundOptions& options = {});

enum class SweepMode { analytic, pde };

SweepMode parse_sweep_mode(std::string_view text);

struct SweepRow {
  double vbar = 0.0;
  double gamma = 0.0;
  double depth_analytic = 0.0;  // gamma^2 rho_s0
  double depth_fit = 0.0;
  double width_analytic = 0.0;  // (2 gamma zeta)^-1
  double width_fit = 0.0;
};

struct SweepOptions {
  SweepMode mode = SweepMode::analytic;
  // pde mode
  double length = 64.0;
  std::size_t n = 1024;
  double duration = 4.0;
};

/// Condensate-density dip depth and width against vbar at half filling.
/// The analytic path fits the closed-form profile; the pde path fits the rho_s dip
/// of an evolved exact traveling-wave pair.
std::vector<SweepRow> contrast_sweep(std::span<const double> vbars, const PhysicalParams& hgpe,
                                     const SweepOptions& options = {});

}  // namespace solitonlab
