#include "solitonlab/measure.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "solitonlab/analytic.hpp"
#include "solitonlab/error.hpp"
#include "solitonlab/pde.hpp"

namespace solitonlab {

Polarity parse_polarity(std::string_view text) {
  if (text == "dark") return Polarity::dark;
  if (text == "bright") return Polarity::bright;
  if (text == "auto") return Polarity::automatic;
  throw ConfigError("fit.polarity", "fit.polarity must be dark, bright or auto");
}

namespace {

constexpr int kMaxIterations = 200;
constexpr double kStepTolerance = 1e-12;

struct Model {
  double sign;  // -1 dark, +1 bright

  double value(const std::array<double, 4>& p, double x) const {
    const double s = 1.0 / std::cosh((x - p[2]) / p[1]);
    return p[3] + sign * p[0] * s * s;
  }

  // d/d(A, width, x0, B)
  Eigen::Vector4d gradient(const std::array<double, 4>& p, double x) const {
    const double u = (x - p[2]) / p[1];
    const double s = 1.0 / std::cosh(u);
    const double s2 = s * s;
    const double dm_du = -2.0 * sign * p[0] * s2 * std::tanh(u);
    return {sign * s2, -dm_du * u / p[1], -dm_du / p[1], 1.0};
  }
};

double cost(const Model& m, const std::array<double, 4>& p, std::span<const double> x,
            std::span<const double> y) {
  double c = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - m.value(p, x[i]);
    c += r * r;
  }
  return c;
}

// x where y crosses `level` walking from index i in direction step.
std::optional<double> crossing(std::span<const double> x, std::span<const double> y,
                               std::size_t i, int step, double level, double sign) {
  auto beyond = [&](std::size_t k) { return sign < 0 ? y[k] >= level : y[k] <= level; };
  std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i);
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  while (k + step >= 0 && k + step < n) {
    const std::ptrdiff_t next = k + step;
    if (beyond(static_cast<std::size_t>(next))) {
      const double y0 = y[static_cast<std::size_t>(k)];
      const double y1 = y[static_cast<std::size_t>(next)];
      const double t = y1 == y0 ? 0.0 : (level - y0) / (y1 - y0);
      return x[static_cast<std::size_t>(k)] +
             t * (x[static_cast<std::size_t>(next)] - x[static_cast<std::size_t>(k)]);
    }
    k = next;
  }
  return std::nullopt;
}

FitGuess moment_guess(std::span<const double> x, std::span<const double> y, double sign) {
  const std::size_t n = x.size();
  const std::size_t edge = std::max<std::size_t>(1, n / 20);
  double bg = 0.0;
  for (std::size_t i = 0; i < edge; ++i) bg += y[i] + y[n - 1 - i];
  bg /= static_cast<double>(2 * edge);

  const auto it = sign < 0 ? std::min_element(y.begin(), y.end())
                           : std::max_element(y.begin(), y.end());
  const auto ie = static_cast<std::size_t>(std::distance(y.begin(), it));
  const double amp = std::abs(*it - bg);
  const double level = bg + sign * 0.5 * amp;
  const auto right = crossing(x, y, ie, 1, level, sign);
  const auto left = crossing(x, y, ie, -1, level, sign);
  double half = 0.0;
  if (right && left) {
    half = 0.5 * (*right - *left);
  } else if (right) {
    half = *right - x[ie];
  } else if (left) {
    half = x[ie] - *left;
  } else {
    half = 0.25 * (x.back() - x.front());
  }
  // sech^2(h / w) = 1/2 at the half-depth point.
  const double width = half / std::acosh(std::sqrt(2.0));
  return {amp, width, x[ie], bg};
}

}  // namespace

FitResult fit_sech2(std::span<const double> x, std::span<const double> y, Polarity polarity,
                    std::optional<FitGuess> guess) {
  if (x.size() != y.size() || x.size() < 8) {
    throw AnalysisError("fit needs matching x and y with at least 8 points");
  }
  const auto [mn, mx] = std::minmax_element(y.begin(), y.end());
  const double scale = std::max({1.0, std::abs(*mn), std::abs(*mx)});
  if (*mx - *mn <= 1e-14 * scale) throw AnalysisError("no extremum: profile is flat");

  if (polarity == Polarity::automatic) {
    const FitGuess lo = moment_guess(x, y, -1.0);
    polarity = (lo.background - *mn) >= (*mx - lo.background) ? Polarity::dark : Polarity::bright;
  }
  const double sign = polarity == Polarity::dark ? -1.0 : 1.0;
  const FitGuess g = guess.value_or(moment_guess(x, y, sign));
  if (!(g.amplitude > 0.0) || !(g.width > 0.0)) {
    throw AnalysisError("no extremum: profile has no dip or bump of the requested polarity");
  }

  std::size_t inside = 0;
  for (double xi : x) inside += std::abs(xi - g.center) <= 3.0 * g.width ? 1 : 0;
  if (inside < 50) {
    throw AnalysisError("under-resolved: " + std::to_string(inside) +
                        " points within three widths of the extremum, need 50");
  }

  const Model model{sign};
  std::array<double, 4> p{g.amplitude, g.width, g.center, g.background};
  double c = cost(model, p, x, y);
  double lambda = 1e-3;
  FitResult out;
  out.polarity = polarity;

  int iter = 0;
  for (; iter < kMaxIterations; ++iter) {
    Eigen::Matrix4d jtj = Eigen::Matrix4d::Zero();
    Eigen::Vector4d jtr = Eigen::Vector4d::Zero();
    for (std::size_t i = 0; i < x.size(); ++i) {
      const Eigen::Vector4d gi = model.gradient(p, x[i]);
      const double r = y[i] - model.value(p, x[i]);
      jtj.noalias() += gi * gi.transpose();
      jtr += gi * r;
    }
    Eigen::Matrix4d a = jtj;
    a.diagonal() *= (1.0 + lambda);
    const Eigen::Vector4d delta = a.ldlt().solve(jtr);

    const double pmax = std::max({std::abs(p[0]), std::abs(p[1]), std::abs(p[2]), std::abs(p[3])});
    if (delta.cwiseAbs().maxCoeff() < kStepTolerance * (1.0 + pmax)) {
      out.converged = true;
      break;
    }
    std::array<double, 4> trial{p[0] + delta[0], p[1] + delta[1], p[2] + delta[2], p[3] + delta[3]};
    if (!(trial[1] > 0.0)) {
      lambda *= 4.0;
      continue;
    }
    const double ct = cost(model, trial, x, y);
    if (ct <= c) {
      p = trial;
      c = ct;
      lambda = std::max(lambda / 3.0, 1e-15);
    } else {
      lambda *= 4.0;
    }
  }

  out.iterations = iter;
  out.amplitude = p[0];
  out.width = p[1];
  out.center = p[2];
  out.background = p[3];
  if (out.amplitude < 0.0) {
    out.amplitude = -out.amplitude;
    out.polarity = polarity == Polarity::dark ? Polarity::bright : Polarity::dark;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.residual = std::max(out.residual, std::abs(y[i] - model.value(p, x[i])));
  }
  return out;
}

Window extract_window(std::span<const double> x, std::span<const double> y, double center,
                      double half_width, double period) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = x[i] - center;
    if (period > 0.0) {
      d = std::fmod(d + 0.5 * period, period);
      if (d < 0.0) d += period;
      d -= 0.5 * period;
    }
    if (std::abs(d) <= half_width) pts.emplace_back(center + d, y[i]);
  }
  std::sort(pts.begin(), pts.end());
  Window w;
  for (const auto& [xi, yi] : pts) {
    w.x.push_back(xi);
    w.y.push_back(yi);
  }
  return w;
}

namespace {

struct LineFit {
  double slope;
  double intercept;
  double r_squared;
};

LineFit least_squares_line(std::span<const double> t, std::span<const double> c) {
  const double n = static_cast<double>(t.size());
  const double tm = std::accumulate(t.begin(), t.end(), 0.0) / n;
  const double cm = std::accumulate(c.begin(), c.end(), 0.0) / n;
  double stt = 0.0;
  double stc = 0.0;
  double scc = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - tm) * (t[i] - tm);
    stc += (t[i] - tm) * (c[i] - cm);
    scc += (c[i] - cm) * (c[i] - cm);
  }
  if (stt == 0.0) throw AnalysisError("track needs snapshots at distinct times");
  const double slope = stc / stt;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = c[i] - (cm + slope * (t[i] - tm));
    ss_res += r * r;
  }
  const double r2 = scc > 0.0 ? 1.0 - ss_res / scc : 1.0;
  return {slope, cm - slope * tm, r2};
}

}  // namespace

TrackResult track_soliton(std::span<const Snapshot> snapshots, const TrackOptions& options) {
  if (snapshots.size() < 5) throw AnalysisError("track needs at least 5 snapshots");
  TrackResult out;
  double predicted = options.initial_center;
  for (std::size_t k = 0; k < snapshots.size(); ++k) {
    const Snapshot& s = snapshots[k];
    const Window w = extract_window(s.x, s.y, predicted, options.window, options.period);
    const FitResult fit = fit_sech2(w.x, w.y, options.polarity);
    out.fits.push_back(fit);
    out.times.push_back(s.time);
    out.centers.push_back(fit.center);
    predicted = fit.center;
    if (k >= 1 && k + 1 < snapshots.size()) {
      const double dt_prev = out.times[k] - out.times[k - 1];
      if (dt_prev > 0.0) {
        const double vel = (out.centers[k] - out.centers[k - 1]) / dt_prev;
        predicted += vel * (snapshots[k + 1].time - s.time);
      }
    }
  }
  const LineFit line = least_squares_line(out.times, out.centers);
  out.speed = line.slope;
  out.intercept = line.intercept;
  out.r_squared = line.r_squared;
  if (out.r_squared < 0.999) out.warning = "non-ballistic motion";
  return out;
}

std::string_view to_string(System system) { return system == System::gpe ? "gpe" : "hgpe"; }

System parse_system(std::string_view text) {
  if (text == "gpe") return System::gpe;
  if (text == "hgpe") return System::hgpe;
  throw ConfigError("system", "system must be gpe or hgpe, got '" + std::string(text) + "'");
}

namespace {

struct PulseFront {
  double midpoint;
  double asymmetry;
};

// Outgoing pulse in x > 0 (dir = +1) or x < 0 (dir = -1) of the perturbation dy.
PulseFront locate_pulse(std::span<const double> x, std::span<const double> dy, int dir) {
  std::size_t peak = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if ((dir > 0 && x[i] > 0.0) || (dir < 0 && x[i] < 0.0)) {
      if (dy[i] > best) {
        best = dy[i];
        peak = i;
      }
    }
  }
  if (!(best > 0.0)) throw AnalysisError("sound pulse not found");
  const double level = 0.5 * best;
  const auto right = crossing(x, dy, peak, 1, level, 1.0);
  const auto left = crossing(x, dy, peak, -1, level, 1.0);
  if (!right || !left) throw AnalysisError("sound pulse half-maximum not resolved");
  const double lead = dir > 0 ? *right - x[peak] : x[peak] - *left;
  const double trail = dir > 0 ? x[peak] - *left : *right - x[peak];
  return {0.5 * (*right + *left), std::abs(lead - trail) / (lead + trail)};
}

}  // namespace

SoundResult measure_sound_speed(System system, const PhysicalParams& params, double eps,
                                const SoundOptions& options) {
  if (!(eps > 0.0)) throw PhysicsError("pulse eps must be positive");
  const Grid1D grid = Grid1D::make(options.length, options.n);
  const double dt = options.dt > 0.0 ? options.dt : kCflFactor * grid.dx() * grid.dx();
  const auto steps = static_cast<std::size_t>(std::ceil(options.duration / dt));
  const std::size_t every = std::max<std::size_t>(1, steps / 20);
  const auto x = grid.points();

  SoundResult out;
  std::vector<double> times;
  std::vector<std::vector<double>> fields;
  const double rho0 = params.rho0;
  // Only the second half of the run, when the two pulses have separated.
  const double t_start = 0.5 * options.duration;
  if (system == System::hgpe) {
    out.expected = derive_groups_vbar(params, Side::hgpe, 0.0).c_s;
    evolve_hgpe(hgpe_pulse(grid, params, eps, options.width), dt, steps,
                [&](const HgpeState& s, std::size_t) {
                  if (s.time < t_start) return;
                  times.push_back(s.time);
                  std::vector<double> d(s.rho.size());
                  for (std::size_t i = 0; i < d.size(); ++i) d[i] = s.rho[i] - rho0;
                  fields.push_back(std::move(d));
                },
                every);
  } else {
    out.expected = derive_groups_vbar(params, Side::gpe, 0.0).c_g;
    evolve_gpe(gpe_pulse(grid, params, eps, options.width), dt, steps,
               [&](const GpeState& s, std::size_t) {
                 if (s.time < t_start) return;
                 times.push_back(s.time);
                 std::vector<double> d = density(s);
                 for (double& v : d) v -= rho0;
                 fields.push_back(std::move(d));
               },
               every);
  }
  if (times.size() < 3) throw AnalysisError("sound run too short for front tracking");

  std::vector<double> right, left;
  for (const auto& f : fields) {
    const PulseFront r = locate_pulse(x, f, 1);
    const PulseFront l = locate_pulse(x, f, -1);
    right.push_back(r.midpoint);
    left.push_back(l.midpoint);
    out.asymmetry = std::max({out.asymmetry, r.asymmetry, l.asymmetry});
  }
  if (out.asymmetry > 0.05) {
    throw AnalysisError("eps too large: nonlinear steepening, front asymmetry " +
                        std::to_string(out.asymmetry) + " > 5%");
  }
  out.speed_right = least_squares_line(times, right).slope;
  out.speed_left = -least_squares_line(times, left).slope;
  out.speed = 0.5 * (out.speed_right + out.speed_left);
  return out;
}

SweepMode parse_sweep_mode(std::string_view text) {
  if (text == "analytic") return SweepMode::analytic;
  if (text == "pde") return SweepMode::pde;
  throw ConfigError("sweep.mode", "sweep.mode must be analytic or pde");
}

std::vector<SweepRow> contrast_sweep(std::span<const double> vbars, const PhysicalParams& hgpe,
                                     const SweepOptions& options) {
  std::vector<SweepRow> rows;
  for (double vbar : vbars) {
    const DerivedGroups d = derive_groups_vbar(hgpe, Side::hgpe, vbar);
    if (hgpe.rho0 != 0.5) throw PhysicsError("rho0 != 1/2: the contrast sweep needs half filling");
    SweepRow row;
    row.vbar = vbar;
    row.gamma = d.gamma;
    row.depth_analytic = d.gamma * d.gamma * d.rho_s0;
    row.width_analytic = d.width_s;

    if (options.mode == SweepMode::analytic) {
      const auto z = symmetric_grid(40.0 * d.width_s, 4001);
      const Profile p = sample_hgpe_condensate(z, d);
      const FitResult fit = fit_sech2(p.z, p.real(), Polarity::dark);
      row.depth_fit = fit.amplitude;
      row.width_fit = fit.width;
    } else {
      const Grid1D grid = Grid1D::make(options.length, options.n);
      const double dt = kCflFactor * grid.dx() * grid.dx();
      const auto steps = static_cast<std::size_t>(std::ceil(options.duration / dt));
      const HgpeState end =
          evolve_hgpe(hgpe_soliton_pair(grid, d, Branch::dark), dt, steps);
      const Observables obs = observables(end);
      const double center = -0.25 * grid.length + d.v * end.time;
      const auto x = grid.points();
      const Window w = extract_window(x, obs.rho_s, center, 0.25 * grid.length, grid.length);
      const FitResult fit = fit_sech2(w.x, w.y, Polarity::dark);
      row.depth_fit = fit.amplitude;
      row.width_fit = fit.width;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace solitonlab
