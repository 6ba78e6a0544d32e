#include "solitonlab/pde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "solitonlab/error.hpp"
#include "solitonlab/tw_ode.hpp"

namespace solitonlab {

Grid1D Grid1D::make(double length, std::size_t n) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ConfigError("grid.length", "grid.length must be positive");
  }
  if (n < 256 || n % 2 != 0) {
    throw ConfigError("grid.n", "grid.n must be even and >= 256, got " + std::to_string(n));
  }
  return {length, n};
}

std::vector<double> Grid1D::points() const {
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = x(i);
  return p;
}

double Grid1D::wrap(double distance) const {
  double d = std::fmod(distance + 0.5 * length, length);
  if (d < 0.0) d += length;
  return d - 0.5 * length;
}

std::string_view to_string(HgpeTracking tracking) {
  return tracking == HgpeTracking::phase ? "phase" : "order-parameter";
}

std::vector<double> HgpeState::phase() const {
  if (tracking == HgpeTracking::phase) return phi;
  std::vector<double> out(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) out[i] = std::arg(psi[i]);
  return out;
}

std::string_view to_string(TravelingWave tw) {
  return tw == TravelingWave::exact ? "exact" : "analytic";
}

TravelingWave parse_traveling_wave(std::string_view text) {
  if (text == "exact") return TravelingWave::exact;
  if (text == "analytic") return TravelingWave::analytic;
  throw ConfigError("tw", "tw must be exact or analytic, got '" + std::string(text) + "'");
}

namespace {

void check_cfl(double dt, const Grid1D& grid) {
  const double bound = kCflFactor * grid.dx() * grid.dx();
  if (!(dt > 0.0) || dt > bound * (1.0 + 1e-12)) {
    throw NumericalError("CFL violation: dt = " + std::to_string(dt) + " exceeds 0.2 dx^2 = " +
                             std::to_string(bound),
                         0);
  }
}

bool should_observe(std::size_t step, std::size_t steps, std::size_t every) {
  return step == 0 || step == steps || (every > 0 && step % every == 0);
}

// Periodic 4th-order centred differences.
void d1(const std::vector<double>& f, double dx, std::vector<double>& out) {
  const std::size_t n = f.size();
  const double s = 1.0 / (12.0 * dx);
  for (std::size_t i = 0; i < n; ++i) {
    const double fm2 = f[(i + n - 2) % n];
    const double fm1 = f[(i + n - 1) % n];
    const double fp1 = f[(i + 1) % n];
    const double fp2 = f[(i + 2) % n];
    out[i] = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) * s;
  }
}

void d2(const std::vector<double>& f, double dx, std::vector<double>& out) {
  const std::size_t n = f.size();
  const double s = 1.0 / (12.0 * dx * dx);
  for (std::size_t i = 0; i < n; ++i) {
    const double fm2 = f[(i + n - 2) % n];
    const double fm1 = f[(i + n - 1) % n];
    const double fp1 = f[(i + 1) % n];
    const double fp2 = f[(i + 2) % n];
    out[i] = (-fm2 + 16.0 * fm1 - 30.0 * f[i] + 16.0 * fp1 - fp2) * s;
  }
}

}  // namespace

GpeState evolve_gpe(GpeState state, double dt, std::size_t steps, const GpeObserver& observer,
                    std::size_t every) {
  const Grid1D& grid = state.grid;
  check_cfl(dt, grid);
  const double U = state.params.U;
  const double mu = U * state.params.rho0;
  const std::size_t n = grid.n;

  detail::FftPlan plan(n);
  const auto k = detail::wavenumbers(n, grid.length);
  std::vector<std::complex<double>> kinetic(n);
  for (std::size_t m = 0; m < n; ++m) {
    kinetic[m] = std::polar(1.0 / static_cast<double>(n), -0.5 * k[m] * k[m] * dt);
  }

  auto half_nonlinear = [&](std::span<std::complex<double>> f) {
    for (auto& z : f) z *= std::polar(1.0, -(U * std::norm(z) - mu) * 0.5 * dt);
  };

  if (observer) observer(state, 0);
  auto buf = plan.data();
  const double t0 = state.time;
  for (std::size_t step = 1; step <= steps; ++step) {
    std::copy(state.psi.begin(), state.psi.end(), buf.begin());
    half_nonlinear(buf);
    plan.forward();
    for (std::size_t m = 0; m < n; ++m) buf[m] *= kinetic[m];
    plan.backward();
    half_nonlinear(buf);
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(buf[i].real()) || !std::isfinite(buf[i].imag())) {
        throw NumericalError("non-finite value in Psi_g", step);
      }
      state.psi[i] = buf[i];
    }
    state.time = t0 + dt * static_cast<double>(step);
    if (observer && should_observe(step, steps, every)) observer(state, step);
  }
  return state;
}

namespace {

// Right-hand sides of the two hard-core formulations on packed state vectors.
class HgpeRhs {
 public:
  explicit HgpeRhs(const HgpeState& s)
      : n_(s.grid.n),
        dx_(s.grid.dx()),
        V_(s.params.V),
        g_(s.params.t - s.params.V),
        mu_(2.0 * g_ * s.params.rho0),
        a_(n_), b_(n_), c_(n_), d_(n_), e_(n_), tmp_(n_) {}

  // y = [rho, phi]
  void phase(const std::vector<double>& y, std::vector<double>& dy) {
    std::copy(y.begin(), y.begin() + n_, a_.begin());  // rho
    std::copy(y.begin() + n_, y.end(), b_.begin());    // phi
    for (std::size_t i = 0; i < n_; ++i) c_[i] = std::sqrt(a_[i] * (1.0 - a_[i]));  // R
    d1(b_, dx_, d_);  // phi_x
    for (std::size_t i = 0; i < n_; ++i) e_[i] = c_[i] * c_[i] * d_[i];  // flux
    d1(e_, dx_, tmp_);
    for (std::size_t i = 0; i < n_; ++i) dy[i] = kContinuityKappa * tmp_[i];
    d2(c_, dx_, e_);  // R_xx
    d2(a_, dx_, tmp_);  // rho_xx
    for (std::size_t i = 0; i < n_; ++i) {
      const double rho = a_[i];
      dy[n_ + i] = 0.5 * (1.0 - 2.0 * rho) * (e_[i] / c_[i] - d_[i] * d_[i]) + V_ * tmp_[i] -
                   2.0 * g_ * rho + mu_;
    }
  }

  // y = [rho, Re Psi, Im Psi]
  void order_parameter(const std::vector<double>& y, std::vector<double>& dy) {
    std::copy(y.begin(), y.begin() + n_, a_.begin());
    std::copy(y.begin() + n_, y.begin() + 2 * n_, b_.begin());
    std::copy(y.begin() + 2 * n_, y.end(), c_.begin());
    // Continuity flux Im(conj(Psi) Psi_x) = re im_x - im re_x.
    d1(b_, dx_, d_);
    d1(c_, dx_, e_);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = b_[i] * e_[i] - c_[i] * d_[i];
    d1(tmp_, dx_, d_);
    for (std::size_t i = 0; i < n_; ++i) dy[i] = kContinuityKappa * d_[i];
    // i Psi_t = -(1 - 2 rho) Psi_xx / 2 - V Psi rho_xx + (2 g rho - mu) Psi
    d2(a_, dx_, tmp_);  // rho_xx
    d2(b_, dx_, d_);    // re_xx
    d2(c_, dx_, e_);    // im_xx
    for (std::size_t i = 0; i < n_; ++i) {
      const double pot = -V_ * tmp_[i] + 2.0 * g_ * a_[i] - mu_;
      const double kin = -0.5 * (1.0 - 2.0 * a_[i]);
      const double h_re = kin * d_[i] + pot * b_[i];
      const double h_im = kin * e_[i] + pot * c_[i];
      dy[n_ + i] = h_im;        // d/dt Re = Im(H Psi)
      dy[2 * n_ + i] = -h_re;   // d/dt Im = -Re(H Psi)
    }
  }

 private:
  std::size_t n_;
  double dx_, V_, g_, mu_;
  std::vector<double> a_, b_, c_, d_, e_, tmp_;
};

void pack(const HgpeState& s, std::vector<double>& y) {
  const std::size_t n = s.grid.n;
  if (s.tracking == HgpeTracking::phase) {
    y.resize(2 * n);
    std::copy(s.rho.begin(), s.rho.end(), y.begin());
    std::copy(s.phi.begin(), s.phi.end(), y.begin() + n);
  } else {
    y.resize(3 * n);
    std::copy(s.rho.begin(), s.rho.end(), y.begin());
    for (std::size_t i = 0; i < n; ++i) {
      y[n + i] = s.psi[i].real();
      y[2 * n + i] = s.psi[i].imag();
    }
  }
}

void unpack(const std::vector<double>& y, HgpeState& s) {
  const std::size_t n = s.grid.n;
  std::copy(y.begin(), y.begin() + n, s.rho.begin());
  if (s.tracking == HgpeTracking::phase) {
    std::copy(y.begin() + n, y.end(), s.phi.begin());
  } else {
    for (std::size_t i = 0; i < n; ++i) s.psi[i] = {y[n + i], y[2 * n + i]};
  }
}

}  // namespace

HgpeState evolve_hgpe(HgpeState state, double dt, std::size_t steps, const HgpeObserver& observer,
                      std::size_t every) {
  check_cfl(dt, state.grid);
  validate_lattice(state.params);
  const bool phase_mode = state.tracking == HgpeTracking::phase;
  HgpeRhs rhs(state);
  auto f = [&](const std::vector<double>& y, std::vector<double>& dy) {
    if (phase_mode) {
      rhs.phase(y, dy);
    } else {
      rhs.order_parameter(y, dy);
    }
  };

  std::vector<double> y, k1, k2, k3, k4, tmp;
  pack(state, y);
  const std::size_t m = y.size();
  k1.resize(m);
  k2.resize(m);
  k3.resize(m);
  k4.resize(m);
  tmp.resize(m);
  const std::size_t n = state.grid.n;
  const double lo = state.eps_rho;
  const double hi = 1.0 - state.eps_rho;

  auto check_range = [&](std::size_t step) {
    if (!phase_mode) return;
    for (std::size_t i = 0; i < n; ++i) {
      if (y[i] < lo || y[i] > hi) {
        throw NumericalError("vacuum/saturation reached: rho = " + std::to_string(y[i]) +
                                 " left [eps_rho, 1 - eps_rho]",
                             step);
      }
    }
  };

  check_range(0);
  if (observer) observer(state, 0);
  const double t0 = state.time;
  for (std::size_t step = 1; step <= steps; ++step) {
    f(y, k1);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    f(tmp, k2);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    f(tmp, k3);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + dt * k3[i];
    f(tmp, k4);
    for (std::size_t i = 0; i < m; ++i) {
      y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!std::isfinite(y[i])) throw NumericalError("non-finite value in the hard-core state", step);
    }
    check_range(step);
    state.time = t0 + dt * static_cast<double>(step);
    if (observer && should_observe(step, steps, every)) {
      unpack(y, state);
      observer(state, step);
    }
  }
  unpack(y, state);
  return state;
}

std::vector<double> density(const GpeState& state) {
  std::vector<double> rho(state.psi.size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(state.psi[i]);
  return rho;
}

Observables observables(const GpeState& state) {
  Observables o;
  const double dx = state.grid.dx();
  const double U = state.params.U;
  const double rho0 = state.params.rho0;
  const auto dpsi = detail::spectral_derivative(state.psi, state.grid.length);
  o.rho_s = density(state);
  o.rho_d.assign(o.rho_s.size(), 0.0);
  for (std::size_t i = 0; i < state.psi.size(); ++i) {
    const double r = o.rho_s[i];
    o.n_total += r * dx;
    o.energy += (0.5 * std::norm(dpsi[i]) + 0.5 * U * (r - rho0) * (r - rho0)) * dx;
    o.momentum += std::imag(std::conj(state.psi[i]) * dpsi[i]) * dx;
  }
  return o;
}

Observables observables(const HgpeState& state) {
  Observables o;
  const std::size_t n = state.grid.n;
  const double dx = state.grid.dx();
  const double V = state.params.V;
  const double g = state.params.t - state.params.V;
  const double rho0 = state.params.rho0;
  o.rho_s.resize(n);
  o.rho_d.resize(n);
  std::vector<double> rho_x(n);
  d1(state.rho, dx, rho_x);

  std::vector<double> grad_sq(n), current(n);
  if (state.tracking == HgpeTracking::phase) {
    std::vector<double> R(n), R_x(n), phi_x(n);
    for (std::size_t i = 0; i < n; ++i) R[i] = std::sqrt(state.rho[i] * (1.0 - state.rho[i]));
    d1(R, dx, R_x);
    d1(state.phi, dx, phi_x);
    for (std::size_t i = 0; i < n; ++i) {
      grad_sq[i] = R_x[i] * R_x[i] + R[i] * R[i] * phi_x[i] * phi_x[i];
      current[i] = phi_x[i];
    }
  } else {
    std::vector<double> re(n), im(n), re_x(n), im_x(n);
    for (std::size_t i = 0; i < n; ++i) {
      re[i] = state.psi[i].real();
      im[i] = state.psi[i].imag();
    }
    d1(re, dx, re_x);
    d1(im, dx, im_x);
    for (std::size_t i = 0; i < n; ++i) {
      grad_sq[i] = re_x[i] * re_x[i] + im_x[i] * im_x[i];
      const double amp = std::norm(state.psi[i]);
      current[i] = amp > 1e-12 ? (re[i] * im_x[i] - im[i] * re_x[i]) / amp : 0.0;
      const double target = state.rho[i] * (1.0 - state.rho[i]);
      o.constraint_drift = std::max(o.constraint_drift, std::abs(amp - target));
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const double r = state.rho[i];
    o.rho_s[i] = r * (1.0 - r);
    o.rho_d[i] = r - o.rho_s[i];
    o.n_total += r * dx;
    o.energy += (0.5 * grad_sq[i] + 0.5 * V * rho_x[i] * rho_x[i] + g * (r - rho0) * (r - rho0)) * dx;
    o.momentum += (r - rho0) * current[i] * dx;
  }
  return o;
}

GpeState uniform_gpe(const Grid1D& grid, const PhysicalParams& gpe) {
  derive_groups_vbar(gpe, Side::gpe, 0.0);
  return {grid, std::vector<std::complex<double>>(grid.n, std::sqrt(gpe.rho0)), 0.0, gpe};
}

HgpeState uniform_hgpe(const Grid1D& grid, const PhysicalParams& hgpe) {
  derive_groups_vbar(hgpe, Side::hgpe, 0.0);
  HgpeState s;
  s.grid = grid;
  s.params = hgpe;
  s.rho.assign(grid.n, hgpe.rho0);
  s.phi.assign(grid.n, 0.0);
  return s;
}

GpeState gpe_soliton_pair(const Grid1D& grid, const DerivedGroups& gpe) {
  if (gpe.side != Side::gpe) throw PhysicsError("gpe_soliton_pair needs GPE groups");
  GpeState s = uniform_gpe(grid, gpe.params);
  const double rho0 = gpe.params.rho0;
  const double c1 = -0.25 * grid.length;
  const double c2 = 0.25 * grid.length;
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    // Unwrapped offsets: the two far-field phases then cancel at the periodic boundary.
    const auto a = gpe_wavefunction(x - c1, gpe.vbar, gpe.Lambda, rho0);
    const auto b = std::conj(gpe_wavefunction(x - c2, gpe.vbar, gpe.Lambda, rho0));
    s.psi[i] = a * b / std::sqrt(rho0);
  }
  return s;
}

std::vector<double> hgpe_exact_variation(std::span<const double> z, const DerivedGroups& hgpe,
                                         Branch branch) {
  const QuadratureODE ode = hgpe_traveling_wave_ode(hgpe);
  const double turning = 0.5 * hgpe.gamma * (branch == Branch::antidark ? 1.0 : -1.0);
  return solve_by_quadrature(ode, turning, z).y;
}

namespace {

Branch opposite(Branch b) { return b == Branch::dark ? Branch::antidark : Branch::dark; }

std::vector<double> variation(std::span<const double> z, const DerivedGroups& hgpe, Branch branch,
                              TravelingWave tw) {
  if (tw == TravelingWave::exact) return hgpe_exact_variation(z, hgpe, branch);
  std::vector<double> f(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    f[i] = hgpe_density(z[i], hgpe.vbar, hgpe.zeta, branch) - 0.5;
  }
  return f;
}

}  // namespace

HgpeState hgpe_soliton_pair(const Grid1D& grid, const DerivedGroups& hgpe, Branch branch,
                            TravelingWave tw) {
  if (hgpe.side != Side::hgpe || hgpe.params.rho0 != 0.5) {
    throw PhysicsError("rho0 != 1/2: soliton pairs need half filling");
  }
  if (branch == Branch::none) throw PhysicsError("soliton pair needs a dark or antidark branch");
  HgpeState s = uniform_hgpe(grid, hgpe.params);
  const double c1 = -0.25 * grid.length;
  const double c2 = 0.25 * grid.length;
  std::vector<double> z1(grid.n), z2(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    z1[i] = grid.wrap(grid.x(i) - c1);
    z2[i] = grid.wrap(grid.x(i) - c2);
  }
  const auto f1 = variation(z1, hgpe, branch, tw);
  const auto f2 = variation(z2, hgpe, opposite(branch), tw);
  for (std::size_t i = 0; i < grid.n; ++i) s.rho[i] = 0.5 + f1[i] + f2[i];

  if (hgpe.vbar == 0.0) {
    // Real order parameter changing sign at each node.
    s.tracking = HgpeTracking::order_parameter;
    s.phi.clear();
    s.psi.resize(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double amp = std::sqrt(std::max(0.0, s.rho[i] * (1.0 - s.rho[i])));
      const double x = grid.x(i);
      s.psi[i] = (x > c1 && x <= c2) ? -amp : amp;
    }
    return s;
  }

  std::vector<double> phi_x(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double r = s.rho[i];
    phi_x[i] = kContinuityKappa * hgpe.v * (hgpe.params.rho0 - r) / (r * (1.0 - r));
  }
  s.phi = detail::spectral_antiderivative(phi_x, grid.length);
  return s;
}

HgpeState hgpe_pulse(const Grid1D& grid, const PhysicalParams& hgpe, double eps, double width) {
  HgpeState s = uniform_hgpe(grid, hgpe);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    s.rho[i] = hgpe.rho0 * (1.0 + eps * std::exp(-x * x / (2.0 * width * width)));
  }
  return s;
}

GpeState gpe_pulse(const Grid1D& grid, const PhysicalParams& gpe, double eps, double width) {
  GpeState s = uniform_gpe(grid, gpe);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    s.psi[i] = std::sqrt(gpe.rho0 * (1.0 + eps * std::exp(-x * x / (2.0 * width * width))));
  }
  return s;
}

}  // namespace solitonlab
