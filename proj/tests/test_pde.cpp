#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "oracles.hpp"
#include "solitonlab/analytic.hpp"
#include "solitonlab/error.hpp"
#include "solitonlab/measure.hpp"
#include "solitonlab/params.hpp"
#include "solitonlab/pde.hpp"

using namespace solitonlab;

namespace {

PhysicalParams gpe_matched() { return match_gpe_to_hgpe(PhysicalParams{}); }

double hgpe_dt(const Grid1D& g) { return kCflFactor * g.dx() * g.dx(); }

}  // namespace

TEST_CASE("grid validation") {
  CHECK_NOTHROW(Grid1D::make(10.0, 256));
  try {
    Grid1D::make(10.0, 255);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "grid.n");
  }
  CHECK_THROWS_AS(Grid1D::make(10.0, 128), ConfigError);
  CHECK_THROWS_AS(Grid1D::make(0.0, 256), ConfigError);
  const Grid1D g = Grid1D::make(32.0, 256);
  CHECK(g.x(0) == -16.0);
  CHECK(g.wrap(20.0) == doctest::Approx(-12.0));
  CHECK(g.wrap(-17.0) == doctest::Approx(15.0));
}

TEST_CASE("uniform GPE background is a fixed point") {
  const Grid1D g = Grid1D::make(25.6, 256);
  const GpeState s0 = uniform_gpe(g, gpe_matched());
  const GpeState s = evolve_gpe(s0, 0.002, 1000);
  double err = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) err = std::max(err, std::abs(s.psi[i] - s0.psi[i]));
  CHECK(err < 1e-12);
  CHECK(s.time == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("uniform hard-core background is a fixed point") {
  const Grid1D g = Grid1D::make(32.0, 256);
  const HgpeState s0 = uniform_hgpe(g, PhysicalParams{});
  const HgpeState s = evolve_hgpe(s0, hgpe_dt(g), 1000);
  double err = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    err = std::max({err, std::abs(s.rho[i] - 0.5), std::abs(s.phi[i] - s0.phi[i])});
  }
  CHECK(err < 1e-12);
}

TEST_CASE("observables of the uniform GPE background") {
  const Grid1D g = Grid1D::make(100.0, 256);
  const Observables o = observables(uniform_gpe(g, gpe_matched()));
  CHECK(o.n_total == doctest::Approx(25.0).epsilon(1e-13));
  CHECK(o.momentum == doctest::Approx(0.0));
  CHECK(o.rho_s.size() == g.n);
}

TEST_CASE("numerical aborts name the step") {
  const Grid1D g = Grid1D::make(32.0, 256);
  try {
    evolve_hgpe(uniform_hgpe(g, PhysicalParams{}), 10.0 * hgpe_dt(g), 10);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(e.step() == 0);
    CHECK(std::string(e.what()).find("CFL") != std::string::npos);
    CHECK(std::string(e.what()).find("(step 0)") != std::string::npos);
  }
  try {
    evolve_hgpe(hgpe_pulse(g, PhysicalParams{}, 1.2, 2.0), hgpe_dt(g), 10);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("vacuum/saturation reached") != std::string::npos);
  }
}

TEST_CASE("half-filling particle-hole symmetry on evolved pairs") {
  const Grid1D g = Grid1D::make(32.0, 256);
  const DerivedGroups d = derive_groups_vbar(PhysicalParams{}, Side::hgpe, 0.4);
  const double dt = hgpe_dt(g);
  const HgpeState a = evolve_hgpe(hgpe_soliton_pair(g, d, Branch::dark), dt, 2000);
  const HgpeState b = evolve_hgpe(hgpe_soliton_pair(g, d, Branch::antidark), dt, 2000);
  const auto pa = a.phase();
  const auto pb = b.phase();
  double rho_err = 0.0, phi_err = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    rho_err = std::max(rho_err, std::abs(a.rho[i] + b.rho[i] - 1.0));
    phi_err = std::max(phi_err, std::abs(pa[i] + pb[i]));
  }
  CHECK(rho_err < 1e-12);
  CHECK(phi_err < 1e-10);
}

TEST_CASE("shallow GPE soliton keeps depth and speed") {
  const Grid1D g = Grid1D::make(204.8, 2048);
  const DerivedGroups d = derive_groups_vbar(gpe_matched(), Side::gpe, 0.95);
  std::vector<Snapshot> snaps;
  const auto x = g.points();
  evolve_gpe(gpe_soliton_pair(g, d), 0.002, 10000,
             [&](const GpeState& s, std::size_t) { snaps.push_back({s.time, x, density(s)}); }, 1000);
  TrackOptions opt;
  opt.initial_center = -0.25 * g.length;
  opt.window = 4.0 / (d.gamma * d.Lambda);
  opt.period = g.length;
  const TrackResult t = track_soliton(snaps, opt);
  CHECK(std::abs(t.speed - d.v) / d.v < 0.01);
  CHECK(t.fits.back().amplitude == doctest::Approx((1.0 - 0.9025) * 0.25).epsilon(1e-3));
  CHECK(t.warning.empty());
}

TEST_CASE("exact traveling wave: phase step approaches pi for slow dark solitons") {
  // Integrate dphi/dz = kappa v (rho0 - rho) / (rho (1 - rho)) over the exact profile.
  for (double vbar : {0.3, 0.05}) {
    const DerivedGroups d = derive_groups_vbar(PhysicalParams{}, Side::hgpe, vbar);
    const auto z = symmetric_grid(40.0, 400001);
    const auto f = hgpe_exact_variation(z, d, Branch::dark);
    double step = 0.0;
    for (std::size_t i = 1; i < z.size(); ++i) {
      auto slope = [&](double fi) { return -d.v * (-fi) / (0.25 - fi * fi); };
      step += 0.5 * (slope(f[i]) + slope(f[i - 1])) * (z[i] - z[i - 1]);
    }
    CHECK(step < 0.0);
    if (vbar == 0.05) CHECK(std::abs(step) == doctest::Approx(std::numbers::pi).epsilon(0.02));
  }
}

TEST_CASE("black hard-core pair uses the order parameter and stays put") {
  const Grid1D g = Grid1D::make(32.0, 256);
  const DerivedGroups d = derive_groups_vbar(PhysicalParams{}, Side::hgpe, 0.0);
  const HgpeState s0 = hgpe_soliton_pair(g, d, Branch::dark);
  CHECK(s0.tracking == HgpeTracking::order_parameter);
  const HgpeState s = evolve_hgpe(s0, hgpe_dt(g), 4000);
  const Observables o = observables(s);
  CHECK(o.constraint_drift < 1e-6);
  const auto it = std::min_element(s.rho.begin(), s.rho.begin() + g.n / 2);
  CHECK(g.x(static_cast<std::size_t>(it - s.rho.begin())) == doctest::Approx(-8.0).epsilon(0.02));
  CHECK(*it < 1e-3);
}

TEST_CASE("hard-core pair conserves particle number and energy") {
  const Grid1D g = Grid1D::make(32.0, 256);
  const DerivedGroups d = derive_groups_vbar(PhysicalParams{}, Side::hgpe, 0.5);
  const HgpeState s0 = hgpe_soliton_pair(g, d, Branch::dark);
  const Observables o0 = observables(s0);
  const Observables o1 = observables(evolve_hgpe(s0, hgpe_dt(g), 4000));
  CHECK(std::abs(o1.n_total - o0.n_total) / o0.n_total < 1e-12);
  CHECK(std::abs(o1.energy - o0.energy) / std::abs(o0.energy) < 1e-5);
}

TEST_CASE("determinism of repeated runs") {
  const Grid1D g = Grid1D::make(64.0, 512);
  const DerivedGroups d = derive_groups_vbar(gpe_matched(), Side::gpe, 0.3);
  const GpeState a = evolve_gpe(gpe_soliton_pair(g, d), 0.003, 300);
  const GpeState b = evolve_gpe(gpe_soliton_pair(g, d), 0.003, 300);
  CHECK(a.psi == b.psi);
}

TEST_CASE("traveling-wave option parsing") {
  CHECK(parse_traveling_wave("exact") == TravelingWave::exact);
  CHECK(parse_traveling_wave("analytic") == TravelingWave::analytic);
  CHECK_THROWS_AS(parse_traveling_wave("guess"), ConfigError);
}
