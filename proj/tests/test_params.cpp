#include <doctest.h>

#include <cmath>
#include <string>

#include "oracles.hpp"
#include "solitonlab/error.hpp"
#include "solitonlab/params.hpp"

using namespace solitonlab;

TEST_CASE("third-filling example values at rest") {
  const PhysicalParams p{1.0, 1.0 / 3.0, 0.0, 0.5};
  const DerivedGroups d = derive_groups(p, Side::hgpe, 0.0);
  CHECK(d.g == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(d.rho_s0 == 0.25);
  CHECK(d.c_s == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-15));
  CHECK(d.Lambda == doctest::Approx(0.5773502691896258).epsilon(1e-14));
  CHECK(d.zeta == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(d.h_z == 0.0);
  CHECK(d.mu == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(d.gamma == 1.0);
}

TEST_CASE("vbar 0.6 gives gamma 0.8 and width 0.625") {
  const DerivedGroups d = derive_groups_vbar(PhysicalParams{}, Side::hgpe, 0.6);
  CHECK(d.gamma == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(d.width_s == doctest::Approx(0.625).epsilon(1e-13));
  CHECK(d.v == doctest::Approx(0.6 * std::sqrt(1.0 / 3.0)).epsilon(1e-15));
}

TEST_CASE("lab speed and vbar agree") {
  const PhysicalParams p{};
  const double cs = std::sqrt(1.0 / 3.0);
  const DerivedGroups a = derive_groups(p, Side::hgpe, 0.3 * cs);
  const DerivedGroups b = derive_groups_vbar(p, Side::hgpe, 0.3);
  CHECK(a.vbar == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(a.gamma == doctest::Approx(b.gamma).epsilon(1e-15));
}

TEST_CASE("precondition violations") {
  CHECK_THROWS_AS(derive_groups_vbar(PhysicalParams{}, Side::hgpe, 1.0), PhysicsError);
  CHECK_THROWS_AS(derive_groups_vbar(PhysicalParams{}, Side::hgpe, -0.1), PhysicsError);
  try {
    derive_groups(PhysicalParams{1.0, 1.2, 0.0, 0.5}, Side::hgpe, 0.0);
    FAIL("expected PhysicsError");
  } catch (const PhysicsError& e) {
    CHECK(std::string(e.what()).find("g = t - V <= 0") != std::string::npos);
  }
  CHECK_THROWS_AS(derive_groups(PhysicalParams{2.0, 0.5, 0.0, 0.5}, Side::hgpe, 0.0), PhysicsError);
  CHECK_THROWS_AS(derive_groups(PhysicalParams{1.0, 0.3, 0.0, 1.0}, Side::hgpe, 0.0), PhysicsError);
  CHECK_THROWS_AS(derive_groups(PhysicalParams{1.0, 0.3, 0.0, 0.25}, Side::gpe, 0.0), PhysicsError);
}

TEST_CASE("matching the GPE to the half-filled hard-core system") {
  const PhysicalParams g = match_gpe_to_hgpe(PhysicalParams{});
  CHECK(g.U == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(g.rho0 == 0.25);
  const DerivedGroups dg = derive_groups(g, Side::gpe, 0.0);
  const DerivedGroups ds = derive_groups(PhysicalParams{}, Side::hgpe, 0.0);
  CHECK(dg.c_g == doctest::Approx(ds.c_s).epsilon(1e-15));
  CHECK(dg.mu == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  // V -> t from below drives U -> 0+.
  const PhysicalParams near{1.0, 1.0 - 1e-9, 0.0, 0.5};
  const double U = match_gpe_to_hgpe(near).U;
  CHECK(U > 0.0);
  CHECK(U < 1e-8);
}

TEST_CASE("property: group identities over random lattices and speeds") {
  oracle::Rng rng;
  for (int i = 0; i < 300; ++i) {
    const double V = rng.uniform(0.01, 0.99);
    const double vbar = rng.uniform(0.0, 0.99);
    const PhysicalParams p{1.0, V, 0.0, 0.5};
    const DerivedGroups d = derive_groups_vbar(p, Side::hgpe, vbar);
    // At half filling Lambda^2 = (1 - V) / 2, so 1 - 2 Lambda^2 = V.
    CHECK(d.Lambda * d.Lambda == doctest::Approx((1.0 - V) / 2.0).epsilon(1e-13));
    CHECK(d.zeta == doctest::Approx(std::sqrt((1.0 - V) / (2.0 * V))).epsilon(1e-12));
    CHECK(d.gamma * d.gamma + vbar * vbar == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(2.0 * d.gamma * d.zeta * d.width_s == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.xi == doctest::Approx(1.0 / std::sqrt(1.0 - V)).epsilon(1e-13));

    const DerivedGroups g = derive_groups_vbar(match_gpe_to_hgpe(p), Side::gpe, vbar);
    CHECK(g.c_g == doctest::Approx(d.c_s).epsilon(1e-14));
    CHECK(g.width_g * 2.0 * g.gamma * g.Lambda == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("property: transverse field and chemical potential away from half filling") {
  oracle::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const double V = rng.uniform(0.05, 0.95);
    const double rho0 = rng.uniform(0.01, 0.99);
    const DerivedGroups d = derive_groups(PhysicalParams{1.0, V, 0.0, rho0}, Side::hgpe, 0.0);
    CHECK(d.h_z == doctest::Approx((1.0 - V) * (1.0 - 2.0 * rho0)).epsilon(1e-13));
    CHECK(d.mu == doctest::Approx(2.0 * (1.0 - V) * rho0).epsilon(1e-13));
    CHECK(d.c_s == doctest::Approx(std::sqrt(2.0 * (1.0 - V) * rho0 * (1.0 - rho0))).epsilon(1e-13));
  }
}
