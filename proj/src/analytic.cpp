#include "solitonlab/analytic.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "solitonlab/error.hpp"

namespace solitonlab {

namespace {

double gamma_of(double vbar) {
  if (!(vbar >= 0.0 && vbar < 1.0)) throw PhysicsError("vbar outside [0, 1): need 0 <= vbar < 1");
  return std::sqrt(1.0 - vbar * vbar);
}

double sech(double x) { return 1.0 / std::cosh(x); }

void require_half_filling(const DerivedGroups& groups) {
  if (groups.side != Side::hgpe || groups.params.rho0 != 0.5) {
    throw PhysicsError("rho0 != 1/2: closed-form hard-core profiles need half filling");
  }
}

}  // namespace

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::dark: return "dark";
    case Branch::antidark: return "antidark";
    case Branch::none: return "n/a";
  }
  return "n/a";
}

Branch parse_branch(std::string_view text) {
  if (text == "dark") return Branch::dark;
  if (text == "antidark") return Branch::antidark;
  throw ConfigError("branch", "branch must be dark or antidark, got '" + std::string(text) + "'");
}

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::hgpe_density: return "hgpe-density";
    case ProfileKind::hgpe_condensate: return "hgpe-condensate";
    case ProfileKind::hgpe_phase: return "hgpe-phase";
    case ProfileKind::gpe_wavefunction: return "gpe-wavefunction";
    case ProfileKind::gpe_density: return "gpe-density";
  }
  return "unknown";
}

double hgpe_density(double z, double vbar, double zeta, Branch branch) {
  const double gamma = gamma_of(vbar);
  const double f = 0.5 * gamma * sech(2.0 * gamma * zeta * z);
  return branch == Branch::antidark ? 0.5 + f : 0.5 - f;
}

double hgpe_condensate(double z, double vbar, double zeta) {
  const double gamma = gamma_of(vbar);
  const double s = sech(2.0 * gamma * zeta * z);
  return 0.25 - 0.25 * gamma * gamma * s * s;
}

std::complex<double> gpe_wavefunction(double z, double vbar, double Lambda, double rho_g0) {
  const double gamma = gamma_of(vbar);
  const double amp = std::sqrt(rho_g0);
  return {amp * gamma * std::tanh(gamma * Lambda * z), amp * vbar};
}

double gpe_density(double z, double vbar, double Lambda, double rho_g0) {
  const double gamma = gamma_of(vbar);
  const double s = sech(gamma * Lambda * z);
  return rho_g0 * (1.0 - gamma * gamma * s * s);
}

double gpe_phase_jump(double vbar) {
  const double gamma = gamma_of(vbar);
  if (vbar == 0.0) return std::numbers::pi;
  return 2.0 * std::atan(gamma / vbar);
}

double wrap_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(phi, two_pi);
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

namespace {

// dphi/dz of the first integral for the closed-form density.
auto phase_slope(const DerivedGroups& groups, Branch branch, double center) {
  return [&groups, branch, center](double z) {
    const double rho = hgpe_density(z - center, groups.vbar, groups.zeta, branch);
    return kContinuityKappa * groups.v * (groups.params.rho0 - rho) / (rho * (1.0 - rho));
  };
}

double black_step(Branch branch) {
  // Sign follows the v -> 0+ sign of the integrand: negative for the density dip.
  return branch == Branch::dark ? -std::numbers::pi : std::numbers::pi;
}

}  // namespace

PhaseProfile hgpe_phase(std::span<const double> z, const DerivedGroups& groups, Branch branch,
                        double center) {
  require_half_filling(groups);
  if (branch == Branch::none) throw PhysicsError("hgpe_phase needs a soliton branch");
  PhaseProfile out;
  out.phi.assign(z.size(), 0.0);
  if (z.empty()) return out;

  if (groups.vbar == 0.0) {
    const double step = black_step(branch);
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double rel = z[i] - center;
      out.phi[i] = rel > 0.0 ? step : (rel == 0.0 ? 0.5 * step : 0.0);
    }
    out.step = out.phi.back() - out.phi.front();
    out.discontinuous = true;
    out.note = "black soliton: phase step discontinuous";
    return out;
  }

  using boost::math::quadrature::gauss_kronrod;
  const auto slope = phase_slope(groups, branch, center);
  double acc = 0.0;
  for (std::size_t i = 1; i < z.size(); ++i) {
    acc += gauss_kronrod<double, 31>::integrate(slope, z[i - 1], z[i], 12, 1e-14);
    out.phi[i] = acc;
  }
  out.step = acc;
  return out;
}

double hgpe_phase_step(const DerivedGroups& groups, Branch branch) {
  require_half_filling(groups);
  if (branch == Branch::none) throw PhysicsError("hgpe_phase needs a soliton branch");
  if (groups.vbar == 0.0) return black_step(branch);
  using boost::math::quadrature::gauss_kronrod;
  const auto slope = phase_slope(groups, branch, 0.0);
  const double inf = std::numeric_limits<double>::infinity();
  return gauss_kronrod<double, 31>::integrate(slope, -inf, 0.0, 15, 1e-14) +
         gauss_kronrod<double, 31>::integrate(slope, 0.0, inf, 15, 1e-14);
}

namespace {

Profile make_profile(std::span<const double> z, ProfileKind kind, const DerivedGroups& groups,
                     Branch branch, double center) {
  Profile p;
  p.z.assign(z.begin(), z.end());
  p.kind = kind;
  p.groups = groups;
  p.branch = branch;
  p.center = center;
  return p;
}

}  // namespace

Profile sample_hgpe_density(std::span<const double> z, const DerivedGroups& groups, Branch branch,
                            double center) {
  require_half_filling(groups);
  Profile p = make_profile(z, ProfileKind::hgpe_density, groups, branch, center);
  Profile::RealValues v(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    v[i] = hgpe_density(z[i] - center, groups.vbar, groups.zeta, branch);
  }
  p.values = std::move(v);
  return p;
}

Profile sample_hgpe_condensate(std::span<const double> z, const DerivedGroups& groups,
                               double center) {
  require_half_filling(groups);
  Profile p = make_profile(z, ProfileKind::hgpe_condensate, groups, Branch::none, center);
  Profile::RealValues v(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    v[i] = hgpe_condensate(z[i] - center, groups.vbar, groups.zeta);
  }
  p.values = std::move(v);
  return p;
}

Profile sample_hgpe_phase(std::span<const double> z, const DerivedGroups& groups, Branch branch,
                          double center) {
  Profile p = make_profile(z, ProfileKind::hgpe_phase, groups, branch, center);
  p.values = hgpe_phase(z, groups, branch, center).phi;
  return p;
}

Profile sample_gpe_wavefunction(std::span<const double> z, const DerivedGroups& groups,
                                double center) {
  Profile p = make_profile(z, ProfileKind::gpe_wavefunction, groups, Branch::dark, center);
  Profile::ComplexValues v(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    v[i] = gpe_wavefunction(z[i] - center, groups.vbar, groups.Lambda, groups.params.rho0);
  }
  p.values = std::move(v);
  return p;
}

Profile sample_gpe_density(std::span<const double> z, const DerivedGroups& groups, double center) {
  Profile p = make_profile(z, ProfileKind::gpe_density, groups, Branch::dark, center);
  Profile::RealValues v(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    v[i] = gpe_density(z[i] - center, groups.vbar, groups.Lambda, groups.params.rho0);
  }
  p.values = std::move(v);
  return p;
}

std::vector<double> symmetric_grid(double half_width, std::size_t n) {
  if (n < 2) throw AnalysisError("grid needs at least 2 points");
  std::vector<double> z(n);
  const double h = 2.0 * half_width / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = -half_width + h * static_cast<double>(i);
  }
  // Exact centre for odd n.
  if (n % 2 == 1) z[n / 2] = 0.0;
  return z;
}

}  // namespace solitonlab
