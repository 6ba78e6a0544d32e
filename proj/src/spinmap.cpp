#include "solitonlab/spinmap.hpp"

#include <algorithm>
#include <cmath>

#include "solitonlab/error.hpp"

namespace solitonlab {

std::vector<double> SpinField::theta() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out[i] = std::atan2(std::hypot(sx[i], sy[i]), sz[i]);
  }
  return out;
}

std::vector<double> SpinField::azimuth() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = std::atan2(sy[i], sx[i]);
  return out;
}

namespace {

SpinField with_direction(std::span<const double> rho, auto direction) {
  SpinField s;
  const std::size_t n = rho.size();
  s.sx.resize(n);
  s.sy.resize(n);
  s.sz.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sz = 0.5 - std::clamp(rho[i], 0.0, 1.0);
    const double perp = std::sqrt(std::max(0.0, 0.25 - sz * sz));
    const auto [c, sn] = direction(i);
    s.sz[i] = sz;
    s.sx[i] = perp * c;
    s.sy[i] = perp * sn;
  }
  return s;
}

}  // namespace

SpinField to_spins(std::span<const double> rho, std::span<const double> phi) {
  if (rho.size() != phi.size()) throw AnalysisError("rho and phi fields differ in length");
  return with_direction(rho, [&](std::size_t i) {
    return std::pair{std::cos(phi[i]), std::sin(phi[i])};
  });
}

SpinField to_spins(std::span<const double> rho, std::span<const std::complex<double>> psi) {
  if (rho.size() != psi.size()) throw AnalysisError("rho and Psi fields differ in length");
  return with_direction(rho, [&](std::size_t i) {
    const double a = std::abs(psi[i]);
    if (a == 0.0) return std::pair{0.0, 0.0};
    return std::pair{psi[i].real() / a, psi[i].imag() / a};
  });
}

std::vector<double> inplane_mag_sq(const SpinField& s) {
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s.sx[i] * s.sx[i] + s.sy[i] * s.sy[i];
  return out;
}

double spin_length_defect(const SpinField& s) {
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double len = std::sqrt(s.sx[i] * s.sx[i] + s.sy[i] * s.sy[i] + s.sz[i] * s.sz[i]);
    worst = std::max(worst, std::abs(len - 0.5));
  }
  return worst;
}

SpinChainParams spin_chain_params(const PhysicalParams& p) {
  validate_lattice(p);
  if (!(p.rho0 >= 0.0 && p.rho0 <= 1.0)) throw PhysicsError("rho0 outside [0, 1]");
  SpinChainParams out;
  out.exchange = p.t;
  out.anisotropy = p.t - p.V;
  out.mu = 2.0 * out.anisotropy * p.rho0;
  out.h_z = out.anisotropy * (1.0 - 2.0 * p.rho0);
  out.theta0 = std::acos(1.0 - 2.0 * p.rho0);
  return out;
}

}  // namespace solitonlab
