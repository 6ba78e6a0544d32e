#include "solitonlab/tw_ode.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <memory>

#include "solitonlab/analytic.hpp"
#include "solitonlab/error.hpp"

namespace solitonlab {

std::string_view to_string(OdeTag tag) {
  switch (tag) {
    case OdeTag::Eq10: return "Eq10";
    case OdeTag::Eq14: return "Eq14";
    case OdeTag::Eq15: return "Eq15";
    case OdeTag::Eq19: return "Eq19";
    case OdeTag::Eq21: return "Eq21";
    case OdeTag::Eq23: return "Eq23";
    case OdeTag::Eq14Parent: return "Eq14Parent";
    case OdeTag::Eq23Parent: return "Eq23Parent";
    case OdeTag::HgpeExact: return "HgpeExact";
  }
  return "?";
}

OdeTag parse_ode_tag(std::string_view text) {
  for (OdeTag t : {OdeTag::Eq10, OdeTag::Eq14, OdeTag::Eq15, OdeTag::Eq19, OdeTag::Eq21,
                   OdeTag::Eq23, OdeTag::Eq14Parent, OdeTag::Eq23Parent, OdeTag::HgpeExact}) {
    if (to_string(t) == text) return t;
  }
  throw ConfigError("ode", "unknown ODE tag '" + std::string(text) + "'");
}

namespace {

double checked_gamma(double vbar) {
  if (!(vbar >= 0.0 && vbar < 1.0)) throw PhysicsError("vbar outside [0, 1): need 0 <= vbar < 1");
  return std::sqrt(1.0 - vbar * vbar);
}

const Polynomial kY{0.0, 1.0};

// (1 - r)^2 (r - vbar^2)
Polynomial density_poly(double vbar) {
  const Polynomial one_minus{1.0, -1.0};
  return one_minus * one_minus * Polynomial{-vbar * vbar, 1.0};
}

}  // namespace

QuadratureODE make_ode(OdeTag tag, double vbar) {
  const double gamma = checked_gamma(vbar);
  const double g2 = gamma * gamma;
  QuadratureODE ode;
  ode.tag = tag;
  ode.gamma = gamma;
  ode.vbar = vbar;
  ode.independent = "zbar";
  switch (tag) {
    case OdeTag::Eq10:
      ode.numerator = 4.0 * (kY * kY) * Polynomial{g2, 0.0, -1.0};
      ode.variable = "f";
      ode.equilibria = {0.0};
      break;
    case OdeTag::Eq14:
    case OdeTag::Eq23:
      ode.numerator = density_poly(vbar);
      ode.variable = "rho_bar";
      ode.equilibria = {1.0};
      break;
    case OdeTag::Eq14Parent:
      ode.numerator = 16.0 * density_poly(vbar);
      ode.variable = "rho_bar";
      ode.equilibria = {1.0};
      break;
    case OdeTag::Eq23Parent:
      ode.numerator = 4.0 * density_poly(vbar);
      ode.variable = "rho_bar";
      ode.equilibria = {1.0};
      break;
    case OdeTag::Eq15:
      ode.numerator = (kY * kY) * Polynomial{g2, 1.0};
      ode.variable = "f_s_bar";
      ode.equilibria = {0.0};
      break;
    case OdeTag::Eq19: {
      const Polynomial d{g2, 0.0, -1.0};
      ode.numerator = 0.5 * (d * d);
      ode.variable = "psi_r";
      ode.independent = "w";
      ode.equilibria = {-gamma, gamma};
      break;
    }
    case OdeTag::Eq21: {
      const Polynomial d{g2, 0.0, -1.0};
      ode.numerator = d * d;
      ode.variable = "psi_r";
      ode.equilibria = {-gamma, gamma};
      break;
    }
    case OdeTag::HgpeExact:
      throw AnalysisError("HgpeExact depends on V and g: use hgpe_traveling_wave_ode");
  }
  return ode;
}

QuadratureODE hgpe_traveling_wave_ode(const DerivedGroups& groups) {
  if (groups.side != Side::hgpe || groups.params.rho0 != 0.5) {
    throw PhysicsError("rho0 != 1/2: the hard-core first integral needs half filling");
  }
  const double g2 = groups.gamma * groups.gamma;
  const double cs2 = groups.c_s * groups.c_s;
  QuadratureODE ode;
  ode.tag = OdeTag::HgpeExact;
  ode.gamma = groups.gamma;
  ode.vbar = groups.vbar;
  ode.numerator = 4.0 * cs2 * (kY * kY) * Polynomial{g2, 0.0, -4.0};
  ode.denominator = Polynomial{groups.params.V, 0.0, 4.0 * groups.g};
  ode.variable = "f";
  ode.independent = "z";
  ode.equilibria = {0.0};
  return ode;
}

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace

ClosedForm tanh_w_form(double vbar) {
  const double g = checked_gamma(vbar);
  const double k = g / std::sqrt(2.0);
  return {"gamma tanh(gamma w/sqrt2)", "psi_r", "w",
          [g, k](double w) { return g * std::tanh(k * w); },
          [g, k](double w) { return g * k * sech(k * w) * sech(k * w); }};
}

ClosedForm tanh_form(double vbar) {
  const double g = checked_gamma(vbar);
  return {"gamma tanh(gamma zbar)", "psi_r", "zbar",
          [g](double z) { return g * std::tanh(g * z); },
          [g](double z) { return g * g * sech(g * z) * sech(g * z); }};
}

namespace {

// b - a sech^2(k x) and its slope.
ClosedForm sech2_form(std::string name, std::string variable, double b, double a, double k) {
  return {std::move(name), std::move(variable), "zbar",
          [b, a, k](double x) {
            const double s = sech(k * x);
            return b - a * s * s;
          },
          [a, k](double x) {
            const double s = sech(k * x);
            return 2.0 * a * k * s * s * std::tanh(k * x);
          }};
}

// a sech(k x) and its slope.
ClosedForm sech_form(std::string name, double a, double k) {
  return {std::move(name), "f", "zbar", [a, k](double x) { return a * sech(k * x); },
          [a, k](double x) { return -a * k * sech(k * x) * std::tanh(k * x); }};
}

}  // namespace

ClosedForm density_half_arg_form(double vbar) {
  const double g = checked_gamma(vbar);
  return sech2_form("1 - gamma^2 sech^2(gamma zbar/2)", "rho_bar", 1.0, g * g, 0.5 * g);
}

ClosedForm variation_half_arg_form(double vbar) {
  const double g = checked_gamma(vbar);
  return sech2_form("-gamma^2 sech^2(gamma zbar/2)", "f_s_bar", 0.0, g * g, 0.5 * g);
}

ClosedForm sech_full_amp_form(double vbar) {
  const double g = checked_gamma(vbar);
  return sech_form("gamma sech(2 gamma zbar)", g, 2.0 * g);
}

ClosedForm sech_half_amp_form(double vbar) {
  const double g = checked_gamma(vbar);
  return sech_form("(gamma/2) sech(2 gamma zbar)", 0.5 * g, 2.0 * g);
}

ClosedForm variation_double_arg_form(double vbar) {
  const double g = checked_gamma(vbar);
  return sech2_form("-gamma^2 sech^2(2 gamma zbar)", "f_s_bar", 0.0, g * g, 2.0 * g);
}

ClosedForm density_double_arg_form(double vbar) {
  const double g = checked_gamma(vbar);
  return sech2_form("1 - gamma^2 sech^2(2 gamma zbar)", "rho_bar", 1.0, g * g, 2.0 * g);
}

ClosedForm gpe_density_form(double vbar) {
  const double g = checked_gamma(vbar);
  return sech2_form("1 - gamma^2 sech^2(gamma zbar)", "rho_bar", 1.0, g * g, g);
}

std::vector<ClosedForm> all_closed_forms(double vbar) {
  return {tanh_w_form(vbar),          tanh_form(vbar),
          density_half_arg_form(vbar), variation_half_arg_form(vbar),
          sech_full_amp_form(vbar),    sech_half_amp_form(vbar),
          variation_double_arg_form(vbar), density_double_arg_form(vbar),
          gpe_density_form(vbar)};
}

double residual_at(const QuadratureODE& ode, const ClosedForm& form, double x) {
  const double s = form.slope(x);
  return s * s - ode.rhs(form.value(x));
}

namespace {

void require_matching(const QuadratureODE& ode, const ClosedForm& form) {
  if (ode.variable != form.variable || ode.independent != form.independent) {
    throw AnalysisError("variable mismatch: ODE in " + ode.variable + "(" + ode.independent +
                        "), profile in " + form.variable + "(" + form.independent + ")");
  }
}

bool near_equilibrium(const QuadratureODE& ode, double y) {
  for (double e : ode.equilibria) {
    if (std::abs(y - e) <= 1e-8) return true;
  }
  return false;
}

}  // namespace

ResidualReport residual(const QuadratureODE& ode, const ClosedForm& form,
                        std::span<const double> grid) {
  require_matching(ode, form);
  if (grid.size() < 3) throw AnalysisError("residual grid needs at least 3 points");
  if (!near_equilibrium(ode, form.value(grid.front())) ||
      !near_equilibrium(ode, form.value(grid.back()))) {
    throw AnalysisError("grid too short: background not reached within 1e-8");
  }

  std::size_t imax = 0;
  double sup = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = std::abs(residual_at(ode, form, grid[i]));
    if (r > sup) {
      sup = r;
      imax = i;
    }
  }

  ResidualReport rep{sup, grid[imax]};
  const double lo = grid[imax == 0 ? 0 : imax - 1];
  const double hi = grid[std::min(imax + 1, grid.size() - 1)];
  if (hi > lo && sup > 0.0) {
    auto neg = [&](double x) { return -std::abs(residual_at(ode, form, x)); };
    const auto [xm, fm] = boost::math::tools::brent_find_minima(neg, lo, hi, 50);
    if (-fm > rep.sup) rep = {-fm, xm};
  }
  return rep;
}

std::vector<double> default_ode_grid(double gamma, std::size_t n) {
  if (!(gamma > 0.0)) throw PhysicsError("gamma = 0: flat profile, no soliton width");
  return symmetric_grid(60.0 / gamma, n);
}

namespace {

constexpr double kPanel = 0.05;
constexpr double kParamMax = 40.0;

// One monotone half of an orbit: y(u) and dx/du on u in [0, kParamMax].
struct HalfOrbit {
  std::function<double(double)> y_of;
  std::function<double(double)> dxdu;
  std::vector<double> u_knots;
  std::vector<double> x_knots;

  void tabulate() {
    using boost::math::quadrature::gauss;
    const auto panels = static_cast<std::size_t>(std::lround(kParamMax / kPanel));
    u_knots.resize(panels + 1);
    x_knots.resize(panels + 1);
    u_knots[0] = 0.0;
    x_knots[0] = 0.0;
    for (std::size_t k = 1; k <= panels; ++k) {
      u_knots[k] = kPanel * static_cast<double>(k);
      x_knots[k] = x_knots[k - 1] + gauss<double, 15>::integrate(dxdu, u_knots[k - 1], u_knots[k]);
    }
  }

  // y at distance x >= 0 from the start.
  double at(double x) const {
    if (x >= x_knots.back()) return y_of(u_knots.back());
    const auto it = std::upper_bound(x_knots.begin(), x_knots.end(), x);
    const auto k = static_cast<std::size_t>(std::distance(x_knots.begin(), it)) - 1;
    const double u0 = u_knots[k];
    const double x0 = x_knots[k];
    if (x == x0) return y_of(u0);
    using boost::math::quadrature::gauss;
    auto f = [&](double u) {
      return std::make_pair(x0 + gauss<double, 15>::integrate(dxdu, u0, u) - x, dxdu(u));
    };
    const double guess = u0 + (x - x0) / dxdu(u0);
    std::uintmax_t iters = 60;
    const double u = boost::math::tools::newton_raphson_iterate(
        f, std::clamp(guess, u0, u_knots[k + 1]), u0, u_knots[k + 1], 50, iters);
    return y_of(u);
  }
};

struct RootInfo {
  double value;
  bool is_double;
};

std::vector<RootInfo> classify_roots(const Polynomial& p) {
  std::vector<RootInfo> out;
  const Polynomial dp = p.derivative();
  const double scale = std::max(1.0, dp.max_abs_coefficient());
  for (double r : p.real_roots()) out.push_back({r, std::abs(dp(r)) <= 1e-9 * scale});
  return out;
}

// Next root strictly beyond y0 in direction dir.
std::optional<RootInfo> next_root(const std::vector<RootInfo>& roots, double y0, double dir) {
  std::optional<RootInfo> best;
  for (const auto& r : roots) {
    const double d = (r.value - y0) * dir;
    if (d > 1e-12 && (!best || d < (best->value - y0) * dir)) best = r;
  }
  return best;
}

Polynomial deflate(const Polynomial& p, const Polynomial& factor) {
  Polynomial rem;
  Polynomial q = p.divide(factor, &rem);
  if (rem.max_abs_coefficient() > 1e-8 * std::max(1.0, p.max_abs_coefficient())) {
    throw AnalysisError("deflation left a remainder: root is not exact");
  }
  return q;
}

}  // namespace

Orbit solve_by_quadrature(const QuadratureODE& ode, double y0, std::span<const double> grid) {
  const Polynomial& P = ode.numerator;
  const Polynomial& Q = ode.denominator;
  if (!(Q(y0) > 0.0)) throw AnalysisError("denominator not positive at the start");
  const double p0 = P(y0);
  const double tol = 1e-12 * std::max(1.0, P.max_abs_coefficient());
  if (p0 < -tol) throw AnalysisError("no real orbit: P(y0) < 0");

  const auto roots = classify_roots(P);
  Orbit orbit;
  orbit.start = y0;
  orbit.x.assign(grid.begin(), grid.end());
  orbit.y.resize(grid.size());

  if (std::abs(p0) <= tol) {
    const double slope = P.derivative()(y0);
    if (std::abs(slope) <= 1e-9 * std::max(1.0, P.max_abs_coefficient())) {
      throw AnalysisError("kink orbit, infinite half-width: double root at start");
    }
    const double dir = slope > 0.0 ? 1.0 : -1.0;
    const auto far = next_root(roots, y0, dir);
    if (!far) throw AnalysisError("no real orbit: unbounded in the direction of P > 0");
    if (!far->is_double) throw AnalysisError("periodic orbit between simple roots: unsupported");
    const double yb = far->value;
    const double delta = yb - y0;
    const Polynomial shape = Polynomial::linear_root(y0) * Polynomial::linear_root(yb) *
                             Polynomial::linear_root(yb);
    const Polynomial R = deflate(P, shape);

    HalfOrbit half;
    half.y_of = [=](double u) {
      const double s = 1.0 / std::cosh(u);
      return yb - delta * s * s;
    };
    half.dxdu = [=, &Q, &R](double u) {
      const double s = 1.0 / std::cosh(u);
      const double y = yb - delta * s * s;
      return 2.0 * std::sqrt(Q(y) / (std::abs(delta) * std::abs(R(y))));
    };
    half.tabulate();
    for (std::size_t i = 0; i < grid.size(); ++i) orbit.y[i] = half.at(std::abs(grid[i]));
    orbit.kind = OrbitKind::homoclinic;
    orbit.background_left = orbit.background_right = yb;
    return orbit;
  }

  const auto hi = next_root(roots, y0, 1.0);
  const auto lo = next_root(roots, y0, -1.0);
  if (!hi || !lo) throw AnalysisError("no real orbit: unbounded in the direction of P > 0");
  if (!hi->is_double || !lo->is_double) {
    throw AnalysisError("periodic orbit between simple roots: unsupported");
  }

  auto make_half = [&](double target) {
    const Polynomial shape = Polynomial::linear_root(target) * Polynomial::linear_root(target);
    auto R = std::make_shared<Polynomial>(deflate(P, shape));
    HalfOrbit half;
    const double span = target - y0;
    half.y_of = [=](double tau) { return target - span * std::exp(-tau); };
    half.dxdu = [=, &Q](double tau) {
      const double y = target - span * std::exp(-tau);
      return std::sqrt(Q(y) / std::abs((*R)(y)));
    };
    half.tabulate();
    return half;
  };
  const HalfOrbit up = make_half(hi->value);
  const HalfOrbit down = make_half(lo->value);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    orbit.y[i] = grid[i] >= 0.0 ? up.at(grid[i]) : down.at(-grid[i]);
  }
  orbit.kind = OrbitKind::kink;
  orbit.background_left = lo->value;
  orbit.background_right = hi->value;
  return orbit;
}

IdentityReport polynomial_identity(const QuadratureODE& a, const QuadratureODE& b) {
  IdentityReport rep;
  rep.difference = (a.numerator - b.numerator).coefficients();
  if (a.variable != b.variable || a.independent != b.independent) {
    rep.reason = "different variables: " + a.variable + "(" + a.independent + ") vs " +
                 b.variable + "(" + b.independent + ")";
    return rep;
  }
  if (!(a.denominator == b.denominator)) {
    rep.reason = "different denominators";
    return rep;
  }
  rep.identical = rep.difference.empty();
  if (!rep.identical) rep.reason = "coefficients differ";
  return rep;
}

Polynomial pullback_defect(const QuadratureODE& child, const QuadratureODE& parent,
                           const Polynomial& map) {
  if (!(child.denominator == Polynomial::constant(1.0)) ||
      !(parent.denominator == Polynomial::constant(1.0))) {
    throw AnalysisError("pullback defined for polynomial right-hand sides only");
  }
  const Polynomial dm = map.derivative();
  return dm * dm * child.numerator - parent.numerator.compose(map);
}

ConsistencyMatrix consistency_matrix(double vbar) {
  ConsistencyMatrix m;
  m.vbar = vbar;
  const std::vector<OdeTag> tags{OdeTag::Eq10, OdeTag::Eq14,       OdeTag::Eq15,
                                 OdeTag::Eq19, OdeTag::Eq21,       OdeTag::Eq23,
                                 OdeTag::Eq14Parent, OdeTag::Eq23Parent};
  std::vector<QuadratureODE> odes;
  for (OdeTag t : tags) {
    odes.push_back(make_ode(t, vbar));
    m.columns.emplace_back(to_string(t));
  }
  const auto forms = all_closed_forms(vbar);
  const auto grid = default_ode_grid(checked_gamma(vbar));
  for (const auto& f : forms) {
    m.rows.push_back(f.name);
    std::vector<std::optional<double>> row;
    for (const auto& ode : odes) {
      if (ode.variable == f.variable && ode.independent == f.independent) {
        row.emplace_back(residual(ode, f, grid).sup);
      } else {
        row.emplace_back(std::nullopt);
      }
    }
    m.cells.push_back(std::move(row));
  }
  return m;
}

}  // namespace solitonlab
