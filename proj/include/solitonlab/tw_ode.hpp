#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "solitonlab/params.hpp"
#include "solitonlab/polynomial.hpp"

namespace solitonlab {

/// Registered traveling-wave ODEs (dy/dx)^2 = P(y) / Q(y).
///
/// The Eq* tags are the reduced first integrals. Eq14Parent and Eq23Parent are the
/// equations actually produced by differentiating the density maps of the HGPE
/// chain (16 (1 - r)^2 (r - vbar^2)) and the GPE chain (4 (1 - r)^2 (r - vbar^2)).
/// HgpeExact is the first integral of the hard-core equation at half filling in
/// the lattice coordinate z; it is the only rational entry.
enum class OdeTag { Eq10, Eq14, Eq15, Eq19, Eq21, Eq23, Eq14Parent, Eq23Parent, HgpeExact };

std::string_view to_string(OdeTag tag);
OdeTag parse_ode_tag(std::string_view text);

struct QuadratureODE {
  Polynomial numerator;
  Polynomial denominator = Polynomial::constant(1.0);
  std::string variable;     // dependent variable, e.g. "rho_bar"
  std::string independent;  // "zbar", "w" or "z"
  OdeTag tag = OdeTag::Eq10;
  double gamma = 1.0;
  double vbar = 0.0;
  std::vector<double> equilibria;  // background values (double roots of P)

  double rhs(double y) const { return numerator(y) / denominator(y); }
};

/// Polynomial ODE for a reduced or parent tag at speed vbar in [0, 1).
QuadratureODE make_ode(OdeTag tag, double vbar);

/// Hard-core first integral (df/dz)^2 = 4 c_s^2 f^2 (gamma^2 - 4 f^2) / (V + 4 g f^2),
/// f = rho - 1/2. Needs half filling.
QuadratureODE hgpe_traveling_wave_ode(const DerivedGroups& groups);

/// A closed-form candidate solution with its analytic derivative.
struct ClosedForm {
  std::string name;
  std::string variable;
  std::string independent;
  std::function<double(double)> value;
  std::function<double(double)> slope;
};

// Closed forms at speed vbar. The first five are the self-consistent partners of
// Eq19, Eq21, Eq14/Eq23, Eq15 and Eq10; the rest are the quoted alternative profiles.
ClosedForm tanh_w_form(double vbar);               // gamma tanh(gamma w / sqrt 2)
ClosedForm tanh_form(double vbar);                 // gamma tanh(gamma zbar)
ClosedForm density_half_arg_form(double vbar);     // 1 - gamma^2 sech^2(gamma zbar / 2)
ClosedForm variation_half_arg_form(double vbar);   // -gamma^2 sech^2(gamma zbar / 2)
ClosedForm sech_full_amp_form(double vbar);        // gamma sech(2 gamma zbar)
ClosedForm sech_half_amp_form(double vbar);         // (gamma/2) sech(2 gamma zbar)
ClosedForm variation_double_arg_form(double vbar);    // -gamma^2 sech^2(2 gamma zbar)
ClosedForm density_double_arg_form(double vbar);      // 1 - gamma^2 sech^2(2 gamma zbar)
ClosedForm gpe_density_form(double vbar);          // 1 - gamma^2 sech^2(gamma zbar)

std::vector<ClosedForm> all_closed_forms(double vbar);

struct ResidualReport {
  double sup = 0.0;     // max |y'^2 - P(y)/Q(y)|
  double argmax = 0.0;  // location of the sup
};

/// Sup-norm residual on `grid` using the analytic slope, with the maximum refined
/// by Brent's method between the neighbours of the grid argmax.
/// Throws AnalysisError when the profile is not within 1e-8 of an equilibrium at
/// both grid ends, or when the variables do not match.
ResidualReport residual(const QuadratureODE& ode, const ClosedForm& form,
                        std::span<const double> grid);

double residual_at(const QuadratureODE& ode, const ClosedForm& form, double x);

/// Default symmetric grid for residual and quadrature checks: half-width 60 / gamma.
std::vector<double> default_ode_grid(double gamma, std::size_t n = 8193);

enum class OrbitKind { homoclinic, kink };

struct Orbit {
  std::vector<double> x;
  std::vector<double> y;
  OrbitKind kind = OrbitKind::homoclinic;
  double start = 0.0;
  double background_left = 0.0;
  double background_right = 0.0;
};

/// Integrates dx = dy / sqrt(P/Q) from `y0` outward.
///
/// A simple root y0 gives an orbit that is even about x = 0 and reaches the
/// neighbouring double root on both sides. A point with P(y0) > 0 gives a kink
/// that increases through y0 at x = 0 between the double roots on either side.
/// Throws AnalysisError for P(y0) < 0 ("no real orbit"), for a double root at
/// y0, and when the orbit ends on a simple root (periodic orbit).
Orbit solve_by_quadrature(const QuadratureODE& ode, double y0, std::span<const double> grid);

struct IdentityReport {
  bool identical = false;
  std::vector<double> difference;  // coefficients of P_A - P_B
  std::string reason;
};

/// Exact coefficient comparison (zero tolerance), including variables and denominators.
IdentityReport polynomial_identity(const QuadratureODE& a, const QuadratureODE& b);

/// Coefficients of m'(y)^2 P_child(y) - P_parent(m(y)); all zero when y solving the
/// child implies m(y) solves the parent.
Polynomial pullback_defect(const QuadratureODE& child, const QuadratureODE& parent,
                           const Polynomial& map);

struct ConsistencyMatrix {
  std::vector<std::string> rows;     // closed forms
  std::vector<std::string> columns;  // ODE tags
  std::vector<std::vector<std::optional<double>>> cells;  // empty when variables differ
  double vbar = 0.0;
};

ConsistencyMatrix consistency_matrix(double vbar);

}  // namespace solitonlab
