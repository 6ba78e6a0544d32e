#include "solitonlab/polynomial.hpp"

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace solitonlab {

Polynomial::Polynomial(std::initializer_list<double> coeffs) : c_(coeffs) { trim(); }

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::operator()(double y) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * y + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::compose(const Polynomial& inner) const {
  Polynomial acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it);
  return acc;
}

double Polynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (double c : c_) m = std::max(m, std::abs(c));
  return m;
}

Polynomial Polynomial::divide(const Polynomial& divisor, Polynomial* remainder) const {
  if (divisor.is_zero()) throw std::invalid_argument("polynomial division by zero");
  std::vector<double> rem = c_;
  const int dd = divisor.degree();
  if (degree() < dd) {
    if (remainder) *remainder = *this;
    return {};
  }
  std::vector<double> q(static_cast<std::size_t>(degree() - dd + 1), 0.0);
  const double lead = divisor.c_.back();
  for (int k = degree() - dd; k >= 0; --k) {
    const double coef = rem[static_cast<std::size_t>(k + dd)] / lead;
    q[static_cast<std::size_t>(k)] = coef;
    for (int j = 0; j <= dd; ++j) {
      rem[static_cast<std::size_t>(k + j)] -= coef * divisor.c_[static_cast<std::size_t>(j)];
    }
    rem[static_cast<std::size_t>(k + dd)] = 0.0;
  }
  if (remainder) *remainder = Polynomial(std::move(rem));
  return Polynomial(std::move(q));
}

std::vector<double> Polynomial::real_roots(double lo, double hi) const {
  std::vector<double> roots;
  if (degree() < 1) return roots;
  if (degree() == 1) {
    const double r = -c_[0] / c_[1];
    if (r >= lo && r <= hi) roots.push_back(r);
    return roots;
  }

  // A root of multiplicity > 1 is a critical point where the value vanishes.
  const double tol = 1e-13 * max_abs_coefficient();
  std::vector<double> knots{lo};
  for (double c : derivative().real_roots(lo, hi)) knots.push_back(c);
  knots.push_back(hi);

  auto push = [&roots](double r) {
    if (roots.empty() || std::abs(roots.back() - r) > 1e-10 * std::max(1.0, std::abs(r))) {
      roots.push_back(r);
    }
  };

  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i];
    const double b = knots[i + 1];
    const double fa = (*this)(a);
    const double fb = (*this)(b);
    if (i > 0 && std::abs(fa) <= tol) push(a);
    if (fa == 0.0 && i == 0) push(a);
    if (fa * fb < 0.0) {
      std::uintmax_t iters = 200;
      auto tol_fn = boost::math::tools::eps_tolerance<double>(52);
      const auto [x0, x1] =
          boost::math::tools::toms748_solve(*this, a, b, fa, fb, tol_fn, iters);
      push(0.5 * (x0 + x1));
    }
  }
  if (std::abs((*this)(hi)) <= tol && knots.size() > 2) push(hi);
  return roots;
}

std::vector<double> Polynomial::real_roots() const {
  if (degree() < 1) return {};
  double bound = 0.0;
  for (std::size_t k = 0; k + 1 < c_.size(); ++k) bound = std::max(bound, std::abs(c_[k] / c_.back()));
  bound += 1.0;
  return real_roots(-bound, bound);
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> c(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& a) {
  std::vector<double> c = a.c_;
  for (double& x : c) x *= s;
  return Polynomial(std::move(c));
}

}  // namespace solitonlab
