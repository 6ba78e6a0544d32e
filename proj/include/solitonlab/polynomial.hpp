#pragma once

#include <initializer_list>
#include <vector>

namespace solitonlab {

/// Dense real polynomial, coefficient k multiplies y^k. Trailing zeros are trimmed.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> coeffs);
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial constant(double c) { return Polynomial({c}); }
  /// (y - r)
  static Polynomial linear_root(double r) { return Polynomial({-r, 1.0}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coefficients() const { return c_; }
  double operator[](std::size_t k) const { return k < c_.size() ? c_[k] : 0.0; }
  bool is_zero() const { return c_.empty(); }

  double operator()(double y) const;
  Polynomial derivative() const;
  /// this(inner(y))
  Polynomial compose(const Polynomial& inner) const;
  double max_abs_coefficient() const;

  /// Quotient of division by `divisor`; `remainder` receives what is left.
  Polynomial divide(const Polynomial& divisor, Polynomial* remainder = nullptr) const;

  /// Real roots in [lo, hi], ascending, multiple roots reported once.
  /// Found by bracketing between the critical points of the derivative.
  std::vector<double> real_roots(double lo, double hi) const;
  /// Real roots over the Cauchy bound interval.
  std::vector<double> real_roots() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<double> c_;
};

}  // namespace solitonlab
