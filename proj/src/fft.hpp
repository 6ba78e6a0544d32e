#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace solitonlab::detail {

// Owns an aligned in-place complex buffer with forward and backward FFTW plans.
// Plans are built with FFTW_ESTIMATE so the transform is reproducible run to run.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const { return n_; }
  std::span<std::complex<double>> data() {
    return {reinterpret_cast<std::complex<double>*>(buf_), n_};
  }
  void forward() { fftw_execute(fwd_); }
  // Unnormalised: a forward/backward round trip multiplies by n.
  void backward() { fftw_execute(bwd_); }

 private:
  std::size_t n_;
  fftw_complex* buf_;
  fftw_plan fwd_;
  fftw_plan bwd_;
};

/// Angular wavenumbers 2 pi m / L in FFTW order.
std::vector<double> wavenumbers(std::size_t n, double length);

/// Periodic antiderivative with zero mean; the mean of `f` is dropped.
std::vector<double> spectral_antiderivative(std::span<const double> f, double length);

/// Spectral first derivative of a periodic complex field.
std::vector<std::complex<double>> spectral_derivative(std::span<const std::complex<double>> f,
                                                      double length);

}  // namespace solitonlab::detail
