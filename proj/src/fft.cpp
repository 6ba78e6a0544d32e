#include "fft.hpp"

#include <algorithm>
#include <mutex>
#include <new>
#include <numbers>

namespace solitonlab::detail {

namespace {
// The FFTW planner is not thread safe; execution is.
std::mutex planner_mutex;
}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
  std::lock_guard lock(planner_mutex);
  buf_ = fftw_alloc_complex(n);
  if (!buf_) throw std::bad_alloc();
  const int ni = static_cast<int>(n);
  fwd_ = fftw_plan_dft_1d(ni, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_1d(ni, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex);
  fftw_destroy_plan(fwd_);
  fftw_destroy_plan(bwd_);
  fftw_free(buf_);
}

std::vector<double> wavenumbers(std::size_t n, double length) {
  std::vector<double> k(n);
  const double base = 2.0 * std::numbers::pi / length;
  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  for (std::size_t m = 0; m < n; ++m) {
    auto mm = static_cast<std::ptrdiff_t>(m);
    if (mm >= half) mm -= static_cast<std::ptrdiff_t>(n);
    k[m] = base * static_cast<double>(mm);
  }
  return k;
}

std::vector<double> spectral_antiderivative(std::span<const double> f, double length) {
  const std::size_t n = f.size();
  FftPlan plan(n);
  auto buf = plan.data();
  for (std::size_t i = 0; i < n; ++i) buf[i] = f[i];
  plan.forward();
  const auto k = wavenumbers(n, length);
  const std::complex<double> i_unit(0.0, 1.0);
  for (std::size_t m = 0; m < n; ++m) {
    // Drop the mean and the unpaired Nyquist mode.
    if (m == 0 || m == n / 2) {
      buf[m] = 0.0;
    } else {
      buf[m] /= i_unit * k[m];
    }
  }
  plan.backward();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = buf[i].real() / static_cast<double>(n);
  return out;
}

std::vector<std::complex<double>> spectral_derivative(std::span<const std::complex<double>> f,
                                                      double length) {
  const std::size_t n = f.size();
  FftPlan plan(n);
  auto buf = plan.data();
  std::copy(f.begin(), f.end(), buf.begin());
  plan.forward();
  const auto k = wavenumbers(n, length);
  const std::complex<double> i_unit(0.0, 1.0);
  for (std::size_t m = 0; m < n; ++m) buf[m] *= (m == n / 2) ? 0.0 : i_unit * k[m];
  plan.backward();
  std::vector<std::complex<double>> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = buf[i] / static_cast<double>(n);
  return out;
}

}  // namespace solitonlab::detail
