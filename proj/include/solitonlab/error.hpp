#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace solitonlab {

// Process exit codes used by the CLI. Each exception class below maps to one.
enum class ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kConfig = 2,
  kPhysics = 3,
  kNumerical = 4,
};

/// Invalid or incomplete configuration (unknown key, missing key, bad value).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// A physical precondition does not hold. what() names the violated inequality.
class PhysicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical breakdown during time stepping (NaN/Inf, CFL, vacuum/saturation).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& message, std::size_t step)
      : std::runtime_error(message + " (step " + std::to_string(step) + ")"),
        step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// An ODE orbit or fit input that cannot be handled (no real orbit, flat profile...).
class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace solitonlab
