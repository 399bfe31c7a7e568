#pragma once

#include <stdexcept>
#include <string>

namespace wgqed {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A builder or operation received a value outside its domain.
class InvalidParameter : public Error {
 public:
  InvalidParameter(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Errors raised at a specific probe frequency.
class FrequencyError : public Error {
 public:
  FrequencyError(double delta_omega, const std::string& message)
      : Error(message + " at delta_omega=" + std::to_string(delta_omega)),
        delta_omega_(delta_omega) {}
  double delta_omega() const noexcept { return delta_omega_; }

 private:
  double delta_omega_;
};

// The coupling matrix M is numerically singular (probe on a lossless dark pole).
class SingularMatrix : public FrequencyError {
 public:
  using FrequencyError::FrequencyError;
};

// A classical engine hit a vanishing denominator.
class ResonantDivergence : public FrequencyError {
 public:
  using FrequencyError::FrequencyError;
};

// Eigenchannel decomposition is unusable (near an exceptional point).
class ModalUnavailable : public Error {
 public:
  using Error::Error;
};

// Infinite-chain dispersion evaluated on the light line.
class DispersionPole : public Error {
 public:
  using Error::Error;
};

// Band gap requested at a Bragg phase (kd = 0 or pi), where it diverges.
class BraggDivergence : public Error {
 public:
  using Error::Error;
};

// No frequency in the searched range reaches the reflectivity threshold.
class NoWindow : public Error {
 public:
  using Error::Error;
};

}  // namespace wgqed
