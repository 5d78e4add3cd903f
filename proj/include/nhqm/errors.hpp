#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace nhqm {

// Bad arguments or malformed input data (files, ranges, degenerate geometry).
class InvalidInputError : public std::invalid_argument {
 public:
  explicit InvalidInputError(const std::string& what) : std::invalid_argument(what) {}
};

// |m22| fell below the underflow guard: scattering amplitudes have diverged.
class SingularityError : public std::runtime_error {
 public:
  SingularityError(const std::string& what, double k) : std::runtime_error(what), k_(k) {}
  double wavenumber() const { return k_; }

 private:
  double k_;
};

// The matrix is defective (eigenvalues and eigenvectors coalesce).
class ExceptionalPointError : public std::runtime_error {
 public:
  explicit ExceptionalPointError(const std::string& what) : std::runtime_error(what) {}
};

// No positive-definite metric exists; carries the offending eigenvalues.
class NoPositiveMetricError : public std::runtime_error {
 public:
  NoPositiveMetricError(const std::string& what, std::vector<std::complex<double>> eigenvalues)
      : std::runtime_error(what), eigenvalues_(std::move(eigenvalues)) {}
  const std::vector<std::complex<double>>& eigenvalues() const { return eigenvalues_; }

 private:
  std::vector<std::complex<double>> eigenvalues_;
};

// Oracle integrator cannot meet the requested step/tolerance budget.
class OracleConfigError : public std::runtime_error {
 public:
  explicit OracleConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nhqm
