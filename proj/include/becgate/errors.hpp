// Error types thrown by the simulation library.
#pragma once

#include <stdexcept>
#include <string>

namespace becgate {

// Base class for all library errors.
class SimulationError : public std::runtime_error {
 public:
  explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematical domain of a model function.
class DomainError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

// A component atom number is zero where a growth timescale is requested.
class ZeroPopulationError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

// Two-photon Rabi frequency evaluated at one of its detuning poles.
class PoleError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

// Adaptive step size underflow or step budget exhausted.
class IntegratorFailure : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

// Population reached the edge of the truncated momentum ladder.
class CutoffOverflow : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

// Quadrature did not reach the requested tolerance.
class QuadratureError : public SimulationError {
 public:
  QuadratureError(const std::string& what, double achieved)
      : SimulationError(what), achieved_error(achieved) {}
  double achieved_error;
};

// Least-squares normal equations are numerically rank deficient.
class SingularJacobian : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

// A model fit did not converge or could not be initialized.
class FitFailure : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

// Configuration file syntax or content problem.
class ConfigError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

}  // namespace becgate
