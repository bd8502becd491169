#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hypspec {

enum class ErrorKind {
  InvalidGeometry,   // degenerate triangle, non-positive length, angle sum >= pi
  Validation,        // malformed SurfaceSpec
  Parse,             // unreadable JSON / mesh file
  ResourceLimit,     // triangle cap exceeded
  MeshQuality,       // near-degenerate secant triangle
  Convergence,       // eigensolver iteration cap hit
  InvalidInput,      // bad vectors, overlapping supports, empty lists
  Precondition,      // graph/cell-set structural precondition violated
  Domain,            // scalar parameter out of range
  Internal,          // should not happen on valid input
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Specific reasons a SurfaceSpec is rejected. Each maps to a distinct message.
enum class ValidationCode {
  EmptySpec,
  BadIndex,
  NonPositiveCuff,
  CuffGluedTwice,
  UnmatchedCuff,
  LengthMismatch,
  Disconnected,
};

class ValidationError : public Error {
 public:
  ValidationError(ValidationCode code, const std::string& what)
      : Error(ErrorKind::Validation, what), code_(code) {}

  ValidationCode code() const noexcept { return code_; }

 private:
  ValidationCode code_;
};

/// Eigensolver ran out of iterations; carries the best residuals reached.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> residuals)
      : Error(ErrorKind::Convergence, what), residuals_(std::move(residuals)) {}

  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<double> residuals_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace hypspec
