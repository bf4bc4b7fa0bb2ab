#pragma once

#include <stdexcept>
#include <string>

namespace lqw {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Malformed or inconsistent run configuration.
struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Iterative solver failed to reach its tolerance; carries the last estimate.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& msg, double estimate)
      : Error(msg), last_estimate(estimate) {}
  double last_estimate;
};

// Arc-length integral does not settle under adaptive refinement.
struct DegenerateCurveError : Error {
  explicit DegenerateCurveError(const std::string& msg) : Error(msg) {}
};

// Piece extension self-intersects or has vanishing chord-arc constant.
struct ExtensionError : Error {
  ExtensionError(const std::string& msg, std::string piece_name)
      : Error(msg), piece(std::move(piece_name)) {}
  std::string piece;
};

// A spectral bound was requested for a curve with c <= 0.
struct BoundUndefinedError : Error {
  explicit BoundUndefinedError(const std::string& msg) : Error(msg) {}
};

// Degenerate discretization handed to the operator assembly.
struct AssemblyError : Error {
  explicit AssemblyError(const std::string& msg) : Error(msg) {}
};

}  // namespace lqw
