#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fdrthresh {

inline constexpr const char* kLibraryVersion = "0.1.0";

/// Extended-real sentinel for threshold levels that reject nothing.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline bool is_infinite(double v) { return std::isinf(v) && v > 0.0; }

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// An iterative solver failed to bracket or converge.
class ConvergenceError : public std::runtime_error {
public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// User-supplied configuration or input file failed validation.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace fdrthresh
