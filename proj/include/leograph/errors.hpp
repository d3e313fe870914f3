#pragma once

#include <stdexcept>
#include <string>

namespace leograph {

// Thrown for invalid shell specs, policies, or simulation configs.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown for malformed or inconsistent input data (station catalogs etc.).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an internal invariant is violated. Indicates a bug.
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDataError = 3;
inline constexpr int kExitInternalError = 4;

}  // namespace leograph
