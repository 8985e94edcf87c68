#pragma once

#include <stdexcept>
#include <string>

namespace ringpet {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad configuration value or malformed run configuration file.
struct ConfigError : Error {
  using Error::Error;
};

/// Invalid numeric input (non-finite values, degenerate LORs, ...).
struct DataError : Error {
  using Error::Error;
};

/// Mismatched tensor/grid dimensions.
struct ShapeError : Error {
  using Error::Error;
};

/// Index outside a container or grid.
struct BoundsError : Error {
  using Error::Error;
};

/// File with wrong magic or unsupported version.
struct FormatError : Error {
  using Error::Error;
};

/// Truncated or otherwise unreadable file.
struct IoError : Error {
  using Error::Error;
};

/// Non-finite loss or gradient during training.
struct TrainingError : Error {
  using Error::Error;
};

}  // namespace ringpet
