#pragma once

#include <stdexcept>

namespace graphfilt {

/// Base class of all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, malformed configuration, contradictory options.
struct ValidationError : Error {
  using Error::Error;
};

/// File access or file format failures.
struct IoError : Error {
  using Error::Error;
};

/// Non-finite values or numeric breakdown inside an iteration.
struct NumericError : Error {
  using Error::Error;
};

}  // namespace graphfilt
