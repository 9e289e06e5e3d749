#pragma once

#include <stdexcept>
#include <string>

namespace magres {

// Every failure raised by the core derives from Error. The C layer maps the
// concrete type onto a status code, the CLI onto an exit code.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad parameters, unknown config keys, violated preconditions.
class ValidationError : public Error {
public:
  using Error::Error;
};

// A file could not be read or written.
class IoError : public Error {
public:
  using Error::Error;
};

// The discretized problem does not represent the requested one (domain too
// short, sector range too narrow, ...).
class TruncationError : public Error {
public:
  using Error::Error;
};

// A solver failed or produced a result that contradicts a structural property
// (flat band, non-positive curvature, no convergence, ...).
class NumericalError : public Error {
public:
  using Error::Error;
};

}  // namespace magres
