#pragma once

#include <stdexcept>
#include <string>

namespace pslopt {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters or out-of-domain arguments (maps to CLI usage errors).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A fitness accumulation left the finite double range. The message names the
// length and exponent involved so the caller knows which knob to turn.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Malformed input text (sequence files, run records, CSV).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Filesystem-level failure (cannot open/read/write a path).
class IoError : public Error {
 public:
  using Error::Error;
};

// Request exceeds what the implementation can do (e.g. exhaustive search
// beyond the supported length cap).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace pslopt
