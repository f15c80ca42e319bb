#pragma once

#include <stdexcept>
#include <string>

namespace gcf {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments or input files (CLI exit code 2).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input the pipeline refuses to process, e.g. a disconnected
/// graph or a neighborhood that is too dense (CLI exit code 3).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A library invariant did not hold (CLI exit code 4).
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace gcf
