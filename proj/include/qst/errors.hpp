#pragma once

#include <stdexcept>

namespace qst {

// Error taxonomy mirrors the CLI exit codes: validation -> 1,
// numerical failure -> 2, I/O -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qst
