#pragma once

#include <stdexcept>

namespace raag {

/// Base class of every exception thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: malformed files, unknown letters, violated preconditions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The word engine refused to materialize more letters than the configured
/// guard allows. A refusal, never a wrong answer.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace raag
