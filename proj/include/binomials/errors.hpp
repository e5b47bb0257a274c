#pragma once

#include <stdexcept>
#include <string>

namespace binomials {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A path could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// The input did not look like the requested format (too many malformed lines).
class FormatMismatchError : public Error {
 public:
  using Error::Error;
};

/// A metric was requested where it is undefined, e.g. an ordinality with zero count.
class UndefinedValueError : public Error {
 public:
  using Error::Error;
};

/// An aggregate was requested over an empty qualifying set.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// A caller passed an out-of-range or unknown argument.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace binomials
