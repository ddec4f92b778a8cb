#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hubtrack {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function received a value outside its documented domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Operation does not accept the pixel model of its input.
class InvalidModelError : public Error {
 public:
  using Error::Error;
};

/// Dimensions are too small or two inputs disagree in size.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A rectangle reaches outside the buffer it refers to.
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// Zero probability mass under a tracking window.
class NoMassError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure (open, read, write).
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file (PNM or JSON). `offset()` is the byte position where
/// decoding stopped.
class ParseError : public Error {
 public:
  enum class Kind { BadHeader, UnsupportedFormat, UnsupportedMaxval, Truncated, Syntax };

  ParseError(Kind kind, std::size_t offset, const std::string& what)
      : Error(what + " (byte offset " + std::to_string(offset) + ")"),
        kind_(kind),
        offset_(offset) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

/// The circle detector found nothing to seed tracking from.
class DetectionError : public Error {
 public:
  DetectionError(const std::string& what, std::size_t candidates)
      : Error(what), candidates_(candidates) {}

  /// Number of accumulator candidates examined before giving up.
  std::size_t candidates() const noexcept { return candidates_; }

 private:
  std::size_t candidates_;
};

}  // namespace hubtrack
