#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tubal {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not conform (inner dimensions, tube length vs. transform size, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition on a scalar parameter was violated (k > s, q < 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A dense kernel (SVD, QR) failed to converge or produced non-finite output.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Operating-system level failure while opening, reading or writing a file.
class IoError : public Error {
 public:
  using Error::Error;
};

enum class FormatErrc {
  bad_magic,
  bad_version,
  unsupported_scalar_kind,
  bad_dimensions,
  truncated,
  malformed_header,
  unsupported_maxval,
  frame_mismatch,
  trailing_data,
};

std::string_view to_string(FormatErrc code) noexcept;

/// The bytes were read but do not form a valid file of the expected format.
class FormatError : public Error {
 public:
  FormatError(FormatErrc code, const std::string& what)
      : Error(std::string(to_string(code)) + ": " + what), code_(code) {}

  FormatErrc code() const noexcept { return code_; }

 private:
  FormatErrc code_;
};

}  // namespace tubal
