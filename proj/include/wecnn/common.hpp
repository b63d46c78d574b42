#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wecnn {

/// Binary class label. `positive` is the class of interest (election-related).
enum class Label : std::uint8_t { negative = 0, positive = 1 };

inline constexpr int to_int(Label l) { return l == Label::positive ? 1 : 0; }
inline constexpr Label label_from_bool(bool positive) {
  return positive ? Label::positive : Label::negative;
}

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file or record.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Caller violated an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure (missing or unreadable path).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace wecnn
