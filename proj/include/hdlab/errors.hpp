#pragma once

#include <stdexcept>
#include <string>

namespace hdlab {

/// Raised when an enumeration or materialization guard is exceeded.
/// Carries the operation name and the offending size so callers can report
/// capacity failures without parsing the message.
struct CapacityError : std::runtime_error {
  std::string op;
  unsigned long long requested;
  unsigned long long limit;

  CapacityError(std::string op_, unsigned long long requested_, unsigned long long limit_)
      : std::runtime_error(op_ + ": requested " + std::to_string(requested_) +
                           " exceeds guard " + std::to_string(limit_)),
        op(std::move(op_)), requested(requested_), limit(limit_) {}
};

/// Shape or domain mismatch between two inputs that must agree.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Parse failure in one of the text file formats; line is 1-based.
struct ParseError : std::runtime_error {
  int line;
  ParseError(const std::string& msg, int line_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

}  // namespace hdlab
