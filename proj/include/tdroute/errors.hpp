#pragma once

#include <stdexcept>
#include <string>

namespace tdroute {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file; message carries the offending line number.
struct ParseError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

// A preprocessing artifact does not belong to the graph it is used with.
struct FingerprintMismatch : Error {
  using Error::Error;
};

// A state/combination/expansion budget was exceeded; the caller chose the
// budget, so this is loud instead of a silently truncated answer.
struct BudgetExceeded : Error {
  using Error::Error;
};

// Unknown vertex/category, missing edge, invalid parameter. Distinct from
// "unreachable", which is a valid query outcome and never throws.
struct InvalidArgument : Error {
  using Error::Error;
};

}  // namespace tdroute
