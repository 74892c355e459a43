#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crownlab {

enum class ErrorKind {
  InvalidRank,
  DimensionError,
  InternalError,
  InvalidElement,
  IllConditioned,
  EllipticObstruction,
  NotAnAlgebra,
  NotInNA,
  InvalidCoordinates,
  NotInTube,
  DegeneratePivot,
  NotOnSlice,
  DegenerateAction,
  UnknownSpace,
  OutOfRange,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for every contract violation in the library.
/// The kind is what callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace crownlab
