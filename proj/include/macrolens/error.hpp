#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace macrolens {

enum class ErrorKind {
  InvalidArgument,
  UnsupportedRange,
  DegenerateSubtraction,
  DegenerateSuperposition,
  GridCoverage,
  GridMismatch,
  UsePmfDirectly,
  UnsupportedMixedState,
  InvalidId,
  Config,
};

/// Kebab-case name used in CLI diagnostics, e.g. "degenerate-subtraction".
std::string_view to_string(ErrorKind kind) noexcept;

/// Domain error raised by every module. The kind is stable and machine-readable;
/// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace macrolens
