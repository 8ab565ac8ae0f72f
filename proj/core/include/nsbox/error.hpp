#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nsbox {

enum class ErrorKind {
  NotAProbability,
  NotNormalized,
  Signaling,
  NonFinite,
  WeightMismatch,
  NegativeWeight,
  OutOfRange,
  Infeasible,
  NoValidResidual,
  UnknownRegion,
  UnknownPreset,
  UnknownState,
  InvalidState,
  InvalidSettings,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (the CLI in particular) can report the category by name.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nsbox
