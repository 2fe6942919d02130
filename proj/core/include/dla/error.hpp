#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dla {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kNotHermitian,
  kNotAntiHermitian,
  kNotTraceless,
  kDependentGenerators,
  kCapExceeded,
  kSignAmbiguous,
  kDuplicateEigenvalues,
  kDenseCapExceeded,
  kMalformedInput,
  kCappedBasis,
  kPhaseViolation,
  kPreconditionFailed,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code so
/// that front ends (the CLI in particular) can map it onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace dla
