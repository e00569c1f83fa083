#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frobweb {

enum class ErrorKind {
  kParseError,
  kNonFinite,
  kOutOfRange,
  kBranchViolation,
  kDegenerateCubic,
  kJacobianSingular,
  kOnDiscriminant,
  kPathCrossesDiscriminant,
  kNotFlat,
  kDenominatorZero,
  kUnknownForm,
  kUnsupportedForm,
  kNoLimit,
  kCoincidentDirection,
  kNotIntegrable,
  kNotHomogeneous,
  kDivisionByZeroField,
  kNoSolution,
  kRemainingEquationsFail,
  kBlowUp,
  kPoleCrossing,
  kSingularBasis,
  kGridTouchesDiscriminant,
  kInvalidArgument,
};

std::string_view kind_name(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace frobweb
