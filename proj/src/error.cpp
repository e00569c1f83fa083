#include "frobweb/error.hpp"

namespace frobweb {

std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kNonFinite: return "NonFinite";
    case ErrorKind::kOutOfRange: return "OutOfRange";
    case ErrorKind::kBranchViolation: return "BranchViolation";
    case ErrorKind::kDegenerateCubic: return "DegenerateCubic";
    case ErrorKind::kJacobianSingular: return "JacobianSingular";
    case ErrorKind::kOnDiscriminant: return "OnDiscriminant";
    case ErrorKind::kPathCrossesDiscriminant: return "PathCrossesDiscriminant";
    case ErrorKind::kNotFlat: return "NotFlat";
    case ErrorKind::kDenominatorZero: return "DenominatorZero";
    case ErrorKind::kUnknownForm: return "UnknownForm";
    case ErrorKind::kUnsupportedForm: return "UnsupportedForm";
    case ErrorKind::kNoLimit: return "NoLimit";
    case ErrorKind::kCoincidentDirection: return "CoincidentDirection";
    case ErrorKind::kNotIntegrable: return "NotIntegrable";
    case ErrorKind::kNotHomogeneous: return "NotHomogeneous";
    case ErrorKind::kDivisionByZeroField: return "DivisionByZeroField";
    case ErrorKind::kNoSolution: return "NoSolution";
    case ErrorKind::kRemainingEquationsFail: return "RemainingEquationsFail";
    case ErrorKind::kBlowUp: return "BlowUp";
    case ErrorKind::kPoleCrossing: return "PoleCrossing";
    case ErrorKind::kSingularBasis: return "SingularBasis";
    case ErrorKind::kGridTouchesDiscriminant: return "GridTouchesDiscriminant";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace frobweb
