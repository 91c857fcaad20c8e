#pragma once

#include <stdexcept>
#include <string>

namespace stokes {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct PoleError : Error { using Error::Error; };
struct BranchCut : Error { using Error::Error; };
struct LogarithmicCase : Error { using Error::Error; };
struct InvalidDegenerate : Error { using Error::Error; };
struct InvalidParameters : Error { using Error::Error; };
struct RegimeUnsupported : Error { using Error::Error; };
struct ExcludedCase : Error { using Error::Error; };
struct CaseNotCovered : Error { using Error::Error; };
struct DivergentSeries : Error { using Error::Error; };
struct RayTooCloseToSingular : Error { using Error::Error; };
struct ConvergenceConeViolation : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct HypothesisViolated : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };
struct IllConditioned : Error { using Error::Error; };
struct StepUnstable : Error { using Error::Error; };
struct EvaluationError : Error { using Error::Error; };

}  // namespace stokes
