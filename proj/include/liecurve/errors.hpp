#pragma once

#include <stdexcept>
#include <string>

namespace liecurve {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input / grid validation
struct TooFewSamples : Error { using Error::Error; };
struct NonMonotoneParameter : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };
struct MissingPositions : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// Frenet machinery
struct VanishingCurvature : Error { using Error::Error; };
struct DegenerateFrame : Error { using Error::Error; };

// Mannheim / partner machinery
struct HVanishes : Error { using Error::Error; };
struct MuZero : Error { using Error::Error; };

// Generators / integration
struct ZeroParameter : Error { using Error::Error; };
struct NonPositiveKappa : Error { using Error::Error; };
struct StepTooLarge : Error { using Error::Error; };
struct ConditionViolated : Error { using Error::Error; };
struct RangeContainsHZero : Error { using Error::Error; };

}  // namespace liecurve
