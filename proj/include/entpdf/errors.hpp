#pragma once

#include <stdexcept>
#include <string>

namespace entpdf {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// State validation.
struct NotHermitian : Error { using Error::Error; };
struct TraceNotOne : Error { using Error::Error; };
struct NotPositive : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct InvalidRank : Error { using Error::Error; };

// Subspace geometry.
struct DegenerateComplement : Error { using Error::Error; };
struct NotInSubspace : Error { using Error::Error; };
struct DegenerateSubspace : Error { using Error::Error; };
struct DivergentDual : Error { using Error::Error; };

// Marker pipeline.
struct ZeroState : Error { using Error::Error; };
struct InfeasibleMarkers : Error { using Error::Error; };
struct MissingAngles : Error { using Error::Error; };
struct InsufficientResolution : Error { using Error::Error; };

// Input parsing (CLI / file formats).
struct ParseError : Error { using Error::Error; };

}  // namespace entpdf
