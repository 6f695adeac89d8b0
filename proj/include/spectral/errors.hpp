#pragma once

#include <stdexcept>
#include <string>

namespace spectral {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// linalg
struct SingularMatrix : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };

// contour
struct SelfIntersecting : Error { using Error::Error; };
struct DegenerateSpec : Error { using Error::Error; };
struct TooCloseToBoundary : Error { using Error::Error; };

// cauchy / dlayer
struct OutsideRegion : Error { using Error::Error; };
struct InsideRegion : Error { using Error::Error; };
struct RegionMismatch : Error { using Error::Error; };
struct InconsistentClassification : Error { using Error::Error; };
struct SingularOperator : Error { using Error::Error; };

// calculus
struct ResolventSingular : Error { using Error::Error; };
struct NonIntegerCount : Error { using Error::Error; };
struct DecompositionMismatch : Error { using Error::Error; };
struct NonConvexDomain : Error { using Error::Error; };
struct InconsistentInclusion : Error { using Error::Error; };

// mapping / extremal
struct HypothesisViolated : Error { using Error::Error; };
struct ZeroFunction : Error { using Error::Error; };
struct BoundViolated : Error { using Error::Error; };

// smoothing
struct LevelNotRegular : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };
struct NestingViolated : Error { using Error::Error; };

// scene / cli
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

} // namespace spectral
