#pragma once

#include <stdexcept>
#include <string>

namespace modelspace {

// Base type for every failure raised by the library, so callers can catch
// one class and still branch on the specific condition below.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A product or shift would push coefficients outside the requested band.
struct BandOverflowError : Error { using Error::Error; };

// A sampling grid is too coarse to recover the requested band.
struct GridTooSmallError : Error { using Error::Error; };

// Evaluation point too close to a pole 1/conj(zero).
struct PoleProximityError : Error { using Error::Error; };

// A certified geometric tail bound exceeds the requested threshold.
struct TailTooLargeError : Error { using Error::Error; };

// An operation requires u(0) != 0 but |u(0)| is below threshold.
struct ZeroAtOriginError : Error { using Error::Error; };

// A quantity sits inside the ambiguous zone between two decision thresholds.
struct IllConditionedError : Error { using Error::Error; };

// Inputs expected to be mutually orthogonal are not.
struct NotOrthogonalError : Error { using Error::Error; };

// A column set expected to have full rank is numerically rank deficient.
struct RankDeficientError : Error { using Error::Error; };

// No column of a subspace basis can be scored against the operator's
// reliable columns, so an invariance residual would be meaningless.
struct NoScorableColumnsError : Error { using Error::Error; };

// A structural predicate that the theory guarantees failed numerically.
struct PredicateFailedError : Error { using Error::Error; };

// A subspace handed to a classifier is not invariant to tolerance.
struct NotInvariantError : Error { using Error::Error; };

// Malformed descriptor or configuration input.
struct DescriptorError : Error { using Error::Error; };

}  // namespace modelspace
