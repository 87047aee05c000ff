#pragma once

#include <stdexcept>
#include <string>

namespace qalign {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Point-set ingestion.
struct IoError final : Error { using Error::Error; };
struct FormatError final : Error { using Error::Error; };

// Geometry operations.
struct InvalidK final : Error { using Error::Error; };
struct InvalidRatio final : Error { using Error::Error; };

// Basis / QUBO construction.
struct LengthMismatch final : Error { using Error::Error; };
struct CardinalityMismatch final : Error { using Error::Error; };
struct NotCentered final : Error { using Error::Error; };

// Samplers.
struct TooManyBits final : Error { using Error::Error; };
struct InvalidSchedule final : Error { using Error::Error; };

// Unembedding.
struct ClampViolated final : Error { using Error::Error; };

// Metrics.
struct ZeroReference final : Error { using Error::Error; };

// Annealing simulator.
struct TooManyQubits final : Error { using Error::Error; };
struct DimensionMismatch final : Error { using Error::Error; };
struct DegenerateGap final : Error { using Error::Error; };

}  // namespace qalign
