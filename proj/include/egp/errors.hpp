#pragma once

#include <stdexcept>

namespace egp {

// Base class for every error this library raises on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };
struct NonFiniteInput : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct NumericalError : Error { using Error::Error; };
struct ZeroWeightSum : Error { using Error::Error; };
struct EmptyHistory : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct MissingColumn : Error { using Error::Error; };
struct UnparseableStream : Error { using Error::Error; };
struct NoRecordsForCategory : Error { using Error::Error; };
struct SeriesTooShort : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace egp
