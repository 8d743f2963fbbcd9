#pragma once

#include <stdexcept>
#include <string>

namespace vhetpos {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

struct NearSingular : Error { using Error::Error; };
struct ZeroRange : Error { using Error::Error; };
struct KeplerNoConvergence : Error { using Error::Error; };

struct InsufficientMeasurements : Error { using Error::Error; };
struct SingularGeometry : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };

struct ZeroRedundancy : Error { using Error::Error; };
struct NumericalDegeneracy : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };

}  // namespace vhetpos
