// errors.hpp — Exception hierarchy; the category maps to the CLI exit code.

#pragma once

#include <stdexcept>
#include <string>

namespace decolab {

enum class ErrorClass {
    config  = 2,
    numeric = 3,
    io      = 4,
};

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& what)
        : std::runtime_error(what), cls_(cls) {}
    ErrorClass error_class() const noexcept { return cls_; }
    int exit_code() const noexcept { return static_cast<int>(cls_); }

private:
    ErrorClass cls_;
};

struct NumericError : Error {
    explicit NumericError(const std::string& what) : Error(ErrorClass::numeric, what) {}
};
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorClass::config, what) {}
};
struct IoError : Error {
    explicit IoError(const std::string& what) : Error(ErrorClass::io, what) {}
};

// numeric
struct GridTooCoarse      : NumericError { using NumericError::NumericError; };
struct GridTooNarrow      : NumericError { using NumericError::NumericError; };
struct BoundaryLeak       : NumericError { using NumericError::NumericError; };
struct GridMismatch       : NumericError { using NumericError::NumericError; };
struct ZeroNorm           : NumericError { using NumericError::NumericError; };
struct DimensionMismatch  : NumericError { using NumericError::NumericError; };
struct DegenerateState    : NumericError { using NumericError::NumericError; };
struct InvalidOverlap     : NumericError { using NumericError::NumericError; };
struct RegimeError        : NumericError { using NumericError::NumericError; };
struct StabilityViolation : NumericError { using NumericError::NumericError; };
struct TraceDrift         : NumericError { using NumericError::NumericError; };
struct NonHermitianInput  : NumericError { using NumericError::NumericError; };

// config
struct ParseError      : ConfigError { using ConfigError::ConfigError; };
struct UnknownKey      : ConfigError { using ConfigError::ConfigError; };
struct MissingKey      : ConfigError { using ConfigError::ConfigError; };
struct ValidationError : ConfigError { using ConfigError::ConfigError; };

} // namespace decolab
