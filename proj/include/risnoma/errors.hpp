#ifndef RISNOMA_ERRORS_HPP
#define RISNOMA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace risnoma {

/// Root of the library's error hierarchy. The three direct branches
/// (ConfigError, NumericError, IoError) map onto the CLI exit codes
/// 2, 3 and 4; see tools/main.cpp.
struct Error : std::runtime_error {
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

/// Invalid scenario description: bad field values, broken invariants,
/// unparseable configuration files.
struct ConfigError : Error {
    using Error::Error;
};

/// Configuration file could not be parsed (carries line/field context).
struct ParseError : ConfigError {
    using ConfigError::ConfigError;
};

/// RIS element split that would leave one receiver without elements.
struct InvalidPartitionError : ConfigError {
    using ConfigError::ConfigError;
};

/// Scenario outside the fitted model's validity region (e.g. a <= 1).
struct DegenerateConfigError : ConfigError {
    using ConfigError::ConfigError;
};

/// Numerical evaluation failed or was refused.
struct NumericError : Error {
    using Error::Error;
};

/// Argument outside a function's mathematical domain.
struct DomainError : NumericError {
    using NumericError::NumericError;
};

/// Result not representable in double precision.
struct OverflowError : NumericError {
    using NumericError::NumericError;
};

/// Series or iteration failed to reach the requested tolerance.
struct ConvergenceError : NumericError {
    using NumericError::NumericError;
};

/// Structurally invalid special-function parameters
/// (e.g. a nonpositive-integer denominator parameter).
struct ParameterError : NumericError {
    using NumericError::NumericError;
};

/// Shape parameter sits on a pole of the closed form and nudging is off.
struct SingularParameterError : NumericError {
    using NumericError::NumericError;
};

/// Filesystem failure while reading inputs or writing outputs.
struct IoError : Error {
    using Error::Error;
};

} // namespace risnoma

#endif
