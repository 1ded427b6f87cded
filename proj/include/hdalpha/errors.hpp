#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hdalpha {

enum class ErrorCode {
    InvalidArgument,
    Parse,
    SingularDesign,
    InterceptSpanned,
    LagExceedsSample,
    SampleTooShort,
    DegenerateVariance,
    DegenerateSecurityVariance,
    DimensionTooSmall,
    NotPositiveDefinite,
    ZeroVarianceSeries,
};

// Coarse classification used for process exit codes.
enum class ErrorCategory { Usage, Data, Numerical };

ErrorCategory category_of(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }
    ErrorCategory category() const noexcept { return category_of(code_); }

private:
    ErrorCode code_;
};

/// sigma_hat_sq came out non-positive; the raw estimate is kept for diagnostics.
class DegenerateVarianceError : public Error {
public:
    explicit DegenerateVarianceError(double raw_value);

    double raw_value() const noexcept { return raw_value_; }

private:
    double raw_value_;
};

/// Malformed input file. Row and column are 1-based file coordinates; 0 means "not applicable".
class ParseError : public Error {
public:
    ParseError(const std::string& source, std::size_t row, std::size_t column, const std::string& what);

    const std::string& source() const noexcept { return source_; }
    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string source_;
    std::size_t row_;
    std::size_t column_;
};

/// Prefixes an error with extra context while keeping its code (and so its exit category).
Error with_context(const Error& inner, const std::string& context);

}  // namespace hdalpha
