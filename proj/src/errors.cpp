#include "hdalpha/errors.hpp"

#include <sstream>

namespace hdalpha {

ErrorCategory category_of(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return ErrorCategory::Usage;
        case ErrorCode::Parse:
        case ErrorCode::ZeroVarianceSeries:
            return ErrorCategory::Data;
        case ErrorCode::SingularDesign:
        case ErrorCode::InterceptSpanned:
        case ErrorCode::LagExceedsSample:
        case ErrorCode::SampleTooShort:
        case ErrorCode::DegenerateVariance:
        case ErrorCode::DegenerateSecurityVariance:
        case ErrorCode::DimensionTooSmall:
        case ErrorCode::NotPositiveDefinite:
            return ErrorCategory::Numerical;
    }
    return ErrorCategory::Data;
}

Error::Error(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}

namespace {

std::string degenerate_message(double raw) {
    std::ostringstream os;
    os.precision(17);
    os << "degenerate variance estimate (raw value " << raw << ")";
    return os.str();
}

std::string parse_message(const std::string& source, std::size_t row, std::size_t column,
                          const std::string& what) {
    std::ostringstream os;
    os << source;
    if (row > 0) os << ":" << row;
    if (column > 0) os << ":" << column;
    os << ": " << what;
    return os.str();
}

}  // namespace

DegenerateVarianceError::DegenerateVarianceError(double raw_value)
    : Error(ErrorCode::DegenerateVariance, degenerate_message(raw_value)), raw_value_(raw_value) {}

ParseError::ParseError(const std::string& source, std::size_t row, std::size_t column, const std::string& what)
    : Error(ErrorCode::Parse, parse_message(source, row, column, what)),
      source_(source),
      row_(row),
      column_(column) {}

Error with_context(const Error& inner, const std::string& context) {
    return Error(inner.code(), context + ": " + inner.what());
}

}  // namespace hdalpha
