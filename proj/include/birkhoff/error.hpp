#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace birkhoff {

enum class ErrorKind {
    ParseError,
    UnknownElement,
    NoProduct,
    NoInOut,
    NotAPoset,
    NonAssociative,
    NonMobius,
    TruncationExhausted,
    DivisionByZeroSeries,
    DivisibilityFailure,
    MissingValue,
    NotNormalized,
    NonConstantUnit,
    PolePartResidual,
    InvalidFiltration,
};

inline std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::UnknownElement: return "UnknownElement";
        case ErrorKind::NoProduct: return "NoProduct";
        case ErrorKind::NoInOut: return "NoInOut";
        case ErrorKind::NotAPoset: return "NotAPoset";
        case ErrorKind::NonAssociative: return "NonAssociative";
        case ErrorKind::NonMobius: return "NonMobius";
        case ErrorKind::TruncationExhausted: return "TruncationExhausted";
        case ErrorKind::DivisionByZeroSeries: return "DivisionByZeroSeries";
        case ErrorKind::DivisibilityFailure: return "DivisibilityFailure";
        case ErrorKind::MissingValue: return "MissingValue";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::NonConstantUnit: return "NonConstantUnit";
        case ErrorKind::PolePartResidual: return "PolePartResidual";
        case ErrorKind::InvalidFiltration: return "InvalidFiltration";
    }
    return "Unknown";
}

/// Library-wide exception. `kind()` is stable and meant for programmatic
/// dispatch; `what()` carries a human readable message that names the
/// offending element or input position where one exists.
class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept
    {
        return kind_;
    }

private:
    ErrorKind kind_;
};

} // namespace birkhoff
