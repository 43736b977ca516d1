#include <modstrata/error.hh>

#include <utility>

namespace modstrata
{
    auto error_kind_name(ErrorKind kind) -> std::string_view
    {
        switch (kind) {
            case ErrorKind::GroundTooSmall:         return "GroundTooSmall";
            case ErrorKind::GroundMismatch:         return "GroundMismatch";
            case ErrorKind::MalformedPartition:     return "MalformedPartition";
            case ErrorKind::NoCompactificationRule: return "NoCompactificationRule";
            case ErrorKind::DegenerateSpace:        return "DegenerateSpace";
            case ErrorKind::VaryingDimTooSmall:     return "VaryingDimTooSmall";
            case ErrorKind::InvalidShape:           return "InvalidShape";
            case ErrorKind::NotProper:              return "NotProper";
            case ErrorKind::SpecInvalid:            return "SpecInvalid";
            case ErrorKind::TargetTooLarge:         return "TargetTooLarge";
            case ErrorKind::RankTooSmall:           return "RankTooSmall";
            case ErrorKind::UnitaryBoundViolated:   return "UnitaryBoundViolated";
            case ErrorKind::UnsupportedTarget:      return "UnsupportedTarget";
            case ErrorKind::GenusTooSmall:          return "GenusTooSmall";
            case ErrorKind::RuleNotProven:          return "RuleNotProven";
            case ErrorKind::NonIntegral:            return "NonIntegral";
            case ErrorKind::InternalMismatch:       return "InternalMismatch";
        }
        return "Unknown";
    }

    Error::Error(ErrorKind kind, const std::string & message) :
        std::runtime_error(std::string{error_kind_name(kind)} + ": " + message),
        _kind(kind)
    {
    }

    Error::Error(ErrorKind kind, const std::string & message, std::vector<std::string> details) :
        std::runtime_error(std::string{error_kind_name(kind)} + ": " + message),
        _kind(kind),
        _details(std::move(details))
    {
    }

    auto exact_div(Dim num, Dim den, std::string_view what) -> Dim
    {
        if (den == 0 || num % den != 0)
            throw Error{ErrorKind::NonIntegral, std::string{what} + ": " + std::to_string(num)
                + "/" + std::to_string(den) + " is not an integer"};
        return num / den;
    }
}
