#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace modstrata
{
    /// All dimensions, codimensions and group dimensions are exact integers.
    using Dim = std::int64_t;

    enum class ErrorKind
    {
        GroundTooSmall,
        GroundMismatch,
        MalformedPartition,
        NoCompactificationRule,
        DegenerateSpace,
        VaryingDimTooSmall,
        InvalidShape,
        NotProper,
        SpecInvalid,
        TargetTooLarge,
        RankTooSmall,
        UnitaryBoundViolated,
        UnsupportedTarget,
        GenusTooSmall,
        RuleNotProven,
        NonIntegral,
        InternalMismatch
    };

    auto error_kind_name(ErrorKind kind) -> std::string_view;

    class Error : public std::runtime_error
    {
        public:
            Error(ErrorKind kind, const std::string & message);
            Error(ErrorKind kind, const std::string & message, std::vector<std::string> details);

            auto kind() const noexcept -> ErrorKind { return _kind; }

            /// Extra data attached to the error, e.g. the violated hypotheses behind SpecInvalid.
            auto details() const noexcept -> const std::vector<std::string> & { return _details; }

        private:
            ErrorKind _kind;
            std::vector<std::string> _details;
    };

    /// Divides exactly, throwing NonIntegral if den does not divide num. Used to evaluate the
    /// half- and quarter-integer closed forms without ever leaving the integers.
    auto exact_div(Dim num, Dim den, std::string_view what) -> Dim;
}
