#pragma once

#include <modstrata/error.hh>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace modstrata
{
    using Json = nlohmann::ordered_json;

    /// One parameter point of a sweep: closed form versus enumeration.
    struct VerificationCase
    {
        Json input;
        std::optional<Dim> expected;  ///< empty when the closed form does not apply
        Dim computed;
        bool agree;
        std::string witness;
        Json extra = Json::object();
    };

    struct VerificationRun
    {
        std::string lemma_id;
        Json parameter_range;
        std::vector<VerificationCase> cases;
        int disagreements = 0;
        int flagged = 0;              ///< cases where the closed form was not asserted
        Dim elapsed_ms = 0;
        std::vector<std::string> notes;

        auto all_agree() const -> bool { return disagreements == 0; }
    };

    struct VerifyOptions
    {
        std::optional<int> g;         ///< restrict the sweep to this single size
        std::optional<int> g_max;     ///< upper end of the sweep
        bool witness_all = false;
    };

    /// Ids accepted by verify(), in a fixed order.
    auto verification_ids() -> const std::vector<std::string> &;

    /// Runs one sweep; an unknown id throws Error(SpecInvalid).
    auto verify(const std::string & lemma_id, const VerifyOptions & options = {}) -> VerificationRun;
}
