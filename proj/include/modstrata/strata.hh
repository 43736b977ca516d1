#pragma once

#include <modstrata/error.hh>

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace modstrata
{
    /// Varying factors i < j share an isogeny factor of dimension d.
    struct BOffDiag
    {
        int i, j, d;
        auto operator== (const BOffDiag &) const -> bool = default;
    };

    /// Varying factor i contains the square of a d-dimensional factor.
    struct BDiag
    {
        int i, d;
        auto operator== (const BDiag &) const -> bool = default;
    };

    /// Varying factor i contains fixed factor j.
    struct CFixed
    {
        int i, j;
        auto operator== (const CFixed &) const -> bool = default;
    };

    /// Z^2 x P' with L acting on Z; k and l are even.
    struct UnitaryCM
    {
        int k, l;
        auto operator== (const UnitaryCM &) const -> bool = default;
    };

    /// Z^2 x P' with Z of dimension k and L not acting on Z.
    struct UnitaryNonCM
    {
        int k;
        auto operator== (const UnitaryNonCM &) const -> bool = default;
    };

    using StratumKind = std::variant<BOffDiag, BDiag, CFixed, UnitaryCM, UnitaryNonCM>;

    auto stratum_kind_name(const StratumKind & kind) -> std::string;
    auto stratum_label(const StratumKind & kind) -> std::string;

    /// One component of a multiply-decomposable locus. Indices are 1-based into the sorted
    /// varying (and fixed) dimension lists.
    struct Stratum
    {
        StratumKind kind;
        Dim ambient_dim;
        Dim stratum_dim;
        Dim codim;

        auto label() const -> std::string { return stratum_label(kind); }
        auto operator== (const Stratum &) const -> bool = default;
    };

    /// Fixed factor dimensions (possibly none, each >= 1) and varying factor dimensions (at least
    /// one, each >= 2). Both lists are kept sorted ascending.
    class DecompositionShape
    {
        public:
            DecompositionShape(std::vector<int> fixed_dims, std::vector<int> varying_dims);

            auto fixed_dims() const noexcept -> const std::vector<int> & { return _fixed; }
            auto varying_dims() const noexcept -> const std::vector<int> & { return _varying; }
            auto total() const -> int;

        private:
            std::vector<int> _fixed;
            std::vector<int> _varying;
    };

    /**
     * Result of a codimension minimization: the oracle minimum over the enumerated strata with a
     * witness, next to the closed form. `closed_form_applies` is false when the closed form's
     * hypotheses do not hold (and the oracle value stands alone); `agrees` compares the two
     * whenever the closed form applies.
     */
    struct MinCodim
    {
        Dim value;
        Stratum witness;
        std::optional<Dim> closed_form;
        bool closed_form_applies;
        bool agrees;
        std::vector<std::string> notes;
    };

    auto strata_of_product(std::span<const int> varying_dims) -> std::vector<Stratum>;
    auto mdec_codim_product(std::span<const int> varying_dims) -> MinCodim;

    /// B-strata of the varying part followed by every realizable C-stratum.
    auto strata_of_fixedpart(const DecompositionShape & shape) -> std::vector<Stratum>;
    auto mdec_codim_fixedpart(const DecompositionShape & shape) -> MinCodim;

    auto strata_of_unitary(int p, int q) -> std::vector<Stratum>;
    auto mdec_codim_unitary(int p, int q) -> MinCodim;

    /// Fixed non-CM, pairwise non-isogenous elliptic factors add no strata.
    auto mdec_codim_unitary_fixedpart(int r, int p, int q) -> MinCodim;

    /// Closed forms, exposed for reports and tests.
    auto closed_form_product_codim(std::span<const int> varying_dims) -> Dim;
    auto closed_form_fixedpart_codim(const DecompositionShape & shape) -> Dim;
    auto closed_form_unitary_codim(int p, int q) -> Dim;
}
