#pragma once

#include <modstrata/error.hh>
#include <modstrata/moduli.hh>
#include <modstrata/partitions.hh>
#include <modstrata/strata.hh>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace modstrata
{
    /// Fixed abelian factors and general (varying) factors; all varying dims must be >= 2.
    struct SymplecticSpec
    {
        std::vector<int> fixed_dims;
        std::vector<int> varying_dims;
    };

    /// r fixed non-CM elliptic curves times a general point of Z_L(p,q).
    struct UnitarySpec
    {
        int elliptic_count = 0;
        int p = 0;
        int q = 0;
        std::string field_label = "L";
    };

    struct FamilySpec
    {
        std::variant<SymplecticSpec, UnitarySpec> flavor;
        int level = 3;
        std::optional<int> declared_total;

        static auto symplectic(std::vector<int> fixed_dims, std::vector<int> varying_dims) -> FamilySpec;
        static auto unitary(int elliptic_count, int p, int q, std::string field_label = "L") -> FamilySpec;

        auto is_unitary() const -> bool { return std::holds_alternative<UnitarySpec>(flavor); }
        auto total_g() const -> int;

        /// Decomposition type as a partition of {1..g}: consecutive blocks, fixed factors first.
        auto partition() const -> SetPartition;

        auto describe() const -> std::string;
    };

    /// Each violated hypothesis as a short message; empty when the spec is usable.
    auto validate_spec(const FamilySpec & spec) -> std::vector<std::string>;

    struct PlanReport
    {
        FamilySpec spec;
        int total_g;
        Dim ambient_dim;
        MinCodim mdec;
        BoundaryCodim boundary;
        Dim budget;
        Dim d_max;
        GroupExpr monodromy;
        Dim monodromy_dim;
        std::optional<Dim> hecke_margin;
        bool feasible;
        Dim theorem_d_max;
        bool agrees_with_theorem;
        std::vector<std::string> notes;
    };

    /// Throws SpecInvalid (with the violations as details) unless validate_spec is empty.
    auto plan_family(const FamilySpec & spec) -> PlanReport;

    /// Derived Mumford-Tate group of the varying part: one Sp per varying factor, or SU(p,q).
    auto derived_mt(const FamilySpec & spec) -> GroupExpr;

    /// A spec of total dimension g_prime whose monodromy is target, padding with elliptic curves.
    auto realize_group(const GroupExpr & target, int g_prime, const std::string & field_label = "L") -> FamilySpec;

    struct KodairaReport
    {
        int fiber_genus;
        FamilySpec spec;
        Dim mdec_codim;
        BoundaryCodim boundary;
        Dim torelli_codim;
        Dim residual_mdec_codim;
        Dim residual_boundary_codim;
        Dim post_torelli_budget;
        bool feasible;
        GroupExpr monodromy;
        std::vector<std::string> notes;
    };

    /// Budget for a complete curve of genus-g fibers built on {E} x A_{g-1} inside the Torelli locus.
    auto kodaira_budget(int fiber_genus) -> KodairaReport;

    enum class FieldKind
    {
        Rational,
        ImaginaryQuadratic,
        RealQuadratic,
        Other
    };

    auto field_kind_name(FieldKind kind) -> std::string;

    struct EndFactor
    {
        FieldKind kind;
        std::string label;
        int multiplicity = 1;
    };

    /// End_Q(A) as a product of fields with multiplicities.
    class EndAlgebra
    {
        public:
            explicit EndAlgebra(std::vector<EndFactor> factors);

            auto factors() const noexcept -> const std::vector<EndFactor> & { return _factors; }

        private:
            std::vector<EndFactor> _factors;
    };

    /// True when every factor is Q or imaginary quadratic with multiplicity one, the case in which
    /// isogeny classes are known to be polarized isogeny classes. False means "not guaranteed".
    auto polarized_isogeny_closed(const EndAlgebra & algebra) -> bool;

    /// Rank of the Neron-Severi group; only defined where polarized_isogeny_closed holds.
    auto ns_rank(const EndAlgebra & algebra) -> int;
}
