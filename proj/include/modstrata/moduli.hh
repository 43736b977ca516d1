#pragma once

#include <modstrata/error.hh>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace modstrata
{
    /// Principally polarized abelian varieties of dimension g (the Siegel case).
    struct Siegel
    {
        int g;
    };

    /// Abelian varieties with multiplication by an imaginary quadratic field, action of type (p,q).
    struct Unitary
    {
        int p;
        int q;
    };

    /// Curves of genus g, used only through the Torelli map.
    struct CurveModuli
    {
        int g;
    };

    /**
     * One of the ambient moduli spaces, with an optional level structure. The level is metadata:
     * it is checked to be at least 3 when present and never enters a dimension. Siegel(0) and
     * Unitary spaces with a zero parameter are accepted as points, since stratum arithmetic needs
     * them as residual factors.
     */
    class ModuliSpace
    {
        public:
            using Variant = std::variant<Siegel, Unitary, CurveModuli>;

            ModuliSpace(Variant variant, std::optional<int> level = std::nullopt);

            static auto siegel(int g) -> ModuliSpace { return ModuliSpace{Siegel{g}}; }
            static auto unitary(int p, int q) -> ModuliSpace { return ModuliSpace{Unitary{p, q}}; }
            static auto curves(int g) -> ModuliSpace { return ModuliSpace{CurveModuli{g}}; }

            auto variant() const noexcept -> const Variant & { return _variant; }
            auto level() const noexcept -> std::optional<int> { return _level; }
            auto to_string() const -> std::string;

        private:
            Variant _variant;
            std::optional<int> _level;
    };

    struct BoundaryCodim
    {
        Dim value;
        bool exact;  ///< false when value is only a guaranteed lower bound

        auto operator== (const BoundaryCodim &) const -> bool = default;
    };

    auto dim_space(const ModuliSpace & space) -> Dim;

    /// Codimension of the boundary of the Satake-Baily-Borel compactification.
    auto boundary_codim(const ModuliSpace & space) -> BoundaryCodim;

    /// Codimension of the Torelli locus in the Siegel space of the same genus.
    auto torelli_codim(int g) -> Dim;

    /// Shorthands for the two dimension formulas everything else is built on.
    auto siegel_dim(int g) -> Dim;
    auto unitary_dim(int p, int q) -> Dim;

    /// Sp(2k), stored by its rank k.
    struct SpAtom
    {
        int rank;

        auto operator<=> (const SpAtom &) const = default;
    };

    /// A Q-form of SU(p,q); the quadratic field is irrelevant to the dimension and is not stored.
    struct SUFormAtom
    {
        int p;
        int q;

        auto operator<=> (const SUFormAtom &) const = default;
    };

    using GroupAtom = std::variant<SpAtom, SUFormAtom>;

    auto atom_dim(const GroupAtom & atom) -> Dim;
    auto atom_label(const GroupAtom & atom) -> std::string;

    /**
     * A formal product of group atoms, sorted so that Sp atoms come first (by rank) followed by
     * SU-forms (by (p,q)). Equality is therefore equality of the multiset of atoms.
     */
    class GroupExpr
    {
        public:
            explicit GroupExpr(std::vector<GroupAtom> atoms);

            static auto symplectic(const std::vector<int> & ranks) -> GroupExpr;
            static auto su_form(int p, int q) -> GroupExpr;

            /// Parses labels produced by label(): "Sp(4) x Sp(6)", "SUForm(2,2)".
            static auto parse(const std::string & text) -> GroupExpr;

            auto atoms() const noexcept -> const std::vector<GroupAtom> & { return _atoms; }
            auto label() const -> std::string;

            auto operator== (const GroupExpr &) const -> bool = default;

        private:
            std::vector<GroupAtom> _atoms;
    };

    auto group_dim(const GroupExpr & expr) -> Dim;
}
