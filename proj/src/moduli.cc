#include <modstrata/moduli.hh>
#include <modstrata/detail/overloaded.hh>

#include <algorithm>
#include <regex>

using std::optional;
using std::string;
using std::to_string;
using std::vector;

namespace modstrata
{
    using detail::Overloaded;

    ModuliSpace::ModuliSpace(Variant variant, optional<int> level) :
        _variant(variant),
        _level(level)
    {
        std::visit(Overloaded{
                [] (const Siegel & s) {
                    if (s.g < 0)
                        throw Error{ErrorKind::InvalidShape, "Siegel space of negative dimension"};
                },
                [] (const Unitary & u) {
                    if (u.p < 0 || u.q < 0)
                        throw Error{ErrorKind::InvalidShape, "unitary signature with a negative entry"};
                },
                [] (const CurveModuli & c) {
                    if (c.g < 2)
                        throw Error{ErrorKind::GroundTooSmall, "curve moduli need genus at least 2"};
                }
            }, _variant);

        if (_level && *_level < 3)
            throw Error{ErrorKind::InvalidShape, "level " + std::to_string(*_level) + " is below 3"};
    }

    auto ModuliSpace::to_string() const -> string
    {
        return std::visit(Overloaded{
                [] (const Siegel & s) { return "A_" + std::to_string(s.g); },
                [] (const Unitary & u) { return "Z_L(" + std::to_string(u.p) + "," + std::to_string(u.q) + ")"; },
                [] (const CurveModuli & c) { return "M_" + std::to_string(c.g); }
            }, _variant);
    }

    auto siegel_dim(int g) -> Dim
    {
        if (g < 0)
            throw Error{ErrorKind::InvalidShape, "Siegel space of negative dimension"};
        return exact_div(Dim{g} * (g + 1), 2, "g(g+1)/2");
    }

    auto unitary_dim(int p, int q) -> Dim
    {
        if (p < 0 || q < 0)
            throw Error{ErrorKind::InvalidShape, "unitary signature with a negative entry"};
        return Dim{p} * q;
    }

    auto dim_space(const ModuliSpace & space) -> Dim
    {
        return std::visit(Overloaded{
                [] (const Siegel & s) { return siegel_dim(s.g); },
                [] (const Unitary & u) { return unitary_dim(u.p, u.q); },
                [] (const CurveModuli & c) { return Dim{3} * c.g - 3; }
            }, space.variant());
    }

    auto boundary_codim(const ModuliSpace & space) -> BoundaryCodim
    {
        return std::visit(Overloaded{
                [] (const Siegel & s) {
                    if (s.g < 1)
                        throw Error{ErrorKind::DegenerateSpace, "A_0 is a point and has no boundary"};
                    // boundary strata are A_i for i < g; the largest is A_{g-1}
                    return BoundaryCodim{siegel_dim(s.g) - siegel_dim(s.g - 1), true};
                },
                [] (const Unitary & u) {
                    if (u.p < 1 || u.q < 1)
                        throw Error{ErrorKind::DegenerateSpace, "degenerate unitary space has no boundary"};
                    return BoundaryCodim{unitary_dim(u.p, u.q) - unitary_dim(u.p - 1, u.q - 1), false};
                },
                [] (const CurveModuli &) -> BoundaryCodim {
                    throw Error{ErrorKind::NoCompactificationRule, "no compactification rule for curve moduli"};
                }
            }, space.variant());
    }

    auto torelli_codim(int g) -> Dim
    {
        if (g < 2)
            throw Error{ErrorKind::GroundTooSmall, "Torelli locus needs genus at least 2"};
        return dim_space(ModuliSpace::siegel(g)) - dim_space(ModuliSpace::curves(g));
    }

    auto atom_dim(const GroupAtom & atom) -> Dim
    {
        return std::visit(Overloaded{
                [] (const SpAtom & a) { return Dim{a.rank} * (2 * Dim{a.rank} + 1); },
                [] (const SUFormAtom & a) { return (Dim{a.p} + a.q) * (Dim{a.p} + a.q) - 1; }
            }, atom);
    }

    auto atom_label(const GroupAtom & atom) -> string
    {
        return std::visit(Overloaded{
                [] (const SpAtom & a) { return "Sp(" + to_string(2 * a.rank) + ")"; },
                [] (const SUFormAtom & a) { return "SUForm(" + to_string(a.p) + "," + to_string(a.q) + ")"; }
            }, atom);
    }

    GroupExpr::GroupExpr(vector<GroupAtom> atoms) :
        _atoms(std::move(atoms))
    {
        if (_atoms.empty())
            throw Error{ErrorKind::InvalidShape, "empty group expression"};
        for (auto & atom : _atoms)
            std::visit(Overloaded{
                    [] (const SpAtom & a) {
                        if (a.rank < 1)
                            throw Error{ErrorKind::RankTooSmall, "Sp atom of rank " + to_string(a.rank)};
                    },
                    [] (const SUFormAtom & a) {
                        if (a.p < 1 || a.q < 1)
                            throw Error{ErrorKind::InvalidShape, "SU-form with a non-positive signature entry"};
                    }
                }, atom);
        std::sort(_atoms.begin(), _atoms.end());
    }

    auto GroupExpr::symplectic(const vector<int> & ranks) -> GroupExpr
    {
        vector<GroupAtom> atoms;
        for (int k : ranks)
            atoms.emplace_back(SpAtom{k});
        return GroupExpr{std::move(atoms)};
    }

    auto GroupExpr::su_form(int p, int q) -> GroupExpr
    {
        return GroupExpr{{SUFormAtom{p, q}}};
    }

    auto GroupExpr::parse(const string & text) -> GroupExpr
    {
        static const std::regex atom_re{R"(\s*(?:Sp\((\d+)\)|SUForm\((\d+),\s*(\d+)\))\s*(?:x|$))"};
        vector<GroupAtom> atoms;
        auto begin = text.cbegin();
        std::smatch match;
        while (begin != text.cend()) {
            if (! std::regex_search(begin, text.cend(), match, atom_re, std::regex_constants::match_continuous))
                throw Error{ErrorKind::InvalidShape, "cannot parse group expression '" + text + "'"};
            if (match[1].matched) {
                int two_k = std::stoi(match[1]);
                if (two_k % 2 != 0)
                    throw Error{ErrorKind::InvalidShape, "Sp(" + to_string(two_k) + ") needs an even degree"};
                atoms.emplace_back(SpAtom{two_k / 2});
            }
            else
                atoms.emplace_back(SUFormAtom{std::stoi(match[2]), std::stoi(match[3])});
            begin = match[0].second;
        }
        return GroupExpr{std::move(atoms)};
    }

    auto GroupExpr::label() const -> string
    {
        string result;
        for (auto & atom : _atoms) {
            if (! result.empty())
                result += " x ";
            result += atom_label(atom);
        }
        return result;
    }

    auto group_dim(const GroupExpr & expr) -> Dim
    {
        Dim total = 0;
        for (auto & atom : expr.atoms())
            total += atom_dim(atom);
        return total;
    }
}
