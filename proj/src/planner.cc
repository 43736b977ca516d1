#include <modstrata/planner.hh>
#include <modstrata/hecke_groups.hh>
#include <modstrata/detail/overloaded.hh>

#include <algorithm>
#include <numeric>

using std::optional;
using std::string;
using std::to_string;
using std::vector;

namespace modstrata
{
    using detail::Overloaded;

    namespace
    {
        auto join(const vector<int> & values) -> string
        {
            string result;
            for (size_t i = 0 ; i < values.size() ; ++i)
                result += (i == 0 ? "" : ",") + to_string(values[i]);
            return result;
        }

        auto sorted(vector<int> values) -> vector<int>
        {
            std::sort(values.begin(), values.end());
            return values;
        }

        // beyond this many candidate splits the Hecke margin is left out of a plan
        constexpr Dim hecke_margin_search_limit = Dim{1} << 22;

        auto hecke_margin(const FamilySpec & spec, vector<string> & notes) -> optional<Dim>
        {
            auto lambda = spec.partition();
            if (! lambda.is_proper()) {
                notes.push_back("single-factor decomposition: no Hecke margin");
                return std::nullopt;
            }
            Dim splits = 1;
            for (int l : lambda.block_sizes()) {
                splits *= l + 1;
                if (splits > hecke_margin_search_limit) {
                    notes.push_back("Hecke margin skipped: too many block splits to search");
                    return std::nullopt;
                }
            }
            return gamma_gamma_codim(lambda.ground_size(), lambda);
        }
    }

    auto FamilySpec::symplectic(vector<int> fixed_dims, vector<int> varying_dims) -> FamilySpec
    {
        return FamilySpec{SymplecticSpec{sorted(std::move(fixed_dims)), sorted(std::move(varying_dims))}, 3, std::nullopt};
    }

    auto FamilySpec::unitary(int elliptic_count, int p, int q, string field_label) -> FamilySpec
    {
        return FamilySpec{UnitarySpec{elliptic_count, p, q, std::move(field_label)}, 3, std::nullopt};
    }

    auto FamilySpec::total_g() const -> int
    {
        return std::visit(Overloaded{
                [] (const SymplecticSpec & s) {
                    return std::accumulate(s.fixed_dims.begin(), s.fixed_dims.end(), 0)
                        + std::accumulate(s.varying_dims.begin(), s.varying_dims.end(), 0);
                },
                [] (const UnitarySpec & u) { return u.elliptic_count + u.p + u.q; }
            }, flavor);
    }

    auto FamilySpec::partition() const -> SetPartition
    {
        vector<int> sizes = std::visit(Overloaded{
                [] (const SymplecticSpec & s) {
                    auto all = s.fixed_dims;
                    all.insert(all.end(), s.varying_dims.begin(), s.varying_dims.end());
                    return all;
                },
                [] (const UnitarySpec & u) {
                    vector<int> all(std::max(u.elliptic_count, 0), 1);
                    all.push_back(u.p + u.q);
                    return all;
                }
            }, flavor);

        vector<int> labels;
        for (size_t b = 0 ; b < sizes.size() ; ++b)
            labels.insert(labels.end(), std::max(sizes[b], 0), static_cast<int>(b));
        return SetPartition::from_labels(labels);
    }

    auto FamilySpec::describe() const -> string
    {
        return std::visit(Overloaded{
                [] (const SymplecticSpec & s) {
                    return "symplectic fixed=(" + join(s.fixed_dims) + ") varying=(" + join(s.varying_dims) + ")";
                },
                [] (const UnitarySpec & u) {
                    return "unitary r=" + to_string(u.elliptic_count) + " (p,q)=(" + to_string(u.p) + ","
                        + to_string(u.q) + ") over " + u.field_label;
                }
            }, flavor);
    }

    auto validate_spec(const FamilySpec & spec) -> vector<string>
    {
        vector<string> violations;
        std::visit(Overloaded{
                [&] (const SymplecticSpec & s) {
                    if (s.varying_dims.empty())
                        violations.push_back("no varying factors");
                    for (int d : s.varying_dims)
                        if (d < 2)
                            violations.push_back("varying dim " + to_string(d) + " < 2");
                    for (int d : s.fixed_dims)
                        if (d < 1)
                            violations.push_back("fixed dim " + to_string(d) + " < 1");
                },
                [&] (const UnitarySpec & u) {
                    if (u.elliptic_count < 0)
                        violations.push_back("elliptic count r=" + to_string(u.elliptic_count) + " < 0");
                    if (u.p < 1)
                        violations.push_back("p=" + to_string(u.p) + " < 1");
                    if (u.q < 1)
                        violations.push_back("q=" + to_string(u.q) + " < 1");
                    if (u.p + u.q < 4)
                        violations.push_back("p+q=" + to_string(u.p + u.q) + " < 4");
                    if (u.field_label.empty())
                        violations.push_back("field label is empty");
                }
            }, spec.flavor);

        if (spec.level < 3)
            violations.push_back("level n=" + to_string(spec.level) + " < 3");
        if (spec.declared_total && *spec.declared_total != spec.total_g())
            violations.push_back("declared g=" + to_string(*spec.declared_total) + " but factors sum to "
                    + to_string(spec.total_g()));
        return violations;
    }

    namespace
    {
        auto require_valid(const FamilySpec & spec) -> void
        {
            auto violations = validate_spec(spec);
            if (! violations.empty()) {
                string message = spec.describe() + ":";
                for (auto & v : violations)
                    message += " " + v + ";";
                throw Error{ErrorKind::SpecInvalid, message, std::move(violations)};
            }
        }
    }

    auto derived_mt(const FamilySpec & spec) -> GroupExpr
    {
        require_valid(spec);
        return std::visit(Overloaded{
                [] (const SymplecticSpec & s) { return GroupExpr::symplectic(s.varying_dims); },
                [] (const UnitarySpec & u) { return GroupExpr::su_form(u.p, u.q); }
            }, spec.flavor);
    }

    auto plan_family(const FamilySpec & spec) -> PlanReport
    {
        require_valid(spec);

        auto monodromy = derived_mt(spec);
        vector<string> notes;
        Dim ambient = 0;
        Dim theorem_d_max = 0;

        auto [mdec, boundary] = std::visit(Overloaded{
                [&] (const SymplecticSpec & s) {
                    for (int g : s.varying_dims)
                        ambient += dim_space(ModuliSpace::siegel(g));
                    auto m = mdec_codim_fixedpart(DecompositionShape{s.fixed_dims, s.varying_dims});
                    // the product compactification has the boundary of its smallest factor
                    auto b = boundary_codim(ModuliSpace::siegel(s.varying_dims.front()));
                    for (int g : s.varying_dims)
                        b.value = std::min(b.value, boundary_codim(ModuliSpace::siegel(g)).value);
                    theorem_d_max = Dim{s.varying_dims.front()} - 1;
                    if (std::any_of(s.fixed_dims.begin(), s.fixed_dims.end(), [] (int d) { return d >= 2; }))
                        notes.push_back("assumed: fixed factors are pairwise non-isogenous and not isogenous "
                                "to any varying factor");
                    return std::pair{m, b};
                },
                [&] (const UnitarySpec & u) {
                    ambient = dim_space(ModuliSpace::unitary(u.p, u.q));
                    auto m = mdec_codim_unitary_fixedpart(u.elliptic_count, u.p, u.q);
                    auto b = boundary_codim(ModuliSpace::unitary(u.p, u.q));
                    theorem_d_max = closed_form_unitary_codim(u.p, u.q) - 1;
                    notes.push_back("boundary codimension " + to_string(b.value) + " is a lower bound");
                    if (u.elliptic_count > 0)
                        notes.push_back("assumed: the fixed elliptic curves are pairwise non-isogenous without CM");
                    return std::pair{m, b};
                }
            }, spec.flavor);

        Dim budget = std::min(mdec.value, boundary.value);
        Dim d_max = budget - 1;
        bool agrees = d_max == theorem_d_max;

        for (auto & n : mdec.notes)
            notes.push_back(n);
        if (! agrees)
            notes.push_back("d_max " + to_string(d_max) + " differs from the family theorem's bound "
                    + to_string(theorem_d_max) + " (multiply-decomposable locus of codimension "
                    + to_string(mdec.value) + " at " + mdec.witness.label() + ")");
        if (d_max < 1)
            notes.push_back("infeasible: no positive-dimensional complete base fits the budget");

        auto margin = hecke_margin(spec, notes);
        auto monodromy_dim = group_dim(monodromy);
        return PlanReport{spec, spec.total_g(), ambient, std::move(mdec), boundary, budget, d_max,
            std::move(monodromy), monodromy_dim, margin, d_max >= 1, theorem_d_max, agrees, std::move(notes)};
    }

    auto realize_group(const GroupExpr & target, int g_prime, const string & field_label) -> FamilySpec
    {
        auto & atoms = target.atoms();
        bool all_sp = std::all_of(atoms.begin(), atoms.end(),
                [] (const GroupAtom & a) { return std::holds_alternative<SpAtom>(a); });

        if (all_sp) {
            vector<int> ranks;
            for (auto & a : atoms) {
                int k = std::get<SpAtom>(a).rank;
                if (k < 2)
                    throw Error{ErrorKind::RankTooSmall, atom_label(a) + " has rank " + to_string(k) + " < 2"};
                ranks.push_back(k);
            }
            int needed = std::accumulate(ranks.begin(), ranks.end(), 0);
            if (g_prime < needed)
                throw Error{ErrorKind::TargetTooLarge, target.label() + " needs g' >= " + to_string(needed)
                    + ", got " + to_string(g_prime)};
            return FamilySpec::symplectic(vector<int>(g_prime - needed, 1), ranks);
        }

        if (atoms.size() != 1)
            throw Error{ErrorKind::UnsupportedTarget, target.label()
                + ": only products of Sp or a single SU-form can be realized"};

        auto & su = std::get<SUFormAtom>(atoms.front());
        int span = su.p + su.q + 1;
        if (span < 5 || span > g_prime)
            throw Error{ErrorKind::UnitaryBoundViolated, target.label() + " needs 5 <= p+q+1 <= g', got p+q+1="
                + to_string(span) + ", g'=" + to_string(g_prime)};
        return FamilySpec::unitary(g_prime - su.p - su.q, su.p, su.q, field_label);
    }

    auto kodaira_budget(int fiber_genus) -> KodairaReport
    {
        if (fiber_genus < 3)
            throw Error{ErrorKind::GenusTooSmall, "fiber genus " + to_string(fiber_genus) + " < 3"};

        auto spec = FamilySpec::symplectic({1}, {fiber_genus - 1});
        auto mdec = mdec_codim_fixedpart(DecompositionShape{{1}, {fiber_genus - 1}}).value;
        auto boundary = boundary_codim(ModuliSpace::siegel(fiber_genus - 1));
        auto torelli = torelli_codim(fiber_genus);
        auto post = std::min(mdec, boundary.value) - torelli;
        bool feasible = post >= 2;

        vector<string> notes;
        notes.push_back("a complete curve needs a post-Torelli budget of at least 2");
        if (torelli > 0)
            notes.push_back("hyperelliptic-locus double cover assumed to resolve the Torelli map; not computed");
        if (! feasible)
            notes.push_back("infeasible under this budget arithmetic; this is a limit of the method, not a proof "
                    "that no such fibration exists");

        return KodairaReport{fiber_genus, spec, mdec, boundary, torelli, mdec - torelli, boundary.value - torelli,
            post, feasible, GroupExpr::symplectic({fiber_genus - 1}), std::move(notes)};
    }

    auto field_kind_name(FieldKind kind) -> string
    {
        switch (kind) {
            case FieldKind::Rational:           return "Q";
            case FieldKind::ImaginaryQuadratic: return "imaginary_quadratic";
            case FieldKind::RealQuadratic:      return "real_quadratic";
            case FieldKind::Other:              return "other";
        }
        return "other";
    }

    EndAlgebra::EndAlgebra(vector<EndFactor> factors) :
        _factors(std::move(factors))
    {
        if (_factors.empty())
            throw Error{ErrorKind::InvalidShape, "endomorphism algebra with no factors"};
        for (auto & f : _factors) {
            if (f.multiplicity < 1)
                throw Error{ErrorKind::InvalidShape, "factor multiplicity " + to_string(f.multiplicity) + " < 1"};
            if (f.kind != FieldKind::Rational && f.label.empty())
                throw Error{ErrorKind::InvalidShape, "non-rational factor needs a field label"};
        }
    }

    auto polarized_isogeny_closed(const EndAlgebra & algebra) -> bool
    {
        return std::all_of(algebra.factors().begin(), algebra.factors().end(), [] (const EndFactor & f) {
                return f.multiplicity == 1 && (f.kind == FieldKind::Rational || f.kind == FieldKind::ImaginaryQuadratic);
                });
    }

    auto ns_rank(const EndAlgebra & algebra) -> int
    {
        if (! polarized_isogeny_closed(algebra))
            throw Error{ErrorKind::RuleNotProven, "Neron-Severi rank is only computed for products of Q and "
                "imaginary quadratic fields with multiplicity one"};
        // the Rosati-fixed part of each such field is Q
        return static_cast<int>(algebra.factors().size());
    }
}
