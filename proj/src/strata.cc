#include <modstrata/strata.hh>
#include <modstrata/moduli.hh>
#include <modstrata/detail/overloaded.hh>

#include <algorithm>

using std::optional;
using std::span;
using std::string;
using std::to_string;
using std::vector;

namespace modstrata
{
    using detail::Overloaded;

    namespace
    {
        auto siegel(int g) -> Dim
        {
            return dim_space(ModuliSpace::siegel(g));
        }

        auto unitary(int p, int q) -> Dim
        {
            return dim_space(ModuliSpace::unitary(p, q));
        }

        auto make_stratum(StratumKind kind, Dim ambient, Dim raw_codim, Dim closed_codim) -> Stratum
        {
            if (raw_codim != closed_codim)
                throw Error{ErrorKind::InternalMismatch, stratum_label(kind) + ": raw codimension "
                    + to_string(raw_codim) + " but closed form " + to_string(closed_codim)};
            if (raw_codim < 0)
                throw Error{ErrorKind::InternalMismatch, stratum_label(kind) + ": negative codimension"};
            return Stratum{kind, ambient, ambient - raw_codim, raw_codim};
        }

        auto check_varying(span<const int> varying_dims) -> vector<int>
        {
            if (varying_dims.empty())
                throw Error{ErrorKind::InvalidShape, "no varying factors"};
            vector<int> sorted(varying_dims.begin(), varying_dims.end());
            std::sort(sorted.begin(), sorted.end());
            if (sorted.front() < 2)
                throw Error{ErrorKind::VaryingDimTooSmall, "varying dim " + to_string(sorted.front()) + " < 2"};
            return sorted;
        }

        auto b_strata(const vector<int> & gs, Dim ambient) -> vector<Stratum>
        {
            vector<Stratum> result;
            int s = static_cast<int>(gs.size());
            for (int i = 0 ; i < s ; ++i)
                for (int d = 1 ; 2 * d <= gs[i] ; ++d) {
                    Dim raw = siegel(gs[i]) - siegel(gs[i] - 2 * d) - siegel(d);
                    Dim closed = exact_div(Dim{d} * (4 * gs[i] + 1 - 5 * d), 2, "d(4g+1-5d)/2");
                    result.push_back(make_stratum(BDiag{i + 1, d}, ambient, raw, closed));
                }
            for (int i = 0 ; i < s ; ++i)
                for (int j = i + 1 ; j < s ; ++j)
                    for (int d = 1 ; d <= std::min(gs[i], gs[j]) ; ++d) {
                        Dim raw = siegel(gs[i]) + siegel(gs[j])
                            - siegel(gs[i] - d) - siegel(d) - siegel(gs[j] - d);
                        Dim closed = exact_div(Dim{d} * (2 * gs[i] + 2 * gs[j] + 1 - 3 * d), 2,
                                "d(2g_i+2g_j+1-3d)/2");
                        result.push_back(make_stratum(BOffDiag{i + 1, j + 1, d}, ambient, raw, closed));
                    }
            return result;
        }

        auto minimum(const vector<Stratum> & strata) -> const Stratum &
        {
            // first minimal stratum in enumeration order
            return *std::min_element(strata.begin(), strata.end(),
                    [] (const Stratum & a, const Stratum & b) { return a.codim < b.codim; });
        }

        auto fixed_codim_term(int x, int g) -> Dim
        {
            return exact_div(Dim{x} * (2 * g + 1 - x), 2, "x(2g+1-x)/2");
        }
    }

    auto stratum_kind_name(const StratumKind & kind) -> string
    {
        return std::visit(Overloaded{
                [] (const BOffDiag &) { return string{"B_offdiag"}; },
                [] (const BDiag &) { return string{"B_diag"}; },
                [] (const CFixed &) { return string{"C"}; },
                [] (const UnitaryCM &) { return string{"UnitaryCM"}; },
                [] (const UnitaryNonCM &) { return string{"UnitaryNonCM"}; }
            }, kind);
    }

    auto stratum_label(const StratumKind & kind) -> string
    {
        auto params = std::visit(Overloaded{
                [] (const BOffDiag & b) { return to_string(b.i) + "," + to_string(b.j) + "," + to_string(b.d); },
                [] (const BDiag & b) { return to_string(b.i) + "," + to_string(b.d); },
                [] (const CFixed & c) { return to_string(c.i) + "," + to_string(c.j); },
                [] (const UnitaryCM & u) { return to_string(u.k) + "," + to_string(u.l); },
                [] (const UnitaryNonCM & u) { return to_string(u.k); }
            }, kind);
        return stratum_kind_name(kind) + "(" + params + ")";
    }

    DecompositionShape::DecompositionShape(vector<int> fixed_dims, vector<int> varying_dims) :
        _fixed(std::move(fixed_dims)),
        _varying(std::move(varying_dims))
    {
        std::sort(_fixed.begin(), _fixed.end());
        std::sort(_varying.begin(), _varying.end());
        if (_varying.empty())
            throw Error{ErrorKind::InvalidShape, "no varying factors"};
        if (_varying.front() < 2)
            throw Error{ErrorKind::InvalidShape, "varying dim " + to_string(_varying.front()) + " < 2"};
        if (! _fixed.empty() && _fixed.front() < 1)
            throw Error{ErrorKind::InvalidShape, "fixed dim " + to_string(_fixed.front()) + " < 1"};
    }

    auto DecompositionShape::total() const -> int
    {
        int sum = 0;
        for (int d : _fixed)
            sum += d;
        for (int d : _varying)
            sum += d;
        return sum;
    }

    auto strata_of_product(span<const int> varying_dims) -> vector<Stratum>
    {
        auto gs = check_varying(varying_dims);
        Dim ambient = 0;
        for (int g : gs)
            ambient += siegel(g);
        return b_strata(gs, ambient);
    }

    auto closed_form_product_codim(span<const int> varying_dims) -> Dim
    {
        auto gs = check_varying(varying_dims);
        return 2 * Dim{gs.front()} - 2;
    }

    auto mdec_codim_product(span<const int> varying_dims) -> MinCodim
    {
        auto strata = strata_of_product(varying_dims);
        auto & witness = minimum(strata);
        Dim closed = closed_form_product_codim(varying_dims);
        return MinCodim{witness.codim, witness, closed, true, witness.codim == closed, {}};
    }

    auto strata_of_fixedpart(const DecompositionShape & shape) -> vector<Stratum>
    {
        auto & gv = shape.varying_dims();
        auto & gc = shape.fixed_dims();
        Dim ambient = 0;
        for (int g : gv)
            ambient += siegel(g);

        auto result = b_strata(gv, ambient);
        for (size_t i = 0 ; i < gv.size() ; ++i)
            for (size_t j = 0 ; j < gc.size() ; ++j) {
                // A_i ~ A_{c,j} x A_i' needs room for A_i'
                if (gc[j] > gv[i])
                    continue;
                Dim raw = siegel(gv[i]) - siegel(gv[i] - gc[j]);
                result.push_back(make_stratum(CFixed{static_cast<int>(i) + 1, static_cast<int>(j) + 1},
                            ambient, raw, fixed_codim_term(gc[j], gv[i])));
            }
        return result;
    }

    auto closed_form_fixedpart_codim(const DecompositionShape & shape) -> Dim
    {
        int g1 = shape.varying_dims().front();
        Dim value = 2 * Dim{g1} - 2;
        if (! shape.fixed_dims().empty()) {
            value = std::min(value, fixed_codim_term(shape.fixed_dims().front(), g1));
            value = std::min(value, fixed_codim_term(shape.fixed_dims().back(), g1));
        }
        return value;
    }

    auto mdec_codim_fixedpart(const DecompositionShape & shape) -> MinCodim
    {
        auto strata = strata_of_fixedpart(shape);
        auto & witness = minimum(strata);
        Dim closed = closed_form_fixedpart_codim(shape);
        int g1 = shape.varying_dims().front();

        bool applies = shape.fixed_dims().empty() || shape.fixed_dims().back() <= g1;
        MinCodim result{witness.codim, witness, closed, applies, ! applies || witness.codim == closed, {}};

        if (! applies)
            result.notes.push_back("fixed dim " + to_string(shape.fixed_dims().back())
                    + " exceeds smallest varying dim " + to_string(g1)
                    + ": some C-strata are empty, closed form " + to_string(closed)
                    + " not asserted, enumerated minimum " + to_string(witness.codim) + " is authoritative");
        if (witness.codim < g1) {
            result.agrees = false;
            result.notes.push_back("minimum codimension " + to_string(witness.codim)
                    + " is below the smallest varying dim " + to_string(g1));
        }
        return result;
    }

    auto strata_of_unitary(int p, int q) -> vector<Stratum>
    {
        if (p < 1 || q < 1)
            throw Error{ErrorKind::InvalidShape, "unitary signature (" + to_string(p) + "," + to_string(q)
                + ") needs p, q >= 1"};

        Dim ambient = unitary(p, q);
        vector<Stratum> result;
        for (int k = 0 ; k <= p ; k += 2)
            for (int l = 0 ; l <= q ; l += 2) {
                if (k + l < 2)
                    continue;
                Dim raw = ambient - (unitary(k / 2, l / 2) + unitary(p - k, q - l));
                Dim closed = Dim{p} * l + Dim{k} * q - exact_div(5 * Dim{k} * l, 4, "5kl/4");
                result.push_back(make_stratum(UnitaryCM{k, l}, ambient, raw, closed));
            }
        for (int k = 1 ; k <= std::min(p, q) ; ++k) {
            Dim raw = ambient - (siegel(k) + unitary(p - k, q - k));
            Dim closed = exact_div(Dim{k} * (2 * p + 2 * q - 3 * k - 1), 2, "k(2p+2q-3k-1)/2");
            result.push_back(make_stratum(UnitaryNonCM{k}, ambient, raw, closed));
        }
        return result;
    }

    auto closed_form_unitary_codim(int p, int q) -> Dim
    {
        return std::min({2 * Dim{p}, Dim{p} + q - 2, 2 * Dim{q}});
    }

    auto mdec_codim_unitary(int p, int q) -> MinCodim
    {
        auto strata = strata_of_unitary(p, q);
        auto & witness = minimum(strata);
        Dim closed = closed_form_unitary_codim(p, q);
        bool applies = p + q >= 3;
        MinCodim result{witness.codim, witness, closed, applies, ! applies || witness.codim == closed, {}};

        result.notes.push_back("non-CM strata: dimension taken as k(k+1)/2 + (p-k)(q-k); the closed display "
                "pq - k(2p+2q-3k-1)/4 halves the correction and is not used");

        // the largest CM stratum should have k+l = 2; record when it does not
        const Stratum * largest_cm = nullptr;
        for (auto & s : strata)
            if (std::holds_alternative<UnitaryCM>(s.kind) && (! largest_cm || s.stratum_dim > largest_cm->stratum_dim))
                largest_cm = &s;
        if (largest_cm) {
            auto & cm = std::get<UnitaryCM>(largest_cm->kind);
            if (cm.k + cm.l > 2)
                result.notes.push_back("largest CM stratum is " + largest_cm->label() + " (dim "
                        + to_string(largest_cm->stratum_dim) + "), not one with k+l = 2");
        }

        if (applies && ! result.agrees)
            result.notes.push_back("enumerated minimum " + to_string(witness.codim) + " at " + witness.label()
                    + " disagrees with min(2p, p+q-2, 2q) = " + to_string(closed));
        return result;
    }

    auto mdec_codim_unitary_fixedpart(int r, int p, int q) -> MinCodim
    {
        if (r < 0)
            throw Error{ErrorKind::InvalidShape, "negative number of elliptic factors"};
        return mdec_codim_unitary(p, q);
    }
}
