#include <modstrata/hecke_groups.hh>

#include <algorithm>
#include <set>

using std::pair;
using std::set;
using std::to_string;
using std::vector;

namespace modstrata
{
    namespace
    {
        auto block_dim(Dim l) -> Dim
        {
            return atom_dim(SpAtom{static_cast<int>(l)});
        }

        auto check_ground(int g) -> void
        {
            if (g < 2)
                throw Error{ErrorKind::GroundTooSmall, "no proper partition of a ground set of size " + to_string(g)};
        }

        // Largest possible gain from adding elements t+1, ..., g one at a time: adding an element
        // to a type of total h-1 raises product_dim by at most 4(h-1)+3.
        auto completion_bound(int t, int g) -> Dim
        {
            Dim bound = 0;
            for (int h = t + 1 ; h <= g ; ++h)
                bound += 4 * Dim{h - 1} + 3;
            return bound;
        }
    }

    auto gamma_subgroup(const SetPartition & lambda) -> GammaSubgroup
    {
        auto group = GroupExpr::symplectic(lambda.block_sizes());
        auto dim = group_dim(group);
        return GammaSubgroup{lambda, std::move(group), dim};
    }

    auto gamma_dim(const SetPartition & lambda) -> Dim
    {
        Dim total = 0;
        for (int l : lambda.block_sizes())
            total += block_dim(l);
        return total;
    }

    auto sp_dim(int g) -> Dim
    {
        return group_dim(GroupExpr::symplectic({g}));
    }

    auto product_dim(const IntersectionMatrix & m) -> Dim
    {
        Dim total = 0;
        for (int l : m.row_sums())
            total += block_dim(l);
        for (int l : m.col_sums())
            total += block_dim(l);
        for (int e : m.entries())
            if (e != 0)
                total -= block_dim(e);
        return total;
    }

    auto product_dim(const SetPartition & lambda, const SetPartition & mu) -> Dim
    {
        auto common = meet(lambda, mu);
        Dim by_partitions = gamma_dim(lambda) + gamma_dim(mu) - gamma_dim(common);
        Dim by_matrix = product_dim(intersection_matrix(lambda, mu));
        if (by_partitions != by_matrix)
            throw Error{ErrorKind::InternalMismatch, "product_dim of " + lambda.to_string() + ", " + mu.to_string()
                + ": " + to_string(by_partitions) + " from partitions, " + to_string(by_matrix) + " from matrix"};
        return by_partitions;
    }

    auto expected_max_product_dim(int g) -> Dim
    {
        return 2 * Dim{g} * g + g - 4;
    }

    auto two_block_witness(int g) -> pair<SetPartition, SetPartition>
    {
        check_ground(g);
        vector<int> first(g, 0), second(g, 1);
        first[g - 1] = 1;
        second[0] = 0;
        return {SetPartition::from_labels(first), SetPartition::from_labels(second)};
    }

    auto max_product_dim(int g, bool all_maximizers) -> MaxProduct
    {
        check_ground(g);

        vector<IntersectionMatrix> candidates;
        bool exhaustive = g <= exhaustive_matrix_limit;
        if (exhaustive)
            candidates = enumerate_matrix_types(g);
        else {
            auto [lambda, mu] = two_block_witness(g);
            Dim floor = product_dim(lambda, mu);

            set<IntersectionMatrix> level{IntersectionMatrix::canonical(1, 1, {1})};
            for (int t = 2 ; t <= g ; ++t) {
                set<IntersectionMatrix> next;
                for (auto & m : level)
                    for (auto & child : matrix_children(m))
                        if (product_dim(child) + completion_bound(t, g) >= floor)
                            next.insert(std::move(child));
                level = std::move(next);
            }
            for (auto & m : level)
                if (m.rows() >= 2 && m.cols() >= 2)
                    candidates.push_back(m);
        }

        Dim best = -1;
        vector<IntersectionMatrix> maximizers;
        for (auto & m : candidates) {
            Dim v = product_dim(m);
            if (v > best) {
                best = v;
                maximizers.assign(1, m);
            }
            else if (v == best)
                maximizers.push_back(m);
        }
        std::sort(maximizers.begin(), maximizers.end());

        MaxProduct result{g, best, maximizers.front(), {}, exhaustive};
        if (all_maximizers)
            result.maximizers = std::move(maximizers);
        return result;
    }

    auto max_product_dim_by_pairs(int g) -> Dim
    {
        auto partitions = enumerate_proper_partitions(g);
        vector<Dim> dims;
        dims.reserve(partitions.size());
        for (auto & p : partitions)
            dims.push_back(gamma_dim(p));

        Dim best = -1;
        for (size_t a = 0 ; a < partitions.size() ; ++a)
            for (size_t b = 0 ; b < partitions.size() ; ++b)
                best = std::max(best, dims[a] + dims[b] - gamma_dim(meet(partitions[a], partitions[b])));
        return best;
    }

    auto gamma_gamma_codim(int g, const SetPartition & lambda) -> Dim
    {
        check_ground(g);
        if (lambda.ground_size() != g)
            throw Error{ErrorKind::GroundMismatch, "partition " + lambda.to_string() + " is not of {1.." + to_string(g) + "}"};
        if (! lambda.is_proper())
            throw Error{ErrorKind::NotProper, "partition " + lambda.to_string() + " has a single block"};

        // product_dim(mu, lambda) = dim Gamma_lambda + 4 W(mu), where W counts unordered pairs
        // lying in one block of mu but in different blocks of lambda. Merging blocks of mu never
        // lowers W, so the best proper mu has two blocks {S, complement}, and W depends only on
        // how many elements of each lambda block fall in S.
        auto sizes = lambda.block_sizes();
        Dim cross_pairs = Dim{g} * g;
        for (int l : sizes)
            cross_pairs -= Dim{l} * l;
        cross_pairs /= 2;

        vector<int> taken(sizes.size(), 0);
        Dim least_lost = -1;
        while (true) {
            size_t i = 0;
            while (i < taken.size() && taken[i] == sizes[i])
                taken[i++] = 0;
            if (i == taken.size())
                break;
            ++taken[i];

            Dim s = 0, same_block = 0;
            for (size_t j = 0 ; j < sizes.size() ; ++j) {
                s += taken[j];
                same_block += Dim{taken[j]} * (sizes[j] - taken[j]);
            }
            if (s == g)
                continue;
            Dim lost = s * (g - s) - same_block;
            if (least_lost < 0 || lost < least_lost)
                least_lost = lost;
        }

        return sp_dim(g) - (gamma_dim(lambda) + 4 * (cross_pairs - least_lost));
    }

    auto gamma_gamma_codim_exhaustive(int g, const SetPartition & lambda) -> Dim
    {
        check_ground(g);
        if (lambda.ground_size() != g)
            throw Error{ErrorKind::GroundMismatch, "partition " + lambda.to_string() + " is not of {1.." + to_string(g) + "}"};
        if (! lambda.is_proper())
            throw Error{ErrorKind::NotProper, "partition " + lambda.to_string() + " has a single block"};

        Dim lambda_dim = gamma_dim(lambda);
        Dim best = -1;
        for (auto & mu : enumerate_proper_partitions(g))
            best = std::max(best, gamma_dim(mu) + lambda_dim - gamma_dim(meet(mu, lambda)));
        return sp_dim(g) - best;
    }
}
