#pragma once

#include <modstrata/error.hh>
#include <modstrata/moduli.hh>
#include <modstrata/partitions.hh>

#include <utility>
#include <vector>

namespace modstrata
{
    /// The stabilizer of a decomposition type lambda, a product of Sp(2l) over block sizes l.
    struct GammaSubgroup
    {
        SetPartition partition;
        GroupExpr group;
        Dim dim;
    };

    auto gamma_subgroup(const SetPartition & lambda) -> GammaSubgroup;
    auto gamma_dim(const SetPartition & lambda) -> Dim;

    /// dim Sp(2g) = 2g^2 + g.
    auto sp_dim(int g) -> Dim;

    /**
     * dim of the product Gamma_lambda Gamma_mu, i.e. dim Gamma_lambda + dim Gamma_mu minus the
     * dimension of their intersection, which is the stabilizer of the common refinement. Computed
     * from the partitions and again from their intersection matrix; the two must agree.
     */
    auto product_dim(const SetPartition & lambda, const SetPartition & mu) -> Dim;

    /// The same quantity from a matrix type: row-sum, column-sum and entry contributions.
    auto product_dim(const IntersectionMatrix & m) -> Dim;

    /// 2g^2 + g - 4, the claimed maximum of product_dim over proper pairs.
    auto expected_max_product_dim(int g) -> Dim;

    /// {1..g-1 | g} and {1 | 2..g}; for g = 2 both are {1|2}.
    auto two_block_witness(int g) -> std::pair<SetPartition, SetPartition>;

    struct MaxProduct
    {
        int g;
        Dim value;
        IntersectionMatrix witness;                   ///< smallest maximizing matrix type
        std::vector<IntersectionMatrix> maximizers;   ///< all of them, sorted, when requested
        bool exhaustive;                              ///< false when bound-pruned growth was used
    };

    /// Grounds up to this size are maximized over the full list of matrix types.
    inline constexpr int exhaustive_matrix_limit = 8;

    /**
     * Maximizes product_dim over matrix types with total g. Beyond exhaustive_matrix_limit the
     * types are grown one element at a time and a partial type is dropped once its value plus the
     * largest possible remaining increments cannot reach the two-block witness.
     */
    auto max_product_dim(int g, bool all_maximizers = false) -> MaxProduct;

    /// Direct maximization over all ordered pairs of proper partitions.
    auto max_product_dim_by_pairs(int g) -> Dim;

    /// dim Sp(2g) minus the largest dim Gamma_mu Gamma_lambda over proper mu.
    auto gamma_gamma_codim(int g, const SetPartition & lambda) -> Dim;

    /// The same, by trying every proper mu.
    auto gamma_gamma_codim_exhaustive(int g, const SetPartition & lambda) -> Dim;
}
