#pragma once

#include <modstrata/error.hh>

#include <algorithm>
#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace modstrata
{
    /**
     * A partition of {1,...,g} into disjoint nonempty blocks.
     *
     * Stored as a restricted growth string: labels()[i] is the 0-based index of the block that holds
     * element i+1, and blocks are numbered in order of their least element. That numbering is the
     * canonical block order, so two partitions are equal exactly when their label vectors are.
     * Every public interface that talks about elements is 1-based.
     */
    class SetPartition
    {
        public:
            /// Validates disjointness, nonemptiness and coverage of {1,...,g}.
            static auto from_blocks(int ground_size, const std::vector<std::vector<int>> & blocks) -> SetPartition;

            /// Any labelling (not necessarily restricted growth); blocks are renumbered canonically.
            static auto from_labels(std::span<const int> labels) -> SetPartition;

            static auto singletons(int ground_size) -> SetPartition;
            static auto single_block(int ground_size) -> SetPartition;

            /// Accepts "{12|3}", "12|3" and, for grounds of ten or more, "{1,2|3}".
            static auto parse(std::string_view text) -> SetPartition;

            auto ground_size() const noexcept -> int { return static_cast<int>(_labels.size()); }
            auto block_count() const noexcept -> int { return _block_count; }
            auto is_proper() const noexcept -> bool { return _block_count >= 2; }

            auto labels() const noexcept -> const std::vector<int> & { return _labels; }
            auto block_of(int element) const -> int;
            auto blocks() const -> std::vector<std::vector<int>>;
            auto block_sizes() const -> std::vector<int>;

            /// True when every block of *this lies inside a block of other.
            auto refines(const SetPartition & other) const -> bool;

            /// Adjoins element g+1 to block `block`; block == block_count() opens a new singleton.
            auto insert_next(int block) const -> SetPartition;

            auto to_string() const -> std::string;

            auto operator== (const SetPartition &) const -> bool = default;
            auto operator<=> (const SetPartition &) const = default;

        private:
            SetPartition(std::vector<int> labels, int block_count);

            std::vector<int> _labels;
            int _block_count = 0;
    };

    /**
     * The block-intersection profile of a pair of partitions: entry (j,k) counts the elements that
     * lie in block j of the first partition and block k of the second.
     *
     * Always held in canonical form. Rows are ordered by non-increasing row sum and columns by
     * non-increasing column sum; among all row and column orders allowed by that, the one whose
     * row-major entry sequence is lexicographically largest is kept. Two matrices that differ by a
     * row permutation and a column permutation therefore compare equal.
     */
    class IntersectionMatrix
    {
        public:
            /// Validates (no zero row, no zero column, non-negative entries) and canonicalizes.
            static auto canonical(int rows, int cols, std::vector<int> entries) -> IntersectionMatrix;

            /// Accepts "[[1,1],[1,0]]".
            static auto parse(std::string_view text) -> IntersectionMatrix;

            auto rows() const noexcept -> int { return _rows; }
            auto cols() const noexcept -> int { return _cols; }
            auto total() const noexcept -> int { return _total; }
            auto at(int row, int col) const -> int { return _entries[row * _cols + col]; }
            auto entries() const noexcept -> const std::vector<int> & { return _entries; }

            auto row_sums() const -> std::vector<int>;
            auto col_sums() const -> std::vector<int>;

            auto to_string() const -> std::string;

            auto operator== (const IntersectionMatrix &) const -> bool = default;
            auto operator<=> (const IntersectionMatrix &) const = default;

        private:
            IntersectionMatrix(int rows, int cols, int total, std::vector<int> entries);

            int _rows = 0;
            int _cols = 0;
            int _total = 0;
            std::vector<int> _entries;
    };

    /// Canonical row-major entries of a rows x cols matrix; see IntersectionMatrix.
    auto canonical_entries(int rows, int cols, std::span<const int> entries) -> std::vector<int>;

    /// All partitions of {1,...,g} with at least two blocks, in restricted-growth-string order.
    auto enumerate_proper_partitions(int g) -> std::vector<SetPartition>;

    /// Calls fn on every partition of {1,...,g} (including the single block) without storing them.
    template <typename Fn_>
    auto for_each_partition(int g, Fn_ && fn) -> void;

    /// Common refinement: blocks are the nonempty pairwise intersections.
    auto meet(const SetPartition & lambda, const SetPartition & mu) -> SetPartition;

    auto intersection_matrix(const SetPartition & lambda, const SetPartition & mu) -> IntersectionMatrix;

    /// Every canonical matrix reachable from m by adding one element: one more in an existing
    /// cell, a new row, a new column, or a new row and column meeting in a new cell.
    auto matrix_children(const IntersectionMatrix & m) -> std::vector<IntersectionMatrix>;

    /// All canonical matrix types with total g, at least two rows and at least two columns,
    /// sorted ascending. These are exactly the profiles of pairs of proper partitions.
    auto enumerate_matrix_types(int g) -> std::vector<IntersectionMatrix>;

    template <typename Fn_>
    auto for_each_partition(int g, Fn_ && fn) -> void
    {
        if (g < 1)
            throw Error{ErrorKind::GroundTooSmall, "ground size must be positive"};

        // restricted growth strings: labels[0] = 0, labels[i] <= 1 + max(labels[0..i-1])
        std::vector<int> labels(g, 0), prefix_max(g, 0);
        while (true) {
            fn(std::span<const int>{labels});

            int i = g - 1;
            while (i > 0 && labels[i] == prefix_max[i - 1] + 1)
                --i;
            if (i == 0)
                return;
            ++labels[i];
            prefix_max[i] = std::max(prefix_max[i - 1], labels[i]);
            for (int j = i + 1 ; j < g ; ++j) {
                labels[j] = 0;
                prefix_max[j] = prefix_max[i];
            }
        }
    }
}
