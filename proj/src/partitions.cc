#include <modstrata/partitions.hh>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <utility>

using std::pair;
using std::set;
using std::size_t;
using std::span;
using std::string;
using std::string_view;
using std::vector;

namespace modstrata
{
    SetPartition::SetPartition(vector<int> labels, int block_count) :
        _labels(std::move(labels)),
        _block_count(block_count)
    {
    }

    auto SetPartition::from_labels(span<const int> labels) -> SetPartition
    {
        if (labels.empty())
            throw Error{ErrorKind::GroundTooSmall, "ground size must be positive"};

        vector<pair<int, int>> renumbered;  // (original label, canonical label)
        vector<int> canonical;
        canonical.reserve(labels.size());
        for (int label : labels) {
            auto it = std::find_if(renumbered.begin(), renumbered.end(),
                    [&] (const auto & p) { return p.first == label; });
            if (it == renumbered.end()) {
                renumbered.emplace_back(label, static_cast<int>(renumbered.size()));
                canonical.push_back(renumbered.back().second);
            }
            else
                canonical.push_back(it->second);
        }
        return SetPartition{std::move(canonical), static_cast<int>(renumbered.size())};
    }

    auto SetPartition::from_blocks(int ground_size, const vector<vector<int>> & blocks) -> SetPartition
    {
        if (ground_size < 1)
            throw Error{ErrorKind::GroundTooSmall, "ground size must be positive"};

        vector<int> labels(ground_size, -1);
        for (size_t b = 0 ; b < blocks.size() ; ++b) {
            if (blocks[b].empty())
                throw Error{ErrorKind::MalformedPartition, "empty block"};
            for (int element : blocks[b]) {
                if (element < 1 || element > ground_size)
                    throw Error{ErrorKind::MalformedPartition, "element " + std::to_string(element)
                        + " outside {1.." + std::to_string(ground_size) + "}"};
                if (labels[element - 1] != -1)
                    throw Error{ErrorKind::MalformedPartition, "element " + std::to_string(element) + " appears twice"};
                labels[element - 1] = static_cast<int>(b);
            }
        }
        for (int i = 0 ; i < ground_size ; ++i)
            if (labels[i] == -1)
                throw Error{ErrorKind::MalformedPartition, "element " + std::to_string(i + 1) + " is not covered"};

        return from_labels(labels);
    }

    auto SetPartition::singletons(int ground_size) -> SetPartition
    {
        if (ground_size < 1)
            throw Error{ErrorKind::GroundTooSmall, "ground size must be positive"};
        vector<int> labels(ground_size);
        std::iota(labels.begin(), labels.end(), 0);
        return SetPartition{std::move(labels), ground_size};
    }

    auto SetPartition::single_block(int ground_size) -> SetPartition
    {
        if (ground_size < 1)
            throw Error{ErrorKind::GroundTooSmall, "ground size must be positive"};
        return SetPartition{vector<int>(ground_size, 0), 1};
    }

    auto SetPartition::parse(string_view text) -> SetPartition
    {
        string body;
        for (char c : text)
            if (! std::isspace(static_cast<unsigned char>(c)))
                body.push_back(c);
        if (body.size() >= 2 && body.front() == '{' && body.back() == '}')
            body = body.substr(1, body.size() - 2);
        if (body.empty())
            throw Error{ErrorKind::MalformedPartition, "empty partition text"};

        bool with_commas = body.find(',') != string::npos;
        vector<vector<int>> blocks(1);
        string number;
        auto flush_number = [&] {
            if (! number.empty()) {
                blocks.back().push_back(std::stoi(number));
                number.clear();
            }
        };
        for (char c : body) {
            if (c == '|') {
                flush_number();
                blocks.emplace_back();
            }
            else if (c == ',')
                flush_number();
            else if (std::isdigit(static_cast<unsigned char>(c))) {
                if (with_commas)
                    number.push_back(c);
                else
                    blocks.back().push_back(c - '0');
            }
            else
                throw Error{ErrorKind::MalformedPartition, "unexpected character '" + string(1, c) + "'"};
        }
        flush_number();

        int ground_size = 0;
        for (auto & b : blocks)
            ground_size += static_cast<int>(b.size());
        return from_blocks(ground_size, blocks);
    }

    auto SetPartition::block_of(int element) const -> int
    {
        return _labels.at(element - 1);
    }

    auto SetPartition::blocks() const -> vector<vector<int>>
    {
        vector<vector<int>> result(_block_count);
        for (int i = 0 ; i < ground_size() ; ++i)
            result[_labels[i]].push_back(i + 1);
        return result;
    }

    auto SetPartition::block_sizes() const -> vector<int>
    {
        vector<int> sizes(_block_count, 0);
        for (int label : _labels)
            ++sizes[label];
        return sizes;
    }

    auto SetPartition::refines(const SetPartition & other) const -> bool
    {
        if (other.ground_size() != ground_size())
            throw Error{ErrorKind::GroundMismatch, "partitions of different ground sets"};
        vector<int> image(_block_count, -1);
        for (int i = 0 ; i < ground_size() ; ++i) {
            int & target = image[_labels[i]];
            if (target == -1)
                target = other._labels[i];
            else if (target != other._labels[i])
                return false;
        }
        return true;
    }

    auto SetPartition::insert_next(int block) const -> SetPartition
    {
        if (block < 0 || block > _block_count)
            throw Error{ErrorKind::MalformedPartition, "no block " + std::to_string(block) + " to extend"};
        auto labels = _labels;
        labels.push_back(block);
        return SetPartition{std::move(labels), std::max(_block_count, block + 1)};
    }

    auto SetPartition::to_string() const -> string
    {
        bool with_commas = ground_size() >= 10;
        string result = "{";
        auto bs = blocks();
        for (size_t b = 0 ; b < bs.size() ; ++b) {
            if (b != 0)
                result += "|";
            for (size_t i = 0 ; i < bs[b].size() ; ++i) {
                if (with_commas && i != 0)
                    result += ",";
                result += std::to_string(bs[b][i]);
            }
        }
        return result + "}";
    }

    namespace
    {
        // Depth-first search for the lexicographically largest row-major arrangement. Columns are
        // kept as an ordered list of cells; columns sharing a cell agree on every row placed so
        // far, so their relative order never matters. Only rows of the largest remaining row sum
        // may be placed next, and among those only rows whose best image is maximal.
        struct CanonicalSearch
        {
            int rows;
            int cols;
            span<const int> m;
            vector<int> row_sum;

            vector<int> current;
            vector<int> best;
            bool have_best = false;

            auto value(int r, int c) const -> int { return m[r * cols + c]; }

            auto image(int r, const vector<vector<int>> & cells) const -> vector<int>
            {
                vector<int> result;
                result.reserve(cols);
                for (auto & cell : cells) {
                    auto start = result.size();
                    for (int c : cell)
                        result.push_back(value(r, c));
                    std::sort(result.begin() + start, result.end(), std::greater<>{});
                }
                return result;
            }

            auto refine(int r, const vector<vector<int>> & cells) const -> vector<vector<int>>
            {
                vector<vector<int>> result;
                for (auto & cell : cells) {
                    auto sorted = cell;
                    std::stable_sort(sorted.begin(), sorted.end(),
                            [&] (int a, int b) { return value(r, a) > value(r, b); });
                    for (size_t i = 0 ; i < sorted.size() ; ++i) {
                        if (i == 0 || value(r, sorted[i]) != value(r, sorted[i - 1]))
                            result.emplace_back();
                        result.back().push_back(sorted[i]);
                    }
                }
                return result;
            }

            auto same_row(int a, int b) const -> bool
            {
                return std::equal(m.begin() + a * cols, m.begin() + (a + 1) * cols, m.begin() + b * cols);
            }

            auto search(vector<int> & remaining, const vector<vector<int>> & cells) -> void
            {
                if (remaining.empty()) {
                    if (! have_best || current > best) {
                        best = current;
                        have_best = true;
                    }
                    return;
                }

                int top_sum = 0;
                for (int r : remaining)
                    top_sum = std::max(top_sum, row_sum[r]);

                vector<int> best_image;
                vector<int> tied;
                for (int r : remaining) {
                    if (row_sum[r] != top_sum)
                        continue;
                    auto img = image(r, cells);
                    if (tied.empty() || img > best_image) {
                        best_image = std::move(img);
                        tied.assign(1, r);
                    }
                    else if (img == best_image && std::none_of(tied.begin(), tied.end(),
                                [&] (int t) { return same_row(t, r); }))
                        tied.push_back(r);
                }

                auto depth = current.size();
                current.insert(current.end(), best_image.begin(), best_image.end());
                if (have_best && std::lexicographical_compare(current.begin(), current.end(),
                            best.begin(), best.begin() + current.size())) {
                    current.resize(depth);
                    return;
                }

                for (int r : tied) {
                    auto refined = refine(r, cells);
                    auto pos = std::find(remaining.begin(), remaining.end(), r);
                    auto index = pos - remaining.begin();
                    remaining.erase(pos);
                    search(remaining, refined);
                    remaining.insert(remaining.begin() + index, r);
                }
                current.resize(depth);
            }
        };
    }

    auto canonical_entries(int rows, int cols, span<const int> entries) -> vector<int>
    {
        CanonicalSearch s{rows, cols, entries, vector<int>(rows, 0), {}, {}, false};
        vector<int> col_sum(cols, 0);
        for (int r = 0 ; r < rows ; ++r)
            for (int c = 0 ; c < cols ; ++c) {
                s.row_sum[r] += s.value(r, c);
                col_sum[c] += s.value(r, c);
            }

        vector<int> order(cols);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&] (int a, int b) { return col_sum[a] > col_sum[b]; });
        vector<vector<int>> cells;
        for (size_t i = 0 ; i < order.size() ; ++i) {
            if (i == 0 || col_sum[order[i]] != col_sum[order[i - 1]])
                cells.emplace_back();
            cells.back().push_back(order[i]);
        }

        vector<int> remaining(rows);
        std::iota(remaining.begin(), remaining.end(), 0);
        s.current.reserve(entries.size());
        s.search(remaining, cells);
        return s.best;
    }

    IntersectionMatrix::IntersectionMatrix(int rows, int cols, int total, vector<int> entries) :
        _rows(rows),
        _cols(cols),
        _total(total),
        _entries(std::move(entries))
    {
    }

    auto IntersectionMatrix::canonical(int rows, int cols, vector<int> entries) -> IntersectionMatrix
    {
        if (rows < 1 || cols < 1 || entries.size() != static_cast<size_t>(rows) * cols)
            throw Error{ErrorKind::MalformedPartition, "matrix shape does not match its entries"};

        int total = 0;
        vector<int> row_sum(rows, 0), col_sum(cols, 0);
        for (int r = 0 ; r < rows ; ++r)
            for (int c = 0 ; c < cols ; ++c) {
                int v = entries[r * cols + c];
                if (v < 0)
                    throw Error{ErrorKind::MalformedPartition, "negative matrix entry"};
                row_sum[r] += v;
                col_sum[c] += v;
                total += v;
            }
        if (std::find(row_sum.begin(), row_sum.end(), 0) != row_sum.end()
                || std::find(col_sum.begin(), col_sum.end(), 0) != col_sum.end())
            throw Error{ErrorKind::MalformedPartition, "matrix has an all-zero row or column"};

        return IntersectionMatrix{rows, cols, total, canonical_entries(rows, cols, entries)};
    }

    auto IntersectionMatrix::parse(string_view text) -> IntersectionMatrix
    {
        vector<vector<int>> rows;
        int depth = 0;
        string number;
        for (char c : text) {
            if (std::isspace(static_cast<unsigned char>(c)))
                continue;
            if (c == '[') {
                if (++depth == 2)
                    rows.emplace_back();
            }
            else if (c == ']' || c == ',') {
                if (! number.empty()) {
                    if (depth != 2)
                        throw Error{ErrorKind::MalformedPartition, "malformed matrix text"};
                    rows.back().push_back(std::stoi(number));
                    number.clear();
                }
                if (c == ']')
                    --depth;
            }
            else if (std::isdigit(static_cast<unsigned char>(c)))
                number.push_back(c);
            else
                throw Error{ErrorKind::MalformedPartition, "unexpected character '" + string(1, c) + "'"};
        }
        if (rows.empty() || depth != 0)
            throw Error{ErrorKind::MalformedPartition, "malformed matrix text"};

        int cols = static_cast<int>(rows.front().size());
        vector<int> entries;
        for (auto & row : rows) {
            if (static_cast<int>(row.size()) != cols)
                throw Error{ErrorKind::MalformedPartition, "ragged matrix text"};
            entries.insert(entries.end(), row.begin(), row.end());
        }
        return canonical(static_cast<int>(rows.size()), cols, std::move(entries));
    }

    auto IntersectionMatrix::row_sums() const -> vector<int>
    {
        vector<int> result(_rows, 0);
        for (int r = 0 ; r < _rows ; ++r)
            for (int c = 0 ; c < _cols ; ++c)
                result[r] += at(r, c);
        return result;
    }

    auto IntersectionMatrix::col_sums() const -> vector<int>
    {
        vector<int> result(_cols, 0);
        for (int r = 0 ; r < _rows ; ++r)
            for (int c = 0 ; c < _cols ; ++c)
                result[c] += at(r, c);
        return result;
    }

    auto IntersectionMatrix::to_string() const -> string
    {
        string result = "[";
        for (int r = 0 ; r < _rows ; ++r) {
            result += r == 0 ? "[" : ",[";
            for (int c = 0 ; c < _cols ; ++c) {
                if (c != 0)
                    result += ",";
                result += std::to_string(at(r, c));
            }
            result += "]";
        }
        return result + "]";
    }

    auto enumerate_proper_partitions(int g) -> vector<SetPartition>
    {
        if (g <= 1)
            throw Error{ErrorKind::GroundTooSmall, "no proper partition of a ground set of size " + std::to_string(g)};

        vector<SetPartition> result;
        for_each_partition(g, [&] (span<const int> labels) {
                auto p = SetPartition::from_labels(labels);
                if (p.is_proper())
                    result.push_back(std::move(p));
                });
        return result;
    }

    auto meet(const SetPartition & lambda, const SetPartition & mu) -> SetPartition
    {
        if (lambda.ground_size() != mu.ground_size())
            throw Error{ErrorKind::GroundMismatch, "meet of partitions of sizes " + std::to_string(lambda.ground_size())
                + " and " + std::to_string(mu.ground_size())};

        int g = lambda.ground_size();
        vector<int> pair_labels(g);
        for (int i = 0 ; i < g ; ++i)
            pair_labels[i] = lambda.labels()[i] * mu.block_count() + mu.labels()[i];
        return SetPartition::from_labels(pair_labels);
    }

    auto intersection_matrix(const SetPartition & lambda, const SetPartition & mu) -> IntersectionMatrix
    {
        if (lambda.ground_size() != mu.ground_size())
            throw Error{ErrorKind::GroundMismatch, "intersection matrix of partitions of sizes "
                + std::to_string(lambda.ground_size()) + " and " + std::to_string(mu.ground_size())};

        int rows = lambda.block_count(), cols = mu.block_count();
        vector<int> entries(rows * cols, 0);
        for (int i = 0 ; i < lambda.ground_size() ; ++i)
            ++entries[lambda.labels()[i] * cols + mu.labels()[i]];
        return IntersectionMatrix::canonical(rows, cols, std::move(entries));
    }

    auto matrix_children(const IntersectionMatrix & m) -> vector<IntersectionMatrix>
    {
        int rows = m.rows(), cols = m.cols();
        set<IntersectionMatrix> children;

        for (int i = 0 ; i < rows * cols ; ++i) {
            auto entries = m.entries();
            ++entries[i];
            children.insert(IntersectionMatrix::canonical(rows, cols, std::move(entries)));
        }

        for (int c = 0 ; c < cols ; ++c) {
            auto entries = m.entries();
            for (int k = 0 ; k < cols ; ++k)
                entries.push_back(k == c ? 1 : 0);
            children.insert(IntersectionMatrix::canonical(rows + 1, cols, std::move(entries)));
        }

        auto widen = [&] (int extra_row, bool corner) {
            vector<int> entries;
            for (int r = 0 ; r < rows ; ++r) {
                for (int c = 0 ; c < cols ; ++c)
                    entries.push_back(m.at(r, c));
                entries.push_back(! corner && r == extra_row ? 1 : 0);
            }
            return entries;
        };
        for (int r = 0 ; r < rows ; ++r)
            children.insert(IntersectionMatrix::canonical(rows, cols + 1, widen(r, false)));

        auto entries = widen(-1, true);
        for (int c = 0 ; c < cols ; ++c)
            entries.push_back(0);
        entries.push_back(1);
        children.insert(IntersectionMatrix::canonical(rows + 1, cols + 1, std::move(entries)));

        return {children.begin(), children.end()};
    }

    auto enumerate_matrix_types(int g) -> vector<IntersectionMatrix>
    {
        if (g <= 1)
            throw Error{ErrorKind::GroundTooSmall, "no pair of proper partitions of a ground set of size " + std::to_string(g)};

        set<IntersectionMatrix> level{IntersectionMatrix::canonical(1, 1, {1})};
        for (int total = 2 ; total <= g ; ++total) {
            set<IntersectionMatrix> next;
            for (auto & m : level)
                for (auto & child : matrix_children(m))
                    next.insert(std::move(child));
            level = std::move(next);
        }

        vector<IntersectionMatrix> result;
        for (auto & m : level)
            if (m.rows() >= 2 && m.cols() >= 2)
                result.push_back(m);
        return result;
    }
}
