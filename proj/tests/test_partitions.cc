#include "oracles.hh"

#include <modstrata/partitions.hh>

#include <doctest.h>

#include <random>
#include <set>

using namespace modstrata;

namespace
{
    auto as_blocks(const SetPartition & p) -> oracle::Blocks
    {
        return oracle::normalize(p.blocks());
    }

    auto relabel(const SetPartition & p, const std::vector<int> & sigma) -> SetPartition
    {
        // element e moves to sigma[e-1]
        std::vector<int> labels(p.ground_size());
        for (int e = 1 ; e <= p.ground_size() ; ++e)
            labels[sigma[e - 1] - 1] = p.block_of(e);
        return SetPartition::from_labels(labels);
    }
}

TEST_CASE("proper partitions are counted by Bell numbers")
{
    CHECK(oracle::bell(0) == 1);
    CHECK(oracle::bell(5) == 52);
    CHECK(oracle::bell(8) == 4140);
    for (int g = 2 ; g <= 8 ; ++g)
        CHECK(enumerate_proper_partitions(g).size() == oracle::bell(g) - 1);
    CHECK(enumerate_proper_partitions(5).size() == 51);
}

TEST_CASE("every partition is enumerated exactly once")
{
    for (int g = 1 ; g <= 7 ; ++g) {
        std::set<oracle::Blocks> seen;
        std::uint64_t calls = 0;
        for_each_partition(g, [&] (std::span<const int> labels) {
            seen.insert(as_blocks(SetPartition::from_labels(labels)));
            ++calls;
        });
        CHECK(calls == oracle::bell(g));
        CHECK(seen == oracle::partitions_by_insertion(g));
    }
}

TEST_CASE("proper partitions of small grounds")
{
    auto two = enumerate_proper_partitions(2);
    REQUIRE(two.size() == 1);
    CHECK(two.front().to_string() == "{1|2}");

    std::vector<std::string> three;
    for (auto & p : enumerate_proper_partitions(3))
        three.push_back(p.to_string());
    CHECK(three == std::vector<std::string>{"{12|3}", "{13|2}", "{1|23}", "{1|2|3}"});

    CHECK_THROWS_AS(enumerate_proper_partitions(1), Error);
    try {
        enumerate_proper_partitions(0);
        FAIL("expected an error");
    }
    catch (const Error & e) {
        CHECK(e.kind() == ErrorKind::GroundTooSmall);
    }
}

TEST_CASE("partition parsing and printing")
{
    auto p = SetPartition::parse("{12|3}");
    CHECK(p.ground_size() == 3);
    CHECK(p.block_count() == 2);
    CHECK(p.block_sizes() == std::vector<int>{2, 1});
    CHECK(p.block_of(3) == 1);
    CHECK(SetPartition::parse("12|3") == p);
    CHECK(SetPartition::parse("{1,2|3}") == p);
    CHECK(SetPartition::parse("{3|21}") == p);

    auto big = SetPartition::parse("{1,2,3,4,5,6,7,8,9|10}");
    CHECK(big.to_string() == "{1,2,3,4,5,6,7,8,9|10}");
    CHECK(SetPartition::parse(big.to_string()) == big);

    for (auto & q : enumerate_proper_partitions(5))
        CHECK(SetPartition::parse(q.to_string()) == q);

    for (auto bad : {"", "{}", "{12|2}", "{13}", "{1a|2}", "{1||2}", "{0|1}"}) {
        CAPTURE(bad);
        try {
            SetPartition::parse(bad);
            FAIL("expected MalformedPartition");
        }
        catch (const Error & e) {
            CHECK(e.kind() == ErrorKind::MalformedPartition);
        }
    }
}

TEST_CASE("block construction validates coverage")
{
    CHECK(SetPartition::from_blocks(3, {{3}, {1, 2}}).to_string() == "{12|3}");
    CHECK_THROWS_AS(SetPartition::from_blocks(3, {{1, 2}}), Error);
    CHECK_THROWS_AS(SetPartition::from_blocks(3, {{1, 2}, {2, 3}}), Error);
    CHECK_THROWS_AS(SetPartition::from_blocks(3, {{1, 2, 3}, {}}), Error);
    CHECK_THROWS_AS(SetPartition::from_blocks(2, {{1, 2, 3}}), Error);
    CHECK(SetPartition::singletons(4).block_count() == 4);
    CHECK(! SetPartition::single_block(4).is_proper());
}

TEST_CASE("meet examples")
{
    auto a = SetPartition::parse("{12|3}");
    auto b = SetPartition::parse("{1|23}");
    CHECK(meet(a, b).to_string() == "{1|2|3}");
    CHECK(meet(a, a) == a);
    CHECK(meet(SetPartition::singletons(3), a) == SetPartition::singletons(3));
    CHECK_THROWS_AS(meet(a, SetPartition::singletons(4)), Error);
}

TEST_CASE("meet is the common refinement and a semilattice operation")
{
    for (int g = 1 ; g <= 5 ; ++g) {
        std::vector<SetPartition> all;
        for_each_partition(g, [&] (std::span<const int> labels) { all.push_back(SetPartition::from_labels(labels)); });
        auto top = SetPartition::single_block(g);
        auto bottom = SetPartition::singletons(g);
        for (auto & a : all) {
            CHECK(meet(a, a) == a);
            CHECK(meet(a, top) == a);
            CHECK(meet(a, bottom) == bottom);
            for (auto & b : all) {
                auto m = meet(a, b);
                CHECK(m == meet(b, a));
                CHECK(as_blocks(m) == oracle::common_refinement(as_blocks(a), as_blocks(b)));
                CHECK(m.refines(a));
                CHECK(m.refines(b));
                CHECK((m == a) == a.refines(b));
            }
        }
    }

    std::vector<SetPartition> four;
    for_each_partition(4, [&] (std::span<const int> labels) { four.push_back(SetPartition::from_labels(labels)); });
    for (auto & a : four)
        for (auto & b : four)
            for (auto & c : four)
                REQUIRE(meet(meet(a, b), c) == meet(a, meet(b, c)));
}

TEST_CASE("intersection matrix examples")
{
    auto a = SetPartition::parse("{12|3}");
    auto b = SetPartition::parse("{1|23}");
    auto m = intersection_matrix(a, b);
    CHECK(m == IntersectionMatrix::canonical(2, 2, {1, 1, 0, 1}));
    CHECK(m.total() == 3);

    auto diag = intersection_matrix(SetPartition::parse("{123|45}"), SetPartition::parse("{123|45}"));
    CHECK(diag == IntersectionMatrix::canonical(2, 2, {3, 0, 0, 2}));
    CHECK(diag.to_string() == "[[3,0],[0,2]]");

    auto m4 = intersection_matrix(SetPartition::parse("{123|4}"), SetPartition::parse("{1|234}"));
    CHECK(m4 == IntersectionMatrix::canonical(2, 2, {1, 2, 0, 1}));
    CHECK(m4.total() == 4);
}

TEST_CASE("intersection matrix sums are the block sizes")
{
    for (int g = 2 ; g <= 5 ; ++g) {
        auto all = enumerate_proper_partitions(g);
        for (auto & a : all)
            for (auto & b : all) {
                auto m = intersection_matrix(a, b);
                auto ra = a.block_sizes(), cb = b.block_sizes();
                std::sort(ra.rbegin(), ra.rend());
                std::sort(cb.rbegin(), cb.rend());
                CHECK(m.row_sums() == ra);
                CHECK(m.col_sums() == cb);
                CHECK(m.total() == g);
                auto nonzero = std::count_if(m.entries().begin(), m.entries().end(), [] (int e) { return e != 0; });
                CHECK(nonzero == meet(a, b).block_count());
            }
    }
}

TEST_CASE("canonical form matches the permutation oracle")
{
    std::mt19937 rng{20261017};
    for (int trial = 0 ; trial < 600 ; ++trial) {
        std::uniform_int_distribution<int> shape(1, 4), value(0, 3);
        int rows = shape(rng), cols = shape(rng);
        std::vector<int> entries(rows * cols);
        for (auto & e : entries)
            e = value(rng);
        bool ok = true;
        for (int r = 0 ; r < rows ; ++r) {
            int s = 0;
            for (int c = 0 ; c < cols ; ++c)
                s += entries[r * cols + c];
            ok = ok && s > 0;
        }
        for (int c = 0 ; c < cols ; ++c) {
            int s = 0;
            for (int r = 0 ; r < rows ; ++r)
                s += entries[r * cols + c];
            ok = ok && s > 0;
        }
        if (! ok) {
            CHECK_THROWS_AS(IntersectionMatrix::canonical(rows, cols, entries), Error);
            continue;
        }
        CAPTURE(trial);
        CHECK(IntersectionMatrix::canonical(rows, cols, entries).entries()
                == oracle::canonical_entries(oracle::Matrix{rows, cols, entries}));
    }
}

TEST_CASE("canonical form is invariant under simultaneous relabeling")
{
    std::mt19937 rng{4242};
    for (int g = 2 ; g <= 6 ; ++g) {
        auto all = enumerate_proper_partitions(g);
        std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
        std::vector<int> sigma(g);
        std::iota(sigma.begin(), sigma.end(), 1);
        for (int trial = 0 ; trial < 1000 ; ++trial) {
            auto & a = all[pick(rng)];
            auto & b = all[pick(rng)];
            std::shuffle(sigma.begin(), sigma.end(), rng);
            auto m = intersection_matrix(a, b);
            REQUIRE(intersection_matrix(relabel(a, sigma), relabel(b, sigma)) == m);
            auto raw = oracle::raw_matrix(as_blocks(a), as_blocks(b));
            REQUIRE(m.entries() == oracle::canonical_entries(raw));
        }
    }
}

TEST_CASE("matrix parsing")
{
    auto m = IntersectionMatrix::parse("[[1,0],[1,1]]");
    CHECK(m.to_string() == "[[1,1],[1,0]]");
    CHECK(IntersectionMatrix::parse(m.to_string()) == m);
    CHECK_THROWS_AS(IntersectionMatrix::parse("[[1,0],[0,0]]"), Error);
    CHECK_THROWS_AS(IntersectionMatrix::parse("[[1,0],[1]]"), Error);
    CHECK_THROWS_AS(IntersectionMatrix::parse("1,0"), Error);
}

TEST_CASE("matrix types are exactly the profiles of proper pairs")
{
    auto two = enumerate_matrix_types(2);
    REQUIRE(two.size() == 1);
    CHECK(two.front().to_string() == "[[1,0],[0,1]]");

    for (int g = 2 ; g <= 6 ; ++g) {
        std::set<IntersectionMatrix> image;
        auto all = enumerate_proper_partitions(g);
        for (auto & a : all)
            for (auto & b : all)
                image.insert(intersection_matrix(a, b));
        auto types = enumerate_matrix_types(g);
        CAPTURE(g);
        CHECK(std::is_sorted(types.begin(), types.end()));
        CHECK(std::adjacent_find(types.begin(), types.end()) == types.end());
        CHECK(std::set<IntersectionMatrix>(types.begin(), types.end()) == image);
    }

    auto four = enumerate_matrix_types(4);
    CHECK(std::find(four.begin(), four.end(), IntersectionMatrix::parse("[[1,2],[0,1]]")) != four.end());
}

TEST_CASE("insertion opens or extends a block")
{
    auto p = SetPartition::parse("{12|3}");
    CHECK(p.insert_next(0).to_string() == "{124|3}");
    CHECK(p.insert_next(1).to_string() == "{12|34}");
    CHECK(p.insert_next(2).to_string() == "{12|3|4}");
    CHECK_THROWS_AS(p.insert_next(3), Error);
}
