// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any criterion fails.

#include "oracles.hh"

#include <modstrata/cli.hh>
#include <modstrata/hecke_groups.hh>
#include <modstrata/planner.hh>
#include <modstrata/strata.hh>

#include <json.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace modstrata;
using nlohmann::json;

namespace
{
    using Clock = std::chrono::steady_clock;

    struct Criterion
    {
        int id;
        std::string title;
        std::function<std::vector<std::string>()> check;  // returns the failures
    };

    auto seconds_since(Clock::time_point start) -> double
    {
        return std::chrono::duration<double>(Clock::now() - start).count();
    }

    auto invoke(const std::vector<std::string> & args, std::string & out) -> int
    {
        std::ostringstream o, e;
        int code = cli::run(args, o, e);
        out = o.str();
        return code;
    }

    auto sorted_tuples(int lo, int hi, int min_len, int max_len) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> result;
        std::vector<int> cur;
        std::function<void(int)> rec = [&] (int from) {
            if (static_cast<int>(cur.size()) >= min_len)
                result.push_back(cur);
            if (static_cast<int>(cur.size()) == max_len)
                return;
            for (int v = from ; v <= hi ; ++v) {
                cur.push_back(v);
                rec(v);
                cur.pop_back();
            }
        };
        rec(lo);
        return result;
    }

    auto tuple_string(const std::vector<int> & v) -> std::string
    {
        std::string s = "(";
        for (size_t i = 0 ; i < v.size() ; ++i)
            s += (i ? "," : "") + std::to_string(v[i]);
        return s + ")";
    }

    auto blocks(const SetPartition & p) -> oracle::Blocks
    {
        return oracle::normalize(p.blocks());
    }

    auto all_partitions(int g) -> std::vector<SetPartition>
    {
        std::vector<SetPartition> result;
        for_each_partition(g, [&] (std::span<const int> labels) { result.push_back(SetPartition::from_labels(labels)); });
        return result;
    }

    auto max_product_sweep() -> std::vector<std::string>
    {
        std::vector<std::string> failures;
        const std::vector<Dim> expected{6, 17, 32, 51, 74, 101, 132};

        auto start = Clock::now();
        std::string out;
        int code = invoke({"verify", "L5.5", "--g-max", "8", "--json"}, out);
        double elapsed = seconds_since(start);
        if (code != 0)
            failures.push_back("verify L5.5 exited " + std::to_string(code));
        if (elapsed >= 60)
            failures.push_back("verify L5.5 took " + std::to_string(elapsed) + " s");

        auto cases = json::parse(out)["result"]["cases"];
        if (cases.size() != 7)
            failures.push_back("expected 7 cases, got " + std::to_string(cases.size()));
        for (auto & c : cases) {
            int g = c["input"]["g"];
            if (g < 2 || g > 8 || c["computed"] != expected[g - 2])
                failures.push_back("g=" + std::to_string(g) + " computed " + c["computed"].dump());
            if (! c["witness"].is_string() || c["witness"].get<std::string>().empty())
                failures.push_back("g=" + std::to_string(g) + " has no witness matrix");
            else if (product_dim(IntersectionMatrix::parse(c["witness"].get<std::string>())) != expected[g - 2])
                failures.push_back("g=" + std::to_string(g) + " witness does not attain the maximum");
        }

        // direct enumeration over all ordered pairs of proper partitions
        for (int g = 2 ; g <= 7 ; ++g) {
            auto all = enumerate_proper_partitions(g);
            std::vector<oracle::Blocks> bs;
            for (auto & p : all)
                bs.push_back(blocks(p));
            if (bs.size() != oracle::bell(g) - 1)
                failures.push_back("g=" + std::to_string(g) + " partition count");
            Dim best = -1;
            for (auto & a : bs)
                for (auto & b : bs)
                    best = std::max(best, oracle::product_dim(a, b));
            if (best != max_product_dim(g).value)
                failures.push_back("g=" + std::to_string(g) + " pairs give " + std::to_string(best));
        }
        return failures;
    }

    auto product_closed_form() -> std::vector<std::string>
    {
        std::vector<std::string> failures;
        auto start = Clock::now();
        auto shapes = sorted_tuples(2, 6, 1, 4);
        for (auto & gs : shapes) {
            Dim value = mdec_codim_product(gs).value;
            if (value != 2 * gs.front() - 2 || value != oracle::product_min_codim(gs))
                failures.push_back(tuple_string(gs) + " gives " + std::to_string(value));
        }
        double elapsed = seconds_since(start);
        if (elapsed >= 5)
            failures.push_back("took " + std::to_string(elapsed) + " s");
        if (shapes.size() != 125)
            failures.push_back("swept " + std::to_string(shapes.size()) + " tuples");
        return failures;
    }

    auto fixedpart_closed_form() -> std::vector<std::string>
    {
        std::vector<std::string> failures;
        if (mdec_codim_fixedpart(DecompositionShape{{1}, {3}}).value != 3)
            failures.push_back("fixed (1), varying (3) is not 3");

        for (auto & fixed : sorted_tuples(1, 6, 0, 3))
            for (auto & varying : sorted_tuples(2, 6, 1, 3)) {
                auto m = mdec_codim_fixedpart(DecompositionShape{fixed, varying});
                auto label = tuple_string(fixed) + tuple_string(varying);
                if (m.value != oracle::fixedpart_min_codim(fixed, varying))
                    failures.push_back(label + " differs from the stratum oracle");
                bool realizable = fixed.empty() || fixed.back() <= varying.front();
                if (realizable) {
                    if (! m.closed_form_applies || ! m.closed_form || *m.closed_form != m.value)
                        failures.push_back(label + " closed form differs");
                }
                else if (m.closed_form_applies || m.notes.empty())
                    failures.push_back(label + " is not flagged");
                if (m.closed_form && *m.closed_form != m.value && m.notes.empty())
                    failures.push_back(label + " diverges silently");
            }
        return failures;
    }

    auto unitary_closed_form() -> std::vector<std::string>
    {
        std::vector<std::string> failures;
        auto start = Clock::now();
        for (int p = 1 ; p <= 8 ; ++p)
            for (int q = 1 ; q <= 8 ; ++q) {
                if (p + q < 3)
                    continue;
                auto m = mdec_codim_unitary(p, q);
                Dim closed = std::min({2 * p, p + q - 2, 2 * q});
                auto label = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
                if (m.value != oracle::unitary_min_codim(p, q))
                    failures.push_back(label + " differs from the stratum oracle");
                if (m.value != closed)
                    failures.push_back(label + ": enumerated minimum " + std::to_string(m.value) + " at "
                            + m.witness.label() + ", closed form " + std::to_string(closed));
                bool noted = std::any_of(m.notes.begin(), m.notes.end(),
                        [] (const std::string & n) { return n.rfind("non-CM strata:", 0) == 0; });
                if (! noted)
                    failures.push_back(label + " lacks the display note");
                for (int r = 0 ; r <= 3 ; ++r)
                    if (mdec_codim_unitary_fixedpart(r, p, q).value != m.value)
                        failures.push_back(label + " changes with " + std::to_string(r) + " elliptic factors");
            }
        double elapsed = seconds_since(start);
        if (elapsed >= 1)
            failures.push_back("took " + std::to_string(elapsed) + " s");
        return failures;
    }

    auto hecke_margin() -> std::vector<std::string>
    {
        std::vector<std::string> failures;
        for (int g = 2 ; g <= 7 ; ++g)
            for (auto & lambda : enumerate_proper_partitions(g)) {
                Dim codim = gamma_gamma_codim(g, lambda);
                if (codim < 4)
                    failures.push_back(lambda.to_string() + " has margin " + std::to_string(codim));
                if (g <= 5) {
                    Dim best = -1;
                    for (auto & mu : enumerate_proper_partitions(g))
                        best = std::max(best, oracle::product_dim(blocks(mu), blocks(lambda)));
                    if (oracle::sp_dim(g) - best != codim)
                        failures.push_back(lambda.to_string() + " differs from the pair oracle");
                }
            }
        if (gamma_gamma_codim(2, SetPartition::parse("{1|2}")) != 4)
            failures.push_back("g=2 margin is not 4");
        return failures;
    }

    auto symplectic_plans() -> std::vector<std::string>
    {
        std::vector<std::string> failures;
        struct Expect { std::vector<int> fixed, varying; Dim d_max; std::string group; Dim dim; };
        for (auto & e : std::vector<Expect>{
                {{1}, {2}, 1, "Sp(4)", 10},
                {{1}, {3}, 2, "Sp(6)", 21},
                {{}, {2, 2}, 1, "Sp(4) x Sp(4)", 20}}) {
            auto plan = plan_family(FamilySpec::symplectic(e.fixed, e.varying));
            auto label = tuple_string(e.fixed) + tuple_string(e.varying);
            if (plan.d_max != e.d_max)
                failures.push_back(label + " d_max " + std::to_string(plan.d_max));
            if (plan.monodromy.label() != e.group || plan.monodromy_dim != e.dim)
                failures.push_back(label + " monodromy " + plan.monodromy.label());
        }
        return failures;
    }

    auto unitary_plans() -> std::vector<std::string>
    {
        std::vector<std::string> failures;
        auto a = plan_family(FamilySpec::unitary(1, 2, 2));
        if (a.d_max != 1)
            failures.push_back("r=1,(2,2): d_max " + std::to_string(a.d_max) + " (mdec " + std::to_string(a.mdec.value)
                    + " at " + a.mdec.witness.label() + ")");
        if (a.monodromy.label() != "SUForm(2,2)" || a.monodromy_dim != 15)
            failures.push_back("r=1,(2,2): monodromy " + a.monodromy.label());
        auto b = plan_family(FamilySpec::unitary(1, 3, 3));
        if (b.d_max != 3)
            failures.push_back("r=1,(3,3): d_max " + std::to_string(b.d_max) + " (mdec " + std::to_string(b.mdec.value)
                    + " at " + b.mdec.witness.label() + ")");
        return failures;
    }

    auto kodaira_budgets() -> std::vector<std::string>
    {
        std::vector<std::string> failures;
        auto k3 = kodaira_budget(3);
        if (! k3.feasible || k3.monodromy.label() != "Sp(4)" || k3.post_torelli_budget != 2)
            failures.push_back("genus 3");
        auto k4 = kodaira_budget(4);
        if (! k4.feasible || k4.monodromy.label() != "Sp(6)" || k4.post_torelli_budget != 2)
            failures.push_back("genus 4");
        if (k4.mdec_codim != 3 || k4.torelli_codim != 1 || k4.residual_mdec_codim < 2 || k4.boundary.value != 3)
            failures.push_back("genus 4 intermediate values");
        for (int g = 5 ; g <= 10 ; ++g)
            if (kodaira_budget(g).feasible)
                failures.push_back("genus " + std::to_string(g) + " is feasible");
        return failures;
    }

    auto round_trip() -> std::vector<std::string>
    {
        std::vector<std::string> failures;
        int checked = 0;
        for (auto & ranks : sorted_tuples(2, 5, 1, 3)) {
            auto target = GroupExpr::symplectic(ranks);
            int total = std::accumulate(ranks.begin(), ranks.end(), 0);
            for (int g = total ; g <= 15 ; ++g) {
                auto plan = plan_family(realize_group(target, g));
                if (plan.monodromy != target || plan.d_max != ranks.front() - 1)
                    failures.push_back(target.label() + " at g'=" + std::to_string(g));
                ++checked;
            }
        }
        if (checked == 0)
            failures.push_back("no targets checked");
        return failures;
    }

    auto partition_properties() -> std::vector<std::string>
    {
        std::vector<std::string> failures;
        for (int g = 1 ; g <= 8 ; ++g) {
            std::uint64_t count = 0;
            for_each_partition(g, [&] (std::span<const int>) { ++count; });
            if (count != oracle::bell(g))
                failures.push_back("Bell count at g=" + std::to_string(g));
            if (g >= 2 && enumerate_proper_partitions(g).size() != oracle::bell(g) - 1)
                failures.push_back("proper count at g=" + std::to_string(g));
        }

        for (int g = 1 ; g <= 4 ; ++g) {
            auto all = all_partitions(g);
            for (auto & a : all)
                for (auto & b : all) {
                    auto m = meet(a, b);
                    if (meet(a, a) != a || m != meet(b, a) || ! m.refines(a) || ! m.refines(b)
                            || blocks(m) != oracle::common_refinement(blocks(a), blocks(b)))
                        failures.push_back("meet law at " + a.to_string() + ", " + b.to_string());
                    for (auto & c : all)
                        if (meet(meet(a, b), c) != meet(a, meet(b, c)))
                            failures.push_back("associativity at g=" + std::to_string(g));
                }
        }

        std::mt19937 rng{8128};
        for (int g = 2 ; g <= 6 ; ++g) {
            auto all = enumerate_proper_partitions(g);
            std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
            std::vector<int> sigma(g);
            std::iota(sigma.begin(), sigma.end(), 0);
            for (int trial = 0 ; trial < 1000 ; ++trial) {
                auto & a = all[pick(rng)];
                auto & b = all[pick(rng)];
                std::shuffle(sigma.begin(), sigma.end(), rng);
                std::vector<int> la(g), lb(g);
                for (int e = 0 ; e < g ; ++e) {
                    la[sigma[e]] = a.labels()[e];
                    lb[sigma[e]] = b.labels()[e];
                }
                auto m = intersection_matrix(a, b);
                if (intersection_matrix(SetPartition::from_labels(la), SetPartition::from_labels(lb)) != m)
                    failures.push_back("relabeling changes " + a.to_string() + ", " + b.to_string());

                auto ra = a.block_sizes(), cb = b.block_sizes();
                std::sort(ra.rbegin(), ra.rend());
                std::sort(cb.rbegin(), cb.rend());
                if (m.row_sums() != ra || m.col_sums() != cb)
                    failures.push_back("sums of " + m.to_string());
            }
        }
        return failures;
    }

    auto increment_identity() -> std::vector<std::string>
    {
        std::vector<std::string> failures;
        for (int g = 2 ; g <= 6 ; ++g)
            for (auto & lambda : all_partitions(g - 1)) {
                auto sizes = lambda.block_sizes();
                for (int b = 0 ; b <= lambda.block_count() ; ++b) {
                    Dim l = b < lambda.block_count() ? sizes[b] : 0;
                    if (gamma_dim(lambda.insert_next(b)) - gamma_dim(lambda) != 4 * l + 3)
                        failures.push_back(lambda.to_string() + " block " + std::to_string(b + 1));
                }
            }
        return failures;
    }

    auto cli_determinism() -> std::vector<std::string>
    {
        std::vector<std::string> failures;
        struct Golden { std::vector<std::string> args; int code; };
        const std::vector<Golden> golden{
            {{"plan", "--fixed", "1", "--varying", "3", "--json"}, 0},
            {{"verify", "L5.5", "--g-max", "6", "--json"}, 0},
            {{"kodaira", "--genus", "5", "--require-feasible", "--json"}, 3},
            {{"kodaira", "--genus", "4", "--require-feasible", "--json"}, 0},
            {{"verify", "L3.1", "--json"}, 0},
            {{"verify", "C5.6", "--json"}, 0},
            {{"strata", "--fixed", "1", "--varying", "3", "--json"}, 0},
            {{"gamma", "--g", "5", "--witness-all", "--json"}, 0},
            {{"realize", "Sp(4) x Sp(6)", "--g", "7", "--json"}, 0},
            {{"plan", "--varying", "1,3", "--json"}, 1},
            {{"plan", "--unitary", "1,2", "--elliptic", "1", "--json"}, 1},
            {{"frobnicate", "--json"}, 1},
        };
        for (auto & g : golden) {
            std::string first, second;
            int a = invoke(g.args, first);
            int b = invoke(g.args, second);
            std::string label;
            for (auto & s : g.args)
                label += (label.empty() ? "" : " ") + s;
            if (a != g.code || b != g.code)
                failures.push_back("'" + label + "' exited " + std::to_string(a) + ", expected " + std::to_string(g.code));
            if (first != second)
                failures.push_back("'" + label + "' output differs between runs");
        }

        std::string out;
        invoke({"plan", "--fixed", "1", "--varying", "3", "--json"}, out);
        auto doc = json::parse(out);
        if (doc["result"]["d_max"] != 2 || doc["result"]["monodromy"] != "Sp(6)")
            failures.push_back("plan report content");
        return failures;
    }
}

auto main() -> int
{
    const std::vector<Criterion> criteria{
        {1, "maximum product dimension 2g^2+g-4 for g=2..8 with witnesses, pairs cross-check to g=7, under 60 s", max_product_sweep},
        {2, "product strata minimum equals 2g1-2 for all tuples in [2,6] of length <= 4, under 5 s", product_closed_form},
        {3, "fixed-part minimum: anchor (1),(3) -> 3, closed form equals oracle when realizable, exceptions flagged", fixedpart_closed_form},
        {4, "unitary minimum equals min(2p, p+q-2, 2q) for 1 <= p,q <= 8, p+q >= 3, under 1 s", unitary_closed_form},
        {5, "Hecke margin at least 4 for every proper partition, g=2..7, exactly 4 at g=2", hecke_margin},
        {6, "symplectic plans: (1),(2) -> 1 Sp(4); (1),(3) -> 2 Sp(6); (2,2) -> 1 dim 20", symplectic_plans},
        {7, "unitary plans: r=1 (2,2) -> d_max 1 SUForm(2,2) dim 15; r=1 (3,3) -> d_max 3", unitary_plans},
        {8, "Kodaira budgets: genus 3, 4 feasible with budget 2; genus 5..10 infeasible", kodaira_budgets},
        {9, "realize then plan returns the target group and d_max = min rank - 1", round_trip},
        {10, "partition lattice properties: meet laws, matrix sums, Bell counts, relabeling invariance", partition_properties},
        {11, "stabilizer dimension increment 4l+3 for g=2..6", increment_identity},
        {12, "CLI determinism and exit codes on a golden set of 12 invocations", cli_determinism},
    };

    int failed = 0;
    for (auto & c : criteria) {
        std::vector<std::string> failures;
        try {
            failures = c.check();
        }
        catch (const std::exception & e) {
            failures.push_back(std::string{"exception: "} + e.what());
        }
        std::cout << (failures.empty() ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << "\n";
        for (size_t i = 0 ; i < failures.size() && i < 10 ; ++i)
            std::cout << "    " << failures[i] << "\n";
        if (failures.size() > 10)
            std::cout << "    ... " << failures.size() - 10 << " more\n";
        if (! failures.empty())
            ++failed;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
