#include <modstrata/cli.hh>
#include <modstrata/hecke_groups.hh>
#include <modstrata/planner.hh>
#include <modstrata/strata.hh>
#include <modstrata/verify.hh>
#include <modstrata/detail/overloaded.hh>

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

using std::optional;
using std::string;
using std::vector;

namespace modstrata::cli
{
    using detail::Overloaded;

    namespace
    {
        struct Options
        {
            vector<int> fixed;
            vector<int> varying;
            vector<int> unitary;
            optional<int> elliptic;
            optional<int> g;
            optional<int> g_max;
            optional<int> genus;
            bool json = false;
            bool witness_all = false;
            bool require_feasible = false;
            bool timing = false;
            string out;
            string lemma;
            string target;
            string partition;
        };

        struct Report
        {
            Report() = default;
            explicit Report(string c, Json i = Json::object()) : command(std::move(c)), input(std::move(i)) {}

            string command;
            Json input = Json::object();
            Json result = Json::object();
            vector<string> notes;
            int exit_code = exit_ok;
        };

        auto usage_error(const string & message) -> Error
        {
            return Error{ErrorKind::SpecInvalid, message};
        }

        auto stratum_json(const Stratum & s) -> Json
        {
            return Json{{"kind", stratum_kind_name(s.kind)}, {"label", s.label()}, {"ambient_dim", s.ambient_dim},
                {"stratum_dim", s.stratum_dim}, {"codim", s.codim}};
        }

        auto min_codim_json(const MinCodim & m) -> Json
        {
            return Json{{"value", m.value}, {"witness", stratum_json(m.witness)},
                {"closed_form", m.closed_form ? Json(*m.closed_form) : Json(nullptr)},
                {"closed_form_applies", m.closed_form_applies}, {"agrees", m.agrees}};
        }

        auto spec_json(const FamilySpec & spec) -> Json
        {
            Json j = std::visit(Overloaded{
                    [] (const SymplecticSpec & s) {
                        return Json{{"flavor", "symplectic"}, {"fixed", s.fixed_dims}, {"varying", s.varying_dims}};
                    },
                    [] (const UnitarySpec & u) {
                        return Json{{"flavor", "unitary"}, {"elliptic", u.elliptic_count}, {"p", u.p}, {"q", u.q},
                            {"field", u.field_label}};
                    }
                }, spec.flavor);
            j["level"] = spec.level;
            if (spec.declared_total)
                j["g"] = *spec.declared_total;
            return j;
        }

        auto spec_from(const Options & o) -> FamilySpec
        {
            FamilySpec spec;
            if (! o.unitary.empty()) {
                if (o.unitary.size() != 2)
                    throw usage_error("--unitary takes exactly two values p,q");
                if (! o.fixed.empty() || ! o.varying.empty())
                    throw usage_error("--unitary cannot be combined with --fixed or --varying");
                spec = FamilySpec::unitary(o.elliptic.value_or(0), o.unitary[0], o.unitary[1]);
            }
            else {
                if (o.elliptic)
                    throw usage_error("--elliptic needs --unitary");
                spec = FamilySpec::symplectic(o.fixed, o.varying);
            }
            spec.declared_total = o.g;
            return spec;
        }

        auto plan_json(const PlanReport & p) -> Json
        {
            return Json{
                {"total_g", p.total_g},
                {"ambient_dim", p.ambient_dim},
                {"mdec_codim", p.mdec.value},
                {"mdec_witness", stratum_json(p.mdec.witness)},
                {"mdec_closed_form", p.mdec.closed_form ? Json(*p.mdec.closed_form) : Json(nullptr)},
                {"closed_form_applies", p.mdec.closed_form_applies},
                {"closed_form_agrees", p.mdec.agrees},
                {"boundary_codim", p.boundary.value},
                {"boundary_exact", p.boundary.exact},
                {"budget", p.budget},
                {"d_max", p.d_max},
                {"theorem_d_max", p.theorem_d_max},
                {"agrees_with_theorem", p.agrees_with_theorem},
                {"monodromy", p.monodromy.label()},
                {"monodromy_dim", p.monodromy_dim},
                {"hecke_margin", p.hecke_margin ? Json(*p.hecke_margin) : Json(nullptr)},
                {"feasible", p.feasible}
            };
        }

        auto plan_exit(const PlanReport & p, const Options & o) -> int
        {
            if (o.require_feasible && ! p.feasible)
                return exit_infeasible;
            if (! p.agrees_with_theorem || ! p.mdec.agrees)
                return exit_disagreement;
            return exit_ok;
        }

        auto run_plan(const Options & o) -> Report
        {
            auto spec = spec_from(o);
            Report r{"plan", spec_json(spec)};
            auto plan = plan_family(spec);
            r.result = plan_json(plan);
            r.notes = plan.notes;
            r.exit_code = plan_exit(plan, o);
            return r;
        }

        auto run_strata(const Options & o) -> Report
        {
            auto spec = spec_from(o);
            Report r{"strata", spec_json(spec)};
            auto violations = validate_spec(spec);
            if (! violations.empty())
                throw Error{ErrorKind::SpecInvalid, spec.describe() + ": " + violations.front(), violations};

            vector<Stratum> strata;
            MinCodim m = std::visit(Overloaded{
                    [&] (const SymplecticSpec & s) {
                        if (s.fixed_dims.empty()) {
                            strata = strata_of_product(s.varying_dims);
                            return mdec_codim_product(s.varying_dims);
                        }
                        DecompositionShape shape{s.fixed_dims, s.varying_dims};
                        strata = strata_of_fixedpart(shape);
                        return mdec_codim_fixedpart(shape);
                    },
                    [&] (const UnitarySpec & u) {
                        strata = strata_of_unitary(u.p, u.q);
                        return mdec_codim_unitary_fixedpart(u.elliptic_count, u.p, u.q);
                    }
                }, spec.flavor);

            Json list = Json::array();
            for (auto & s : strata)
                list.push_back(stratum_json(s));
            r.result = {{"stratum_count", strata.size()}, {"strata", list}, {"mdec", min_codim_json(m)}};
            r.notes = m.notes;
            r.exit_code = m.agrees ? exit_ok : exit_disagreement;
            return r;
        }

        auto run_gamma(const Options & o) -> Report
        {
            Report r{"gamma"};
            if (! o.partition.empty()) {
                auto lambda = SetPartition::parse(o.partition);
                int g = o.g.value_or(lambda.ground_size());
                r.input = {{"g", g}, {"partition", o.partition}};
                if (g != lambda.ground_size())
                    throw Error{ErrorKind::GroundMismatch, "partition " + lambda.to_string() + " is not of {1.."
                        + std::to_string(g) + "}"};
                auto sub = gamma_subgroup(lambda);
                Dim codim = gamma_gamma_codim(g, lambda);
                r.result = {{"partition", lambda.to_string()}, {"block_sizes", lambda.block_sizes()},
                    {"group", sub.group.label()}, {"gamma_dim", sub.dim}, {"sp_dim", sp_dim(g)},
                    {"gamma_gamma_codim", codim}, {"at_least_4", codim >= 4}};
                bool agree = codim >= 4;
                if (g <= 7) {
                    Dim exhaustive = gamma_gamma_codim_exhaustive(g, lambda);
                    r.result["exhaustive_codim"] = exhaustive;
                    agree = agree && exhaustive == codim;
                }
                r.exit_code = agree ? exit_ok : exit_disagreement;
                return r;
            }

            if (! o.g)
                throw usage_error("gamma needs --g N or a partition");
            int g = *o.g;
            r.input = {{"g", g}, {"witness_all", o.witness_all}};
            auto best = max_product_dim(g, o.witness_all);
            Dim expected = expected_max_product_dim(g);
            auto [lambda, mu] = two_block_witness(g);
            r.result = {{"g", g}, {"sp_dim", sp_dim(g)}, {"max_product_dim", best.value}, {"expected", expected},
                {"agree", best.value == expected}, {"witness", best.witness.to_string()},
                {"exhaustive", best.exhaustive}, {"two_block_witness", lambda.to_string() + " " + mu.to_string()},
                {"two_block_value", product_dim(lambda, mu)}};
            if (o.witness_all) {
                Json all = Json::array();
                for (auto & m : best.maximizers)
                    all.push_back(m.to_string());
                r.result["maximizers"] = all;
            }
            r.exit_code = best.value == expected ? exit_ok : exit_disagreement;
            return r;
        }

        auto run_verify(const Options & o) -> Report
        {
            Report r{"verify"};
            r.input = {{"lemma_id", o.lemma}};
            if (o.g)
                r.input["g"] = *o.g;
            if (o.g_max)
                r.input["g_max"] = *o.g_max;
            r.input["witness_all"] = o.witness_all;

            auto run = verify(o.lemma, VerifyOptions{o.g, o.g_max, o.witness_all});
            Json cases = Json::array();
            for (auto & c : run.cases) {
                Json j{{"input", c.input}, {"expected", c.expected ? Json(*c.expected) : Json(nullptr)},
                    {"computed", c.computed}, {"agree", c.agree}, {"witness", c.witness}};
                for (auto & [key, value] : c.extra.items())
                    j[key] = value;
                cases.push_back(std::move(j));
            }
            Json summary{{"cases", run.cases.size()}, {"disagreements", run.disagreements}, {"flagged", run.flagged}};
            if (o.timing)
                summary["elapsed_ms"] = run.elapsed_ms;
            r.result = {{"lemma_id", run.lemma_id}, {"parameter_range", run.parameter_range}, {"cases", cases},
                {"summary", summary}};
            r.notes = run.notes;
            for (auto & c : run.cases)
                if (! c.agree)
                    r.notes.push_back("disagreement at " + c.input.dump() + ": expected "
                            + (c.expected ? std::to_string(*c.expected) : string{"none"}) + ", computed "
                            + std::to_string(c.computed) + " (" + c.witness + ")");
            r.exit_code = run.all_agree() ? exit_ok : exit_disagreement;
            return r;
        }

        auto run_kodaira(const Options & o) -> Report
        {
            if (o.genus && o.g && *o.genus != *o.g)
                throw usage_error("--genus and --g disagree");
            auto genus = o.genus ? o.genus : o.g;
            if (! genus)
                throw usage_error("kodaira needs --genus N");

            Report r{"kodaira", Json{{"genus", *genus}}};
            auto k = kodaira_budget(*genus);
            r.result = {{"fiber_genus", k.fiber_genus}, {"spec", spec_json(k.spec)}, {"mdec_codim", k.mdec_codim},
                {"boundary_codim", k.boundary.value}, {"boundary_exact", k.boundary.exact},
                {"torelli_codim", k.torelli_codim}, {"residual_mdec_codim", k.residual_mdec_codim},
                {"residual_boundary_codim", k.residual_boundary_codim}, {"post_torelli_budget", k.post_torelli_budget},
                {"feasible", k.feasible}, {"monodromy", k.monodromy.label()}, {"monodromy_dim", group_dim(k.monodromy)}};
            r.notes = k.notes;
            r.exit_code = o.require_feasible && ! k.feasible ? exit_infeasible : exit_ok;
            return r;
        }

        auto run_realize(const Options & o) -> Report
        {
            if (! o.g)
                throw usage_error("realize needs --g N");
            Report r{"realize", Json{{"target", o.target}, {"g", *o.g}}};
            auto target = GroupExpr::parse(o.target);
            auto spec = realize_group(target, *o.g);
            auto plan = plan_family(spec);
            bool round_trip = plan.monodromy == target;
            r.result = {{"target", target.label()}, {"spec", spec_json(spec)}, {"plan", plan_json(plan)},
                {"round_trip", round_trip}};
            r.notes = plan.notes;
            if (! round_trip)
                r.notes.push_back("planned monodromy " + plan.monodromy.label() + " differs from the target");
            r.exit_code = round_trip ? plan_exit(plan, o) : exit_disagreement;
            return r;
        }

        auto render_scalar(const Json & j) -> string
        {
            return j.is_string() ? j.get<string>() : j.dump();
        }

        auto is_flat(const Json & j) -> bool
        {
            return std::none_of(j.begin(), j.end(), [] (const Json & e) { return e.is_structured(); });
        }

        auto render_text(const Json & j, int indent, std::ostream & out) -> void
        {
            string pad(indent, ' ');
            if (j.is_object())
                for (auto & [key, value] : j.items()) {
                    if (value.is_object() && ! value.empty()) {
                        out << pad << key << ":\n";
                        render_text(value, indent + 2, out);
                    }
                    else if (value.is_array() && ! is_flat(value)) {
                        out << pad << key << ":\n";
                        for (auto & e : value) {
                            out << pad << "  -\n";
                            render_text(e, indent + 4, out);
                        }
                    }
                    else
                        out << pad << key << ": " << render_scalar(value) << "\n";
                }
            else
                out << pad << render_scalar(j) << "\n";
        }

        auto render(const Report & r, bool json) -> string
        {
            std::ostringstream out;
            if (json) {
                Json doc{{"tool", tool_name}, {"version", tool_version}, {"command", r.command}, {"input", r.input},
                    {"result", r.result}, {"notes", r.notes}};
                out << doc.dump(2) << "\n";
            }
            else {
                out << tool_name << " " << tool_version << " " << r.command << "\n";
                out << "input:\n";
                render_text(r.input, 2, out);
                out << "result:\n";
                render_text(r.result, 2, out);
                if (! r.notes.empty()) {
                    out << "notes:\n";
                    for (auto & n : r.notes)
                        out << "  - " << n << "\n";
                }
            }
            return out.str();
        }

        auto add_output_flags(CLI::App * sub, Options & o) -> void
        {
            sub->add_flag("--json", o.json, "Emit the JSON report");
            sub->add_option("--out", o.out, "Write the report to FILE instead of standard output");
            sub->add_flag("--timing", o.timing, "Include elapsed times");
        }

        auto add_spec_flags(CLI::App * sub, Options & o) -> void
        {
            sub->add_option("--fixed", o.fixed, "Fixed factor dimensions a,b,...")->delimiter(',')->allow_extra_args(false);
            sub->add_option("--varying", o.varying, "Varying factor dimensions a,b,...")->delimiter(',')->allow_extra_args(false);
            sub->add_option("--unitary", o.unitary, "Signature p,q of the unitary factor")->delimiter(',')->allow_extra_args(false);
            sub->add_option("--elliptic", o.elliptic, "Number of fixed elliptic curves in a unitary spec");
            sub->add_option("--g", o.g, "Declared total dimension, checked against the factors");
        }
    }

    auto run(const vector<string> & args, std::ostream & out, std::ostream & err) -> int
    {
        CLI::App app{"Dimension calculus for strata of moduli of abelian varieties and complete families",
            string{tool_name}};
        app.require_subcommand(1);
        Options o;

        auto plan = app.add_subcommand("plan", "Dimension budget and monodromy of a family specification");
        add_spec_flags(plan, o);
        plan->add_flag("--require-feasible", o.require_feasible, "Exit 3 when no positive-dimensional family fits");
        add_output_flags(plan, o);

        auto strata = app.add_subcommand("strata", "List multiply-decomposable strata and their minimum codimension");
        add_spec_flags(strata, o);
        add_output_flags(strata, o);

        auto gamma = app.add_subcommand("gamma", "Hecke subgroup dimensions: maximum product or one partition's margin");
        gamma->add_option("partition", o.partition, "Partition such as {12|34}");
        gamma->add_option("--g", o.g, "Ground set size");
        gamma->add_flag("--witness-all", o.witness_all, "List every maximizing matrix type");
        add_output_flags(gamma, o);

        auto verify_cmd = app.add_subcommand("verify", "Check a closed form against enumeration over a sweep");
        verify_cmd->add_option("lemma", o.lemma, "One of L3.1 L3.2 L3.3 L3.4 C5.3-increment L5.5 C5.6")
            ->required()->check(CLI::IsMember(verification_ids()));
        verify_cmd->add_option("--g", o.g, "Run the sweep at this single size");
        verify_cmd->add_option("--g-max", o.g_max, "Upper end of the sweep");
        verify_cmd->add_flag("--witness-all", o.witness_all, "List every maximizer where applicable");
        add_output_flags(verify_cmd, o);

        auto kodaira = app.add_subcommand("kodaira", "Kodaira fibration budget for a fiber genus");
        kodaira->add_option("--genus", o.genus, "Fiber genus");
        kodaira->add_option("--g", o.g, "Same as --genus");
        kodaira->add_flag("--require-feasible", o.require_feasible, "Exit 3 when the budget is below 2");
        add_output_flags(kodaira, o);

        auto realize = app.add_subcommand("realize", "Find and plan a family with a given monodromy group");
        realize->add_option("target", o.target, "Group such as \"Sp(4) x Sp(6)\" or \"SUForm(2,2)\"")->required();
        realize->add_option("--g", o.g, "Total dimension g'")->required();
        realize->add_flag("--require-feasible", o.require_feasible, "Exit 3 when the realized plan is infeasible");
        add_output_flags(realize, o);

        try {
            vector<string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }
        catch (const CLI::ParseError & e) {
            int code = app.exit(e, out, err);
            return code == 0 ? exit_ok : exit_usage;
        }

        Report report;
        try {
            auto start = std::chrono::steady_clock::now();
            if (plan->parsed())
                report = run_plan(o);
            else if (strata->parsed())
                report = run_strata(o);
            else if (gamma->parsed())
                report = run_gamma(o);
            else if (verify_cmd->parsed())
                report = run_verify(o);
            else if (kodaira->parsed())
                report = run_kodaira(o);
            else
                report = run_realize(o);
            if (o.timing)
                report.result["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start).count();
        }
        catch (const Error & e) {
            err << "error: " << e.what() << "\n";
            return e.kind() == ErrorKind::InternalMismatch ? exit_disagreement : exit_usage;
        }

        auto text = render(report, o.json);
        if (o.out.empty())
            out << text;
        else {
            std::ofstream file{o.out};
            if (! (file << text)) {
                err << "error: cannot write " << o.out << "\n";
                return exit_usage;
            }
        }
        return report.exit_code;
    }
}
