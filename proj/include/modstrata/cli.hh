#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace modstrata::cli
{
    inline constexpr std::string_view tool_name = "moduli-strata";
    inline constexpr std::string_view tool_version = "0.1.0";

    enum ExitCode : int
    {
        exit_ok = 0,
        exit_usage = 1,
        exit_disagreement = 2,
        exit_infeasible = 3
    };

    /// Parses args (without the program name), runs one subcommand and returns the exit code.
    /// The report goes to out, or to the --out file; diagnostics go to err.
    auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;
}
