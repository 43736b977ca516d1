#include <modstrata/cli.hh>

#include <iostream>
#include <string>
#include <vector>

auto main(int argc, char * argv[]) -> int
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return modstrata::cli::run(args, std::cout, std::cerr);
}
