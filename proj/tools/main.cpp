#include "cohclass/cli.hpp"

#include <cstdio>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const cohclass::CliResult res = cohclass::run_cli(args);
    std::fputs(res.out.c_str(), stdout);
    return res.exit_code;
}
