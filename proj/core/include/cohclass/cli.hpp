#pragma once

#include <string>
#include <vector>

namespace cohclass {

struct CliResult {
    int exit_code = 0;  // 0: pass, 1: usage/config error, 2: counterexample
    std::string out;    // text written to stdout
};

/// Full command dispatch; args excludes the program name. Commands:
///   ass       --config FILE [--threads N] [--output FILE]
///   classify  --config FILE ...
///   verify (takahashi|gabriel-serre|ie-torf|serre-in-torf) --config FILE ...
///   lattice   --config FILE ...
///   p1 (hom|ext|decompose) LITERAL [LITERAL] --field F
CliResult run_cli(const std::vector<std::string>& args);

std::string cli_usage();

}  // namespace cohclass
