#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kaccoh/weyl.hpp"

namespace kaccoh {

struct RunConfig {
    std::string command;               // classify | category | invariants | cohomology |
                                       // oracle-check | conjecture | borel | prop51
    std::string input_path;
    int max_degree = 24;               // cohomological cutoff D
    std::optional<std::vector<int>> order;  // 1-based positions into the maximal list
    unsigned long cap = kDefaultOrderCap;
    std::string subset;                // for invariants/prop51: "1,3" | "all" | "none"
    std::string format = "table";      // table | json
    std::string output_path;           // empty: stdout
};

struct ExecResult {
    int status = 0;
    std::string report;
};

// Runs one command against the input matrix and renders the report;
// status 0 iff no errors occurred (and, for oracle-check, both pipelines
// agreed everywhere).
ExecResult execute(const RunConfig& config);

int run_cli(int argc, const char* const* argv);

}  // namespace kaccoh
