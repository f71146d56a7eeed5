#pragma once

#include "gforge/problem.hpp"

namespace gforge {

struct RunOptions {
    std::map<std::string, std::string> params;  // overrides for file parameters
    std::optional<int> max_degree;
    std::optional<int> max_homological;
    std::optional<std::string> field_override;  // "rational" or a prime
    bool assert_noetherian = false;
    bool assert_koszul = false;
    bool oracle = false;
    std::string label;  // echoed into the report
};

struct RunResult {
    nlohmann::json report;
    int exit_code;  // 0 ok, 2 verification failure, 3 undetermined at bound, 4 parse error
};

// commands: hilbert | check-twist | resolve | ext | hdet | det | nakayama | all
RunResult run(const std::string& command, const ProblemFile& problem,
              const RunOptions& opt);

std::string render_text(const nlohmann::json& report);

}  // namespace gforge
