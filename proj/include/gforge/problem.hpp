#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gforge/scalar.hpp"

namespace gforge {

// Parsed problem description. Expressions stay as strings here; parameter
// substitution happens when the pipeline builds the algebras.
struct ProblemFile {
    Field field;

    std::vector<std::string> a_gens, b_gens;
    std::vector<int> a_degrees, b_degrees;
    std::vector<std::string> a_relations, b_relations;

    // sigma[g][i][j]: entry expressions per generator of A
    std::vector<std::vector<std::vector<std::string>>> sigma;
    // delta[g][i]: optional tail expressions per generator of A
    std::optional<std::vector<std::vector<std::string>>> delta;

    std::map<std::string, std::string> parameters;
    int max_degree = 8;
    int max_homological = 6;
    bool assert_noetherian = false;
    bool assert_koszul = false;
};

ProblemFile parse_problem(const nlohmann::json& doc);
ProblemFile load_problem(const std::string& path);

}  // namespace gforge
