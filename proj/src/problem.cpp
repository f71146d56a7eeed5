#include "gforge/problem.hpp"

#include <fstream>

#include "gforge/error.hpp"

namespace gforge {

namespace {

using nlohmann::json;

void expect(bool cond, const std::string& what) {
    if (!cond) throw ParseError(0, "problem file: " + what);
}

void parse_algebra(const json& j, const std::string& which,
                   std::vector<std::string>& gens, std::vector<int>& degrees,
                   std::vector<std::string>& relations) {
    expect(j.is_object(), which + " must be an object");
    expect(j.contains("generators") && j["generators"].is_array(),
           which + ".generators must be an array");
    for (const auto& g : j["generators"]) {
        if (g.is_string()) {
            gens.push_back(g.get<std::string>());
            degrees.push_back(1);
        } else if (g.is_object()) {
            expect(g.contains("name") && g["name"].is_string(),
                   which + " generator needs a name");
            gens.push_back(g["name"].get<std::string>());
            degrees.push_back(g.value("degree", 1));
        } else {
            expect(false, which + " generator must be a string or object");
        }
    }
    if (j.contains("relations")) {
        expect(j["relations"].is_array(), which + ".relations must be an array");
        for (const auto& r : j["relations"]) {
            expect(r.is_string(), which + " relation must be a string");
            relations.push_back(r.get<std::string>());
        }
    }
}

}  // namespace

ProblemFile parse_problem(const nlohmann::json& doc) {
    ProblemFile p;
    expect(doc.is_object(), "document must be an object");

    if (doc.contains("field")) {
        const auto& f = doc["field"];
        if (f.is_string()) {
            expect(f.get<std::string>() == "rational",
                   "field must be \"rational\" or a prime");
        } else if (f.is_number_unsigned() || f.is_number_integer()) {
            long v = f.get<long>();
            expect(v >= 2, "field prime must be >= 2");
            p.field = Field{uint64_t(v)};
        } else {
            expect(false, "field must be \"rational\" or a prime");
        }
    }

    expect(doc.contains("A") && doc.contains("B"), "algebras A and B are required");
    parse_algebra(doc["A"], "A", p.a_gens, p.a_degrees, p.a_relations);
    parse_algebra(doc["B"], "B", p.b_gens, p.b_degrees, p.b_relations);

    expect(doc.contains("sigma") && doc["sigma"].is_array(), "sigma matrix is required");
    size_t m = p.b_gens.size();
    expect(doc["sigma"].size() == p.a_gens.size(),
           "sigma needs one matrix per generator of A");
    for (const auto& mat : doc["sigma"]) {
        expect(mat.is_array() && mat.size() == m, "sigma matrices must be m x m");
        std::vector<std::vector<std::string>> rows;
        for (const auto& row : mat) {
            expect(row.is_array() && row.size() == m, "sigma matrices must be m x m");
            std::vector<std::string> entries;
            for (const auto& e : row) {
                expect(e.is_string(), "sigma entries must be expression strings");
                entries.push_back(e.get<std::string>());
            }
            rows.push_back(std::move(entries));
        }
        p.sigma.push_back(std::move(rows));
    }

    if (doc.contains("delta") && !doc["delta"].is_null()) {
        expect(doc["delta"].is_array() && doc["delta"].size() == p.a_gens.size(),
               "delta needs one vector per generator of A");
        std::vector<std::vector<std::string>> delta;
        for (const auto& vec : doc["delta"]) {
            expect(vec.is_array() && vec.size() == m, "delta vectors must have length m");
            std::vector<std::string> entries;
            for (const auto& e : vec) {
                expect(e.is_string(), "delta entries must be expression strings");
                entries.push_back(e.get<std::string>());
            }
            delta.push_back(std::move(entries));
        }
        p.delta = std::move(delta);
    }

    if (doc.contains("parameters")) {
        expect(doc["parameters"].is_object(), "parameters must be an object");
        for (const auto& [k, v] : doc["parameters"].items()) {
            expect(v.is_string(), "parameter values must be rational strings");
            p.parameters[k] = v.get<std::string>();
        }
    }

    if (doc.contains("bounds")) {
        const auto& b = doc["bounds"];
        p.max_degree = b.value("max_degree", p.max_degree);
        p.max_homological = b.value("max_homological", p.max_homological);
    }

    if (doc.contains("assertions")) {
        expect(doc["assertions"].is_array(), "assertions must be an array");
        for (const auto& a : doc["assertions"]) {
            std::string s = a.get<std::string>();
            if (s == "noetherian") p.assert_noetherian = true;
            else if (s == "koszul") p.assert_koszul = true;
            else expect(false, "unknown assertion '" + s + "'");
        }
    }
    return p;
}

ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open problem file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("problem file is not valid JSON: ") + e.what());
    }
    return parse_problem(doc);
}

}  // namespace gforge
