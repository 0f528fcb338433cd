#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hardylab/curvature.hpp"
#include "hardylab/hardy.hpp"
#include "hardylab/weights.hpp"

namespace hardylab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// CLI exit codes
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitGate = 3;
constexpr int kExitFail = 4;

struct ResultRow {
    std::string scenario;
    std::vector<std::pair<std::string, std::string>> params;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 0.0;
    double margin = 0.0;
    std::string verdict;  // pass | fail | divergent

    void param(const std::string& key, const std::string& value) {
        params.emplace_back(key, value);
    }
};

struct Scenario {
    std::string name;
    std::vector<RadialModel> models;
    std::vector<WeightSpec> weights;
    std::vector<CurvatureHypothesis> hypotheses;
    std::optional<TheoremId> theorem;
    std::string mode = "both";  // sphere_prop: identity | quotient | both
    std::vector<double> p_values;
    std::vector<double> eps_list;
    std::vector<std::pair<int, double>> pairs;  // (n, p) cases
    int grid = 2048;
    double tol = 1e-10;
    int trial_count = -1;  // -1: default suite; 0: explicit empty (error)
    bool include_extremizers = true;
    std::string out_path;
    std::string format = "csv";
};

Scenario parse_config(const nlohmann::json& cfg);
Scenario load_config_file(const std::string& path);

/// Runs the scenario and returns one row per check; throws ConfigError or
/// GateError for the corresponding CLI exit codes.
std::vector<ResultRow> run_scenario(const Scenario& s);

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& os);
void emit_json(const std::vector<ResultRow>& rows, std::ostream& os);
void emit_table(const std::vector<ResultRow>& rows, const std::string& format,
                const std::string& path);

bool any_failure(const std::vector<ResultRow>& rows);

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

}  // namespace hardylab
