// hardylab: config-driven verification runs for sharp radial Hardy-type
// inequalities on rotationally symmetric closed weighted manifolds.
//
// Exit codes: 0 success, 2 config error, 3 curvature gate failure,
// 4 at least one failing or divergent row.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hardylab/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"radial Hardy inequality verification lab"};

    std::string config_path;
    std::string scenario_override;
    std::string out_override;
    std::string format_override;
    double tol_override = 0.0;
    int grid_override = 0;

    app.add_option("--config", config_path, "JSON scenario config")->required();
    app.add_option("--scenario", scenario_override,
                   "override the scenario name from the config");
    app.add_option("--out", out_override, "output table path");
    app.add_option("--format", format_override, "csv or json");
    app.add_option("--tol", tol_override, "absolute quadrature tolerance");
    app.add_option("--grid", grid_override, "grid points for a.e. checks");

    CLI11_PARSE(app, argc, argv);

    using namespace hardylab;
    try {
        Scenario s = load_config_file(config_path);
        if (!scenario_override.empty()) s.name = scenario_override;
        if (!out_override.empty()) s.out_path = out_override;
        if (!format_override.empty()) s.format = format_override;
        if (tol_override > 0.0) s.tol = tol_override;
        if (grid_override > 0) s.grid = grid_override;
        if (s.format != "csv" && s.format != "json")
            throw ConfigError("format must be csv or json");

        const std::vector<ResultRow> rows = run_scenario(s);
        if (s.out_path.empty()) {
            if (s.format == "json")
                emit_json(rows, std::cout);
            else
                emit_csv(rows, std::cout);
        } else {
            emit_table(rows, s.format, s.out_path);
        }
        if (any_failure(rows)) {
            std::cerr << "hardylab: failing or divergent rows present\n";
            return kExitFail;
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "hardylab: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const GateError& e) {
        std::cerr << "hardylab: " << e.what() << "\n";
        return kExitGate;
    } catch (const std::exception& e) {
        std::cerr << "hardylab: error: " << e.what() << "\n";
        return kExitConfig;
    }
}
