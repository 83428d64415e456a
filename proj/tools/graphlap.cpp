#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graphlap/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for discrete (magnetic) Schrodinger operators on finite "
                 "weighted graphs"};

    graphlap::ExperimentConfig config;
    std::vector<std::string> raw_params;

    app.add_option("--graph", config.graph_path, "Graph JSON input");
    app.add_option("--bundle", config.bundle_path, "Bundle JSON input");
    app.add_option("--metric", config.metric_path, "Metric JSON input");
    app.add_option("--analysis", config.analysis,
                   "One of: validate, assemble, spectrum, green-kato, bounded, "
                   "criterion-measure, criterion-metric, capacity, boundary-capacity, "
                   "recurrence, example")
        ->required();
    app.add_option("--param", raw_params, "Analysis parameter key=value (repeatable)");
    app.add_option("--out", config.out_dir, "Output directory (default: current)");
    app.add_option("--seed", config.seed, "Seed for randomized suites");

    CLI11_PARSE(app, argc, argv);

    for (const auto& kv : raw_params) {
        auto pos = kv.find('=');
        if (pos == std::string::npos) {
            std::cerr << "error: --param expects key=value, got " << kv << "\n";
            return 2;
        }
        config.params[kv.substr(0, pos)] = kv.substr(pos + 1);
    }

    int code = graphlap::run(config);
    if (code != 0) std::cerr << "run finished with exit code " << code << " (see report.json)\n";
    return code;
}
