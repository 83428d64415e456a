#ifndef GRAPHLAP_RUNNER_HPP
#define GRAPHLAP_RUNNER_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace graphlap {

inline constexpr const char* kVersion = "0.1.0";

/// One batch invocation: exactly one analysis, optional input files,
/// free-form string parameters validated per analysis.
struct ExperimentConfig {
    std::string graph_path;
    std::string bundle_path;
    std::string metric_path;
    std::string analysis;
    std::map<std::string, std::string> params;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
};

/// Runs the analysis, writes report.json (and analysis CSVs) into out_dir.
/// Returns 0 on success, 2 on validation failure, 3 on numerical failure;
/// report.json is written even on failure, with the machine-readable error.
int run(const ExperimentConfig& config);

/// Writes the input files of a named example family into out_dir.
/// Names: z-line, z-line-nu, complete-union, circle-packing, hardy-stub.
std::vector<std::string> emit_example(const std::string& name,
                                      const std::map<std::string, std::string>& params,
                                      const std::string& out_dir);

} // namespace graphlap

#endif
