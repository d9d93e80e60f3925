#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "gam/netsim.hpp"

namespace gam::cli {

// Environment variable naming the default output directory.
inline constexpr const char* kOutputEnv = "GAM_OUTPUT_DIR";
inline constexpr const char* kDefaultOutput = "gam_out";

struct ExperimentConfig {
    std::uint64_t seed = 1;
    double base_rate = 90.0;
    double duration = 10.0;
    std::vector<Tier> tiers = default_tiers();
    std::vector<PipelineKind> pipelines{std::begin(kAllPipelines), std::end(kAllPipelines)};
    std::vector<int> skip_n{2, 3};
    std::filesystem::path output_dir;
    int players = 1;
    std::map<int, double> wait_time;
    MotorBlend blend = MotorBlend::Lerp;
    int jobs = 1;
};

// Defaults, then the JSON file (if any), then the output-dir environment
// variable when the file sets none. Throws std::invalid_argument on bad input.
ExperimentConfig load_config(const std::filesystem::path& json_file);
ExperimentConfig parse_config(const std::string& json_text);
void check_config(const ExperimentConfig& cfg);

// Runs one command line (without the program name). Returns the exit status:
// 0 success, 1 a check failed, 2 usage or configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Header -> per-column kind ('i' integer, 'f' number, 's' text) for every CSV
// the tool writes.
const std::map<std::string, std::string>& csv_schemas();

// Checks every *.csv below dir against csv_schemas(); returns the problems.
std::vector<std::string> validate_csv_dir(const std::filesystem::path& dir);

}  // namespace gam::cli
