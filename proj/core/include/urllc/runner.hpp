#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace urllc::runner {

using json = nlohmann::json;

/// Process exit codes of the command line runner.
enum class ExitCode : int { ok = 0, validation = 2, runtime = 3 };

/// Configuration problem, reported with the JSON path of the offending entry.
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// A scenario id, its master seed, an output directory and the scenario parameters.
/// `params` always holds the full parameter set with defaults filled in.
struct ExperimentConfig {
    std::string scenario;
    std::uint64_t master_seed = 0;
    std::filesystem::path output_dir;
    json params = json::object();

    /// Validates every key and range. Unknown keys are rejected.
    static ExperimentConfig from_json(const json& doc);
    json to_json() const;
};

ExperimentConfig load_config(const std::filesystem::path& path);

/// Known scenario ids.
std::vector<std::string> scenario_ids();

/// Default parameter block of a scenario.
json default_params(const std::string& scenario);

struct RunOptions {
    unsigned jobs = 1;
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> output_dir;
};

struct OutputFile {
    std::string name;
    std::uint64_t bytes = 0;
    std::string fnv1a64;
};

struct RunReport {
    std::filesystem::path output_dir;
    std::vector<OutputFile> files;
    /// Ordered scenario summary metrics.
    std::vector<std::pair<std::string, double>> summary;
    json manifest;
};

/// Child seed of sweep point `index` (0 for a plain run).
std::uint64_t scenario_seed(std::uint64_t master_seed, const std::string& scenario, std::uint64_t index);

/// Runs one scenario, writing `<scenario>*.csv` and `manifest.json` into the output
/// directory. Files written before a failure are removed.
RunReport run(const ExperimentConfig& config, const RunOptions& options = {});

/// Runs the scenario once per value of the dotted parameter path (for example
/// `params.activation_prob`) into `point_<i>/` subdirectories and writes
/// `sweep_summary.csv` and `sweep_manifest.json`. Every point is validated first.
RunReport sweep(const ExperimentConfig& config, const std::string& parameter_path,
                const std::vector<json>& values, const RunOptions& options = {});

/// Parses a comma separated value list; each item is read as JSON when possible and as a
/// string otherwise.
std::vector<json> parse_value_list(const std::string& text);

/// Hex FNV-1a 64 digest of a file's bytes.
std::string file_digest(const std::filesystem::path& path);

}  // namespace urllc::runner
