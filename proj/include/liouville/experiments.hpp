#pragma once

// Named experiments run by the command-line tool.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "liouville/quad.hpp"
#include "liouville/report.hpp"

namespace liouville {

struct ExperimentInfo {
    std::string name;
    std::string description;
    std::vector<std::string> params;  // keys accepted under "params"
};

const std::vector<ExperimentInfo>& experiment_registry();
const ExperimentInfo* find_experiment(const std::string& name);

struct ExperimentConfig {
    std::string name;
    QuadratureConfig quad;
    nlohmann::json params = nlohmann::json::object();
    std::filesystem::path out_dir;
};

/// Builds a config from an optional JSON document of the form
/// {"experiment": ..., "quadrature": {...}, "params": {...}}.
/// Throws InvalidConfigError naming the offending field.
ExperimentConfig make_experiment_config(const std::string& name, const nlohmann::json& doc);

/// Runs the experiment and writes report.json, CSVs and SVGs into
/// cfg.out_dir (skipped when out_dir is empty).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes a witness path as (theta, x, y, cumulative length), theta being
/// the Euclidean arc-length fraction.
void write_witness_csv(const std::filesystem::path& path, const ConformalMetric& m, const Polyline& poly,
                       const QuadratureConfig& cfg);

}  // namespace liouville
