#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "coswave/scale_factor.hpp"
#include "coswave/solver.hpp"

namespace coswave {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    double eps0 = 2.0;
    double ratio = 0.5;
    int count = 8;
    int tail = 4;
    int workers = 1;
    double tolerance = 0.15;
};

struct OutputConfig {
    int snapshot_count = 0;       // 0 disables stored fields
    double snapshot_horizon = 0;  // 0 -> 0.95 * lifespan (or t_max)
};

struct Config {
    ProblemSpec problem;
    ExperimentConfig experiment;
    OutputConfig output;
    nlohmann::json raw;  // verbatim echo
};

ScaleFactor scale_factor_from_json(const nlohmann::json& j);
nlohmann::json scale_factor_to_json(const ScaleFactor& sf);

// Schema-validated parse; unknown keys rejected.
Config parse_config(const nlohmann::json& j);
Config load_config(const std::string& path);

}  // namespace coswave
