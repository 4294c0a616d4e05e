#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coswave/solver.hpp"

namespace coswave {

// Deterministic shortest round-trip formatting for CSV/JSON output.
std::string format_double(double x);

struct StoredRun {
    nlohmann::json config;
    nlohmann::json outcome;
    Grid grid;
    std::vector<HistoryRow> history;
    std::vector<FieldState> snapshots;  // present when fields.csv exists
};

nlohmann::json outcome_to_json(const SimulationOutcome& outcome);

// Writes config.json (verbatim echo), histories.csv, outcome.json and, when
// snapshots were stored, fields.csv into `dir` (created if needed).
void write_run(const std::string& dir, const nlohmann::json& config_echo,
               const SimulationOutcome& outcome);

StoredRun read_run(const std::string& dir);

void write_sweep_csv(const std::string& path,
                     const std::vector<std::tuple<double, std::string, double, std::string>>& rows);

}  // namespace coswave
