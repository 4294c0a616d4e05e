#include "coswave/run_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace coswave {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

json grid_to_json(const Grid& grid) {
    return json{{"mode", grid.mode == GridMode::Cartesian1d ? "cartesian1d" : "radial"},
                {"dim", grid.dim},
                {"domain_radius", grid.length},
                {"points", grid.points}};
}

Grid grid_from_json(const json& j) {
    Grid g;
    g.mode = j.at("mode").get<std::string>() == "radial" ? GridMode::Radial : GridMode::Cartesian1d;
    g.dim = j.at("dim").get<int>();
    g.length = j.at("domain_radius").get<double>();
    g.points = j.at("points").get<int>();
    return g;
}

json run_to_json(const RunResult& res) {
    json j;
    j["verdict"] = to_string(res.verdict);
    if (res.lifespan) j["lifespan"] = *res.lifespan;
    j["crossing_time"] = res.crossing_time;
    j["tail_correction"] = res.tail_correction;
    j["termination"] = res.termination;
    j["steps"] = res.steps;
    j["support_tol"] = res.support_tol;
    j["grid"] = grid_to_json(res.grid);
    return j;
}

}  // namespace

json outcome_to_json(const SimulationOutcome& outcome) {
    json j;
    j["verdict"] = to_string(outcome.verdict);
    if (outcome.lifespan) j["lifespan"] = *outcome.lifespan;
    j["primary"] = run_to_json(outcome.primary);
    if (outcome.refined) {
        j["refined"] = run_to_json(*outcome.refined);
        j["refinement_rel_diff"] = outcome.refinement_rel_diff;
        j["refinement_consistent"] = outcome.refinement_consistent;
    }
    return j;
}

void write_run(const std::string& dir, const json& config_echo, const SimulationOutcome& outcome) {
    fs::create_directories(dir);
    {
        std::ofstream out(dir + "/config.json");
        out << config_echo.dump(2) << "\n";
    }
    {
        std::ofstream out(dir + "/histories.csv");
        out << "t,supnorm,l1,support_radius,dt\n";
        for (const auto& row : outcome.primary.history) {
            out << format_double(row.t) << ',' << format_double(row.supnorm) << ','
                << format_double(row.l1) << ',' << format_double(row.support_radius) << ','
                << format_double(row.dt) << '\n';
        }
    }
    {
        std::ofstream out(dir + "/outcome.json");
        out << outcome_to_json(outcome).dump(2) << "\n";
    }
    if (!outcome.primary.snapshots.empty()) {
        std::ofstream out(dir + "/fields.csv");
        out << "t,x,u,v\n";
        const Grid& grid = outcome.primary.grid;
        for (const auto& snap : outcome.primary.snapshots) {
            for (std::size_t i = 0; i < grid.size(); ++i) {
                out << format_double(snap.t) << ',' << format_double(grid.coord(i)) << ','
                    << format_double(snap.u[i]) << ',' << format_double(snap.v[i]) << '\n';
            }
        }
    }
}

StoredRun read_run(const std::string& dir) {
    StoredRun run;
    {
        std::ifstream in(dir + "/config.json");
        if (!in) throw std::runtime_error("missing config.json in " + dir);
        in >> run.config;
    }
    {
        std::ifstream in(dir + "/outcome.json");
        if (!in) throw std::runtime_error("missing outcome.json in " + dir);
        in >> run.outcome;
    }
    run.grid = grid_from_json(run.outcome.at("primary").at("grid"));
    {
        std::ifstream in(dir + "/histories.csv");
        if (!in) throw std::runtime_error("missing histories.csv in " + dir);
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            HistoryRow row;
            if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &row.t, &row.supnorm, &row.l1,
                            &row.support_radius, &row.dt) != 5)
                throw std::runtime_error("malformed histories.csv row: " + line);
            run.history.push_back(row);
        }
    }
    const fs::path fields = fs::path(dir) / "fields.csv";
    if (fs::exists(fields)) {
        std::ifstream in(fields);
        std::string line;
        std::getline(in, line);  // header
        const std::size_t m = run.grid.size();
        FieldState current;
        std::size_t idx = 0;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            double t, x, u, v;
            if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &t, &x, &u, &v) != 4)
                throw std::runtime_error("malformed fields.csv row: " + line);
            if (idx == 0) {
                current = FieldState{};
                current.t = t;
                current.u.reserve(m);
                current.v.reserve(m);
            }
            current.u.push_back(u);
            current.v.push_back(v);
            if (++idx == m) {
                run.snapshots.push_back(std::move(current));
                idx = 0;
            }
        }
        if (idx != 0) throw std::runtime_error("fields.csv truncated mid-snapshot");
    }
    return run;
}

void write_sweep_csv(const std::string& path,
                     const std::vector<std::tuple<double, std::string, double, std::string>>& rows) {
    std::ofstream out(path);
    out << "epsilon,verdict,lifespan,termination\n";
    for (const auto& [eps, verdict, lifespan, termination] : rows) {
        out << format_double(eps) << ',' << verdict << ','
            << (lifespan > 0.0 ? format_double(lifespan) : std::string("")) << ',' << termination
            << '\n';
    }
}

}  // namespace coswave
