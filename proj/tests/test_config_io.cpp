#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "coswave/config.hpp"
#include "coswave/run_io.hpp"
#include "coswave/solver.hpp"

using namespace coswave;
using nlohmann::json;

namespace {

json minimal_config() {
    return json{
        {"problem",
         {{"dim", 3},
          {"p", 2.0},
          {"mu", 3.0},
          {"epsilon", 2.0},
          {"grid", {{"domain_radius", 2.2}, {"points", 101}}},
          {"stepping", {{"t_max", 20.0}}}}},
        {"scale_factor", {{"kind", "de_sitter"}, {"H", 1.0}}},
    };
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("coswave_test_" + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("config parses and keeps a verbatim echo") {
    const json j = minimal_config();
    const Config cfg = parse_config(j);
    CHECK(cfg.problem.p == 2.0);
    CHECK(cfg.problem.mu == 3.0);
    CHECK(cfg.problem.epsilon == 2.0);
    CHECK(cfg.problem.grid_points == 101);
    CHECK(cfg.problem.sf.kind() == ScaleFactorKind::DeSitter);
    CHECK(cfg.raw == j);
}

TEST_CASE("unknown keys are rejected at every level") {
    json j = minimal_config();
    j["surprise"] = 1;
    CHECK_THROWS_AS(parse_config(j), ConfigError);

    j = minimal_config();
    j["problem"]["typo_key"] = 1;
    CHECK_THROWS_AS(parse_config(j), ConfigError);

    j = minimal_config();
    j["problem"]["grid"]["pints"] = 3;
    CHECK_THROWS_AS(parse_config(j), ConfigError);

    j = minimal_config();
    j["scale_factor"]["hubble"] = 1.0;
    CHECK_THROWS_AS(parse_config(j), ConfigError);

    j = minimal_config();
    j["output"] = {{"cadence", 3}};
    CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("config type and invariant errors surface as ConfigError") {
    json j = minimal_config();
    j["problem"]["p"] = "two";
    CHECK_THROWS_AS(parse_config(j), ConfigError);

    j = minimal_config();
    j["problem"]["nonlinearity"] = "cubic";
    CHECK_THROWS_AS(parse_config(j), ConfigError);

    j = minimal_config();
    j.erase("scale_factor");
    CHECK_THROWS_AS(parse_config(j), ConfigError);

    // admissibility violation caught by validate()
    j = minimal_config();
    j["scale_factor"] = {{"kind", "constant"}, {"c", 1.0}};
    CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("scale factor JSON round trip") {
    for (const json sj : {json{{"kind", "de_sitter"}, {"H", 2.5}},
                          json{{"kind", "power_law"}, {"a0", 1.5}, {"alpha", 3.0}},
                          json{{"kind", "constant"}, {"c", 4.0}}}) {
        const auto sf = scale_factor_from_json(sj);
        CHECK(scale_factor_to_json(sf) == sj);
    }
    const json tj{{"kind", "tabulated"}, {"table", {{0.0, 1.0}, {1.0, 0.5}, {2.0, 0.4}}}};
    const auto sf = scale_factor_from_json(tj);
    CHECK(sf.kind() == ScaleFactorKind::Tabulated);
    CHECK(scale_factor_to_json(sf) == tj);
}

TEST_CASE("format_double round-trips exactly") {
    for (double x : {0.1, 1.0 / 3.0, 2.974477425402176, 1e-300, 12345.678901234567}) {
        const std::string s = format_double(x);
        CHECK(std::stod(s) == x);
    }
}

TEST_CASE("run artifacts round-trip through the directory format") {
    TempDir tmp;
    json j = minimal_config();
    j["output"] = {{"snapshot_count", 3}, {"snapshot_horizon", 1.0}};
    const Config cfg = parse_config(j);

    const auto outcome = estimate_lifespan(cfg.problem, {0.0, 0.5, 1.0});
    write_run(tmp.path.string(), cfg.raw, outcome);

    CHECK(std::filesystem::exists(tmp.path / "config.json"));
    CHECK(std::filesystem::exists(tmp.path / "histories.csv"));
    CHECK(std::filesystem::exists(tmp.path / "outcome.json"));
    CHECK(std::filesystem::exists(tmp.path / "fields.csv"));

    const auto stored = read_run(tmp.path.string());
    CHECK(stored.config == cfg.raw);
    CHECK(stored.grid.points == outcome.primary.grid.points);
    REQUIRE(stored.history.size() == outcome.primary.history.size());
    for (std::size_t i = 0; i < stored.history.size(); ++i) {
        CHECK(stored.history[i].t == outcome.primary.history[i].t);
        CHECK(stored.history[i].supnorm == outcome.primary.history[i].supnorm);
        CHECK(stored.history[i].support_radius == outcome.primary.history[i].support_radius);
    }
    REQUIRE(stored.snapshots.size() == outcome.primary.snapshots.size());
    for (std::size_t s = 0; s < stored.snapshots.size(); ++s) {
        CHECK(stored.snapshots[s].t == outcome.primary.snapshots[s].t);
        for (std::size_t i = 0; i < stored.grid.size(); ++i) {
            CHECK(stored.snapshots[s].u[i] == outcome.primary.snapshots[s].u[i]);
            CHECK(stored.snapshots[s].v[i] == outcome.primary.snapshots[s].v[i]);
        }
    }
}

TEST_CASE("identical configs produce byte-identical artifacts") {
    TempDir a, b;
    const Config cfg = parse_config(minimal_config());
    write_run(a.path.string(), cfg.raw, estimate_lifespan(cfg.problem));
    write_run(b.path.string(), cfg.raw, estimate_lifespan(cfg.problem));
    for (const char* name : {"config.json", "histories.csv", "outcome.json"}) {
        std::ifstream fa(a.path / name), fb(b.path / name);
        const std::string sa((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
        const std::string sb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
        CHECK(sa == sb);
    }
}

TEST_CASE("load_config rejects missing and malformed files") {
    CHECK_THROWS_AS(load_config("/nonexistent/path.json"), ConfigError);
    TempDir tmp;
    const auto bad = tmp.path / "bad.json";
    std::ofstream(bad) << "{ not json";
    CHECK_THROWS_AS(load_config(bad.string()), ConfigError);
}
