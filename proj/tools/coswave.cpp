#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI/CLI.hpp>
#include <nlohmann/json.hpp>

#include "coswave/config.hpp"
#include "coswave/experiments.hpp"
#include "coswave/functional.hpp"
#include "coswave/geometry.hpp"
#include "coswave/oracle.hpp"
#include "coswave/run_io.hpp"
#include "coswave/scale_factor.hpp"
#include "coswave/solver.hpp"

namespace {

using coswave::Config;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;

int config_error(const std::string& msg) {
    std::cerr << json{{"error", msg}, {"kind", "config"}}.dump() << "\n";
    return kExitConfigError;
}

int default_workers() {
    if (const char* env = std::getenv("COSWAVE_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> out;
    if (count <= 1) {
        out.push_back(lo);
        return out;
    }
    for (int k = 0; k < count; ++k) out.push_back(lo + (hi - lo) * double(k) / double(count - 1));
    return out;
}

json fit_to_json(const coswave::SweepFit& fit) {
    json points = json::array();
    for (const auto& [eps, T] : fit.points) points.push_back({eps, T});
    json j;
    j["points"] = points;
    j["tail"] = fit.tail;
    j["fitted"] = fit.fitted;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["r_squared"] = fit.r_squared;
    j["reference_exponent"] = fit.theorem_exp;
    j["tolerance"] = fit.tolerance;
    j["pass"] = fit.pass;
    j["monotone"] = fit.monotone;
    return j;
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

int run_simulate(const std::string& config_path, const std::string& out_dir) {
    Config cfg = coswave::load_config(config_path);
    std::vector<double> snapshot_times;
    if (cfg.output.snapshot_count > 0) {
        double horizon = cfg.output.snapshot_horizon;
        if (horizon <= 0.0) {
            // Pilot run to locate the lifespan before choosing snapshot times.
            const auto pilot = coswave::run_single(cfg.problem);
            horizon = pilot.lifespan ? 0.95 * *pilot.lifespan
                                     : (pilot.history.empty() ? cfg.problem.stepping.t_max
                                                              : pilot.history.back().t);
        }
        snapshot_times = linspace(0.0, horizon, cfg.output.snapshot_count);
    }
    const auto outcome = coswave::estimate_lifespan(cfg.problem, snapshot_times);
    coswave::write_run(out_dir, cfg.raw, outcome);
    std::cout << coswave::outcome_to_json(outcome).dump(2) << "\n";
    return kExitOk;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_dir,
                  std::optional<double> eps0, std::optional<double> ratio,
                  std::optional<int> count, std::optional<int> workers, std::optional<int> tail,
                  std::optional<double> tolerance) {
    Config cfg = coswave::load_config(config_path);
    auto& exp = cfg.experiment;
    if (eps0) exp.eps0 = *eps0;
    if (ratio) exp.ratio = *ratio;
    if (count) exp.count = *count;
    if (workers) exp.workers = *workers;
    if (tail) exp.tail = *tail;
    if (tolerance) exp.tolerance = *tolerance;

    const auto epsilons = coswave::geometric_epsilons(exp.eps0, exp.ratio, exp.count);
    const auto runs = coswave::run_sweep(cfg.problem, epsilons, exp.workers);

    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::tuple<double, std::string, double, std::string>> rows;
    std::vector<std::pair<double, double>> fit_points;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto& run = runs[k];
        rows.emplace_back(run.epsilon, to_string(run.result.verdict),
                          run.result.lifespan.value_or(0.0), run.result.termination);
        if (run.result.verdict == coswave::Verdict::BlewUp && run.result.lifespan)
            fit_points.emplace_back(run.epsilon, *run.result.lifespan);

        coswave::SimulationOutcome outcome;
        outcome.verdict = run.result.verdict;
        outcome.lifespan = run.result.lifespan;
        outcome.primary = run.result;
        json echo = cfg.raw;
        echo["problem"]["epsilon"] = run.epsilon;
        char name[32];
        std::snprintf(name, sizeof(name), "eps_%02zu", k);
        coswave::write_run((fs::path(out_dir) / "runs" / name).string(), echo, outcome);
    }
    coswave::write_sweep_csv((fs::path(out_dir) / "sweep.csv").string(), rows);

    const double exponent = coswave::theorem_exponent(cfg.problem.p, cfg.problem.mu);
    const auto fit = coswave::fit_loglog(fit_points, exp.tail, exponent, exp.tolerance);
    json fj = fit_to_json(fit);
    fj["p"] = cfg.problem.p;
    fj["mu"] = cfg.problem.mu;
    write_json((fs::path(out_dir) / "fit.json").string(), fj);
    std::cout << fj.dump(2) << "\n";
    return fit.fitted && fit.pass ? kExitOk : kExitCheckFailed;
}

int run_oracle(double p, double mu, double eps_start, double eps_ratio, int count, double v0,
               double v1, int tail, double tolerance, const std::string& out_dir) {
    const auto epsilons = coswave::geometric_epsilons(eps_start, eps_ratio, count);
    const auto points = coswave::ode_lifespan_sweep(p, mu, v0, v1, epsilons);

    std::vector<std::tuple<double, std::string, double, std::string>> rows;
    std::vector<std::pair<double, double>> fit_points;
    for (const auto& pt : points) {
        rows.emplace_back(pt.epsilon, pt.lifespan ? "BlewUp" : "ReachedTmax",
                          pt.lifespan.value_or(0.0), pt.lifespan ? "threshold" : "t_max");
        if (pt.lifespan) fit_points.emplace_back(pt.epsilon, *pt.lifespan);
    }
    const auto fit =
        coswave::fit_loglog(fit_points, tail, coswave::theorem_exponent(p, mu), tolerance);
    json fj = fit_to_json(fit);
    fj["p"] = p;
    fj["mu"] = mu;
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        coswave::write_sweep_csv((std::filesystem::path(out_dir) / "sweep.csv").string(), rows);
        write_json((std::filesystem::path(out_dir) / "fit.json").string(), fj);
    }
    std::cout << fj.dump(2) << "\n";
    return fit.fitted && fit.pass ? kExitOk : kExitCheckFailed;
}

int run_fit(const std::string& sweep_dir, int tail, std::optional<double> tolerance,
            std::optional<double> exponent) {
    namespace fs = std::filesystem;
    const fs::path dir(sweep_dir);
    std::ifstream csv(dir / "sweep.csv");
    if (!csv) throw coswave::ConfigError("missing sweep.csv in " + sweep_dir);

    std::vector<std::pair<double, double>> points;
    std::string line;
    std::getline(csv, line);  // header
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        double eps = 0.0, T = 0.0;
        char verdict[64] = {0};
        if (std::sscanf(line.c_str(), "%lf,%63[^,],%lf", &eps, verdict, &T) >= 2 && T > 0.0)
            points.emplace_back(eps, T);
    }

    double ref = 0.0;
    double tol = tolerance.value_or(0.15);
    if (exponent) {
        ref = *exponent;
    } else {
        std::ifstream prev(dir / "fit.json");
        if (!prev)
            throw coswave::ConfigError("no fit.json in " + sweep_dir +
                                       " and no --exponent given");
        json pj;
        prev >> pj;
        ref = pj.at("reference_exponent").get<double>();
        if (!tolerance) tol = pj.at("tolerance").get<double>();
    }

    const auto fit = coswave::fit_loglog(points, tail, ref, tol);
    const json fj = fit_to_json(fit);
    char name[48];
    std::snprintf(name, sizeof(name), "fit_tail%d.json", tail);
    write_json((dir / name).string(), fj);
    std::cout << fj.dump(2) << "\n";
    return fit.fitted && fit.pass ? kExitOk : kExitCheckFailed;
}

int run_verify_support(const std::string& run_dir, std::optional<double> slack_opt) {
    const auto run = coswave::read_run(run_dir);
    if (!run.config.contains("scale_factor"))
        throw coswave::ConfigError("stored config lacks scale_factor");
    const auto sf = coswave::scale_factor_from_json(run.config.at("scale_factor"));
    double R = 1.0;
    if (run.config.contains("problem") && run.config.at("problem").contains("data"))
        R = run.config.at("problem").at("data").value("radius", 1.0);

    const double h = run.grid.spacing();
    const double slack = slack_opt.value_or(2.0 * h);
    std::vector<std::pair<double, double>> samples;
    for (const auto& row : run.history) samples.emplace_back(row.t, row.support_radius);
    const auto report = coswave::check_support_containment(samples, R, sf, slack);

    json violations = json::array();
    for (const auto& v : report.violations)
        violations.push_back({{"t", v.t}, {"radius", v.radius}, {"bound", v.bound}});
    const json out{{"pass", report.pass},
                   {"max_excess", report.max_excess},
                   {"slack", slack},
                   {"spacing", h},
                   {"violations", violations}};
    std::cout << out.dump(2) << "\n";
    return report.pass ? kExitOk : kExitCheckFailed;
}

int run_verify_functional(const std::string& run_dir, std::vector<double> taus) {
    const auto run = coswave::read_run(run_dir);
    if (run.snapshots.empty())
        throw coswave::ConfigError("run has no stored fields; re-run simulate with snapshots");
    const json& pj = run.config.at("problem");
    const double p = pj.value("p", 2.0);
    const double mu = pj.value("mu", 0.0);
    double R = 1.0;
    if (pj.contains("data")) R = pj.at("data").value("radius", 1.0);
    const auto sf = coswave::scale_factor_from_json(run.config.at("scale_factor"));

    const double horizon = run.snapshots.back().t;
    bool ok = true;
    json reports = json::array();
    for (double tau : taus) {
        if (!(tau > 0.0) || tau > horizon) {
            reports.push_back({{"tau", tau}, {"skipped", "outside stored snapshot horizon"}});
            continue;
        }
        const auto rep = coswave::compute_functionals(run.snapshots, run.grid, tau, p, mu);
        const auto margins = coswave::check_CE_inequality(rep, tau, p, mu);
        const auto bounds = coswave::weight_bounds_check(tau, p, 2000);
        if (!bounds.finite || !std::isfinite(rep.residual)) ok = false;
        reports.push_back({{"tau", tau},
                           {"I_tau", rep.I_tau},
                           {"J", rep.J},
                           {"K1", rep.K1},
                           {"K2", rep.K2},
                           {"E_tau", rep.E_tau},
                           {"residual", rep.residual},
                           {"hoelder_constant", margins.hoelder_constant},
                           {"closure_constant", margins.closure_constant},
                           {"degenerate", margins.degenerate},
                           {"C1", bounds.c1},
                           {"C2", bounds.c2},
                           {"weights_finite", bounds.finite}});
    }

    json poincare = json::array();
    for (const auto& snap : run.snapshots) {
        const double radius = R + sf.horizon(snap.t);
        const auto rep = coswave::poincare_check(snap, run.grid, p, radius);
        if (!rep.degenerate && !rep.ok) ok = false;
        poincare.push_back({{"t", snap.t},
                            {"radius", radius},
                            {"ratio", rep.ratio},
                            {"fudge", rep.fudge},
                            {"degenerate", rep.degenerate},
                            {"ok", rep.ok}});
    }

    const json out{{"pass", ok}, {"taus", reports}, {"poincare", poincare}};
    write_json((std::filesystem::path(run_dir) / "functional_report.json").string(), out);
    std::cout << out.dump(2) << "\n";
    return ok ? kExitOk : kExitCheckFailed;
}

int run_check_scale_factor(const std::string& config_path, const std::string& kind, double H,
                           double a0, double alpha, double c) {
    std::optional<coswave::ScaleFactor> sf;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw coswave::ConfigError("cannot open " + config_path);
        json j;
        try {
            in >> j;
        } catch (const json::parse_error& e) {
            throw coswave::ConfigError(std::string("parse error: ") + e.what());
        }
        sf = coswave::scale_factor_from_json(j.contains("scale_factor") ? j.at("scale_factor") : j);
    } else if (!kind.empty()) {
        try {
            if (kind == "de_sitter") sf = coswave::ScaleFactor::de_sitter(H);
            else if (kind == "power_law") sf = coswave::ScaleFactor::power_law(a0, alpha);
            else if (kind == "constant") sf = coswave::ScaleFactor::constant(c);
            else throw coswave::ConfigError("unknown --kind " + kind);
        } catch (const std::invalid_argument& e) {
            throw coswave::ConfigError(e.what());
        }
    } else {
        throw coswave::ConfigError("check-scale-factor needs --config or --kind");
    }

    const auto rep = sf->check_admissible();
    json out{{"kind", sf->kind_name()},
             {"positive", rep.positive},
             {"nonincreasing", rep.nonincreasing},
             {"integrable_root", rep.integrable_root},
             {"admissible", rep.admissible()}};
    if (rep.horizon_limit) out["horizon_limit"] = *rep.horizon_limit;
    std::cout << out.dump(2) << "\n";
    return rep.admissible() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coswave: blow-up laboratory for damped waves with decaying propagation speed"};
    app.require_subcommand(1);

    std::string config_path, out_dir, run_dir, sweep_dir, sf_kind;
    std::optional<double> eps0, ratio, tolerance, slack, exponent;
    std::optional<int> count, workers, tail_opt;
    double p = 2.0, mu = 0.0, eps_start = 1.0, eps_ratio = 0.5, v0 = 1.0, v1 = 1.0;
    double H = 1.0, a0 = 1.0, alpha = 3.0, c = 1.0;
    int o_count = 8, o_tail = 4, fit_tail = 4;
    double o_tolerance = 0.1;
    std::vector<double> taus;

    auto* sim = app.add_subcommand("simulate", "integrate one run and store its artifacts");
    sim->add_option("--config", config_path, "JSON config")->required();
    sim->add_option("--out", out_dir, "output directory")->required();

    auto* sweep = app.add_subcommand("sweep", "epsilon sweep of the PDE with a log-log fit");
    sweep->add_option("--config", config_path, "JSON config")->required();
    sweep->add_option("--out", out_dir, "output directory")->required();
    sweep->add_option("--eps0", eps0, "largest epsilon");
    sweep->add_option("--ratio", ratio, "geometric ratio in (0,1)");
    sweep->add_option("--count", count, "number of epsilons");
    sweep->add_option("--workers", workers, "concurrent runs (default $COSWAVE_WORKERS)");
    sweep->add_option("--tail", tail_opt, "fit tail size (>= 4)");
    sweep->add_option("--tolerance", tolerance, "slope tolerance");

    auto* oracle = app.add_subcommand("oracle", "companion-ODE lifespan sweep and fit");
    oracle->add_option("--p", p, "nonlinearity power")->required();
    oracle->add_option("--mu", mu, "damping coefficient")->required();
    oracle->add_option("--eps-start", eps_start, "largest epsilon")->required();
    oracle->add_option("--eps-ratio", eps_ratio, "geometric ratio");
    oracle->add_option("--count", o_count, "number of epsilons");
    oracle->add_option("--v0", v0, "data direction v(0) = eps*v0");
    oracle->add_option("--v1", v1, "data direction v'(0) = eps*v1");
    oracle->add_option("--tail", o_tail, "fit tail size");
    oracle->add_option("--tolerance", o_tolerance, "slope tolerance");
    oracle->add_option("--out", out_dir, "output directory (optional)");

    auto* fit = app.add_subcommand("fit", "re-fit a stored sweep with a different tail");
    fit->add_option("--sweep", sweep_dir, "sweep directory")->required();
    fit->add_option("--tail", fit_tail, "fit tail size")->required();
    fit->add_option("--tolerance", tolerance, "slope tolerance");
    fit->add_option("--exponent", exponent, "reference exponent (default from fit.json)");

    auto* vsup = app.add_subcommand("verify-support", "check the causal support bound of a run");
    vsup->add_option("--run", run_dir, "stored run directory")->required();
    vsup->add_option("--slack", slack, "allowed excess (default 2h)");

    auto* vfun = app.add_subcommand("verify-functional", "evaluate the weighted functionals");
    vfun->add_option("--run", run_dir, "stored run directory (needs fields.csv)")->required();
    vfun->add_option("--tau-list", taus, "weights' time scales")->delimiter(',')->required();

    auto* csf = app.add_subcommand("check-scale-factor", "admissibility report for a coefficient");
    csf->add_option("--config", config_path, "JSON config or bare scale-factor object");
    csf->add_option("--kind", sf_kind, "de_sitter | power_law | constant");
    csf->add_option("--H", H, "de Sitter rate");
    csf->add_option("--a0", a0, "power-law amplitude");
    csf->add_option("--alpha", alpha, "power-law exponent");
    csf->add_option("--c", c, "constant value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (*sim) return run_simulate(config_path, out_dir);
        if (*sweep) {
            if (!workers) workers = default_workers();
            return run_sweep_cmd(config_path, out_dir, eps0, ratio, count, workers, tail_opt,
                                 tolerance);
        }
        if (*oracle)
            return run_oracle(p, mu, eps_start, eps_ratio, o_count, v0, v1, o_tail, o_tolerance,
                              out_dir);
        if (*fit) return run_fit(sweep_dir, fit_tail, tolerance, exponent);
        if (*vsup) return run_verify_support(run_dir, slack);
        if (*vfun) return run_verify_functional(run_dir, taus);
        if (*csf) return run_check_scale_factor(config_path, sf_kind, H, a0, alpha, c);
    } catch (const coswave::ConfigError& e) {
        return config_error(e.what());
    } catch (const std::invalid_argument& e) {
        return config_error(e.what());
    } catch (const std::exception& e) {
        return config_error(e.what());
    }
    return kExitConfigError;
}
