#include "coswave/config.hpp"

#include <fstream>
#include <set>

namespace coswave {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key)) throw ConfigError("unknown key \"" + key + "\" in " + where);
}

double need_number(const json& j, const std::string& where, const std::string& key) {
    if (!j.contains(key)) throw ConfigError(where + " missing \"" + key + "\"");
    if (!j.at(key).is_number()) throw ConfigError(where + "." + key + " must be a number");
    return j.at(key).get<double>();
}

double opt_number(const json& j, const std::string& where, const std::string& key, double dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_number()) throw ConfigError(where + "." + key + " must be a number");
    return j.at(key).get<double>();
}

int opt_int(const json& j, const std::string& where, const std::string& key, int dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
    return j.at(key).get<int>();
}

bool opt_bool(const json& j, const std::string& where, const std::string& key, bool dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_boolean()) throw ConfigError(where + "." + key + " must be a boolean");
    return j.at(key).get<bool>();
}

}  // namespace

ScaleFactor scale_factor_from_json(const json& j) {
    reject_unknown(j, "scale_factor", {"kind", "H", "a0", "alpha", "c", "table"});
    if (!j.contains("kind")) throw ConfigError("scale_factor missing \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "de_sitter") return ScaleFactor::de_sitter(need_number(j, "scale_factor", "H"));
        if (kind == "power_law")
            return ScaleFactor::power_law(need_number(j, "scale_factor", "a0"),
                                          need_number(j, "scale_factor", "alpha"));
        if (kind == "constant") return ScaleFactor::constant(need_number(j, "scale_factor", "c"));
        if (kind == "tabulated") {
            if (!j.contains("table")) throw ConfigError("scale_factor missing \"table\"");
            std::vector<std::pair<double, double>> samples;
            for (const auto& row : j.at("table")) {
                if (!row.is_array() || row.size() != 2)
                    throw ConfigError("scale_factor.table rows must be [t, a] pairs");
                samples.emplace_back(row[0].get<double>(), row[1].get<double>());
            }
            return ScaleFactor::tabulated(std::move(samples));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("scale_factor: ") + e.what());
    }
    throw ConfigError("scale_factor.kind must be one of de_sitter, power_law, constant, tabulated");
}

json scale_factor_to_json(const ScaleFactor& sf) {
    json j;
    j["kind"] = sf.kind_name();
    switch (sf.kind()) {
        case ScaleFactorKind::DeSitter: j["H"] = sf.hubble(); break;
        case ScaleFactorKind::PowerLaw:
            j["a0"] = sf.amplitude();
            j["alpha"] = sf.exponent();
            break;
        case ScaleFactorKind::Constant: j["c"] = sf.constant_value(); break;
        case ScaleFactorKind::Tabulated: {
            json table = json::array();
            for (const auto& [t, a] : sf.table()) table.push_back({t, a});
            j["table"] = table;
            break;
        }
    }
    return j;
}

Config parse_config(const json& j) {
    reject_unknown(j, "config", {"problem", "scale_factor", "experiment", "output"});
    Config cfg;
    cfg.raw = j;

    if (!j.contains("problem")) throw ConfigError("config missing \"problem\"");
    const json& pj = j.at("problem");
    reject_unknown(pj, "problem",
                   {"dim", "p", "mu", "epsilon", "nonlinearity", "data", "grid", "stepping",
                    "allow_inadmissible", "support_tol_factor", "history_interval"});
    ProblemSpec& spec = cfg.problem;
    spec.dim = opt_int(pj, "problem", "dim", 3);
    spec.p = opt_number(pj, "problem", "p", 2.0);
    spec.mu = opt_number(pj, "problem", "mu", 0.0);
    spec.epsilon = opt_number(pj, "problem", "epsilon", 1.0);
    if (pj.contains("nonlinearity")) {
        const std::string nl = pj.at("nonlinearity").get<std::string>();
        if (nl == "power_u") spec.nonlinearity = Nonlinearity::PowerU;
        else if (nl == "power_grad_u") spec.nonlinearity = Nonlinearity::PowerGradU;
        else if (nl == "none") spec.nonlinearity = Nonlinearity::None;
        else throw ConfigError("problem.nonlinearity must be power_u, power_grad_u or none");
    }
    if (pj.contains("data")) {
        const json& dj = pj.at("data");
        reject_unknown(dj, "problem.data", {"radius", "u0_amp", "u1_amp"});
        spec.data.radius = opt_number(dj, "problem.data", "radius", 1.0);
        spec.data.u0_amp = opt_number(dj, "problem.data", "u0_amp", 1.0);
        spec.data.u1_amp = opt_number(dj, "problem.data", "u1_amp", 1.0);
    }
    if (pj.contains("grid")) {
        const json& gj = pj.at("grid");
        reject_unknown(gj, "problem.grid", {"domain_radius", "points"});
        spec.domain_radius = opt_number(gj, "problem.grid", "domain_radius", 3.0);
        spec.grid_points = opt_int(gj, "problem.grid", "points", 801);
    }
    if (pj.contains("stepping")) {
        const json& sj = pj.at("stepping");
        reject_unknown(sj, "problem.stepping",
                       {"cfl", "dt_min", "dt_max", "blowup_threshold", "growth_kappa", "t_max"});
        spec.stepping.cfl = opt_number(sj, "problem.stepping", "cfl", 0.25);
        spec.stepping.dt_min = opt_number(sj, "problem.stepping", "dt_min", 1e-10);
        spec.stepping.dt_max = opt_number(sj, "problem.stepping", "dt_max", 0.02);
        spec.stepping.blowup_threshold = opt_number(sj, "problem.stepping", "blowup_threshold", 1e8);
        spec.stepping.growth_kappa = opt_number(sj, "problem.stepping", "growth_kappa", 0.1);
        spec.stepping.t_max = opt_number(sj, "problem.stepping", "t_max", 50.0);
    }
    spec.allow_inadmissible = opt_bool(pj, "problem", "allow_inadmissible", false);
    spec.support_tol_factor = opt_number(pj, "problem", "support_tol_factor", 1e-12);
    spec.history_interval = opt_number(pj, "problem", "history_interval", 0.0);

    if (!j.contains("scale_factor")) throw ConfigError("config missing \"scale_factor\"");
    spec.sf = scale_factor_from_json(j.at("scale_factor"));

    if (j.contains("experiment")) {
        const json& ej = j.at("experiment");
        reject_unknown(ej, "experiment", {"eps0", "ratio", "count", "tail", "workers", "tolerance"});
        cfg.experiment.eps0 = opt_number(ej, "experiment", "eps0", cfg.experiment.eps0);
        cfg.experiment.ratio = opt_number(ej, "experiment", "ratio", cfg.experiment.ratio);
        cfg.experiment.count = opt_int(ej, "experiment", "count", cfg.experiment.count);
        cfg.experiment.tail = opt_int(ej, "experiment", "tail", cfg.experiment.tail);
        cfg.experiment.workers = opt_int(ej, "experiment", "workers", cfg.experiment.workers);
        cfg.experiment.tolerance = opt_number(ej, "experiment", "tolerance", cfg.experiment.tolerance);
    }
    if (j.contains("output")) {
        const json& oj = j.at("output");
        reject_unknown(oj, "output", {"snapshot_count", "snapshot_horizon"});
        cfg.output.snapshot_count = opt_int(oj, "output", "snapshot_count", 0);
        cfg.output.snapshot_horizon = opt_number(oj, "output", "snapshot_horizon", 0.0);
    }

    try {
        cfg.problem.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid problem: ") + e.what());
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_config(j);
}

}  // namespace coswave
