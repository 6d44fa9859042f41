#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "ks.hpp"
#include "pipeline.hpp"
#include "registry.hpp"

namespace pra::io {

/// Analysis configuration: the dataset roster with roles, the metric list,
/// and the statistical knobs. Everything except datasets/metrics has a
/// default matching PRAConfig.
struct ConfigFile {
    std::vector<DatasetDescriptor> datasets;
    std::vector<std::string> metrics;
    double alpha = 0.05;
    stats::PMethod p_method = stats::PMethod::auto_select;
    std::optional<int> tau_rounding;
    std::uint64_t mc_trials = stats::kDefaultMcTrials;
    std::uint64_t mc_seed = stats::kDefaultMcSeed;

    DatasetRegistry registry() const {
        DatasetRegistry r;
        for (const auto& d : datasets) r.add(d);
        return r;
    }

    PRAConfig pra_config() const {
        PRAConfig c;
        c.alpha = alpha;
        c.p_method = p_method;
        c.tau_rounding = tau_rounding;
        c.mc_trials = mc_trials;
        c.mc_seed = mc_seed;
        return c;
    }
};

inline const char* to_string(stats::PMethod m) {
    switch (m) {
    case stats::PMethod::exact: return "exact";
    case stats::PMethod::asymptotic: return "asymptotic";
    case stats::PMethod::montecarlo: return "montecarlo";
    default: return "auto";
    }
}

inline std::optional<stats::PMethod> pmethod_from_string(const std::string& s) {
    if (s == "auto") return stats::PMethod::auto_select;
    if (s == "exact") return stats::PMethod::exact;
    if (s == "asymptotic") return stats::PMethod::asymptotic;
    if (s == "montecarlo") return stats::PMethod::montecarlo;
    return std::nullopt;
}

/// Strict config parser. Unknown keys are rejected at every level: a typoed
/// "tau_runding" must not silently fall back to a default and change the
/// analysis. Like the results parser, it reports every problem at once.
inline ConfigFile parse_config(const std::string& text) {
    using nlohmann::json;
    std::vector<std::string> issues;

    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("config: ") + e.what()});
    }
    if (!root.is_object()) throw ConfigError({"config: top level must be a JSON object"});

    static const std::vector<std::string> known_top = {
        "datasets", "metrics", "alpha", "p_method", "tau_rounding", "mc_trials", "mc_seed"};
    for (const auto& [key, _] : root.items()) {
        bool known = false;
        for (const auto& k : known_top) known |= (k == key);
        if (!known) issues.push_back("config: unknown key '" + key + "'");
    }

    ConfigFile cfg;

    if (!root.contains("datasets") || !root["datasets"].is_array()) {
        issues.push_back("config: 'datasets' must be present and an array");
    } else {
        static const std::vector<std::string> known_ds = {"id", "realm", "train_only", "role"};
        for (const auto& entry : root["datasets"]) {
            if (!entry.is_object()) {
                issues.push_back("config: each dataset entry must be an object");
                continue;
            }
            for (const auto& [key, _] : entry.items()) {
                bool known = false;
                for (const auto& k : known_ds) known |= (k == key);
                if (!known) issues.push_back("config: unknown dataset key '" + key + "'");
            }
            DatasetDescriptor d;
            if (entry.contains("id") && entry["id"].is_string() &&
                !entry["id"].get<std::string>().empty())
                d.id = entry["id"].get<std::string>();
            else
                issues.push_back("config: dataset entry needs a non-empty string 'id'");

            if (entry.contains("realm") && entry["realm"].is_string()) {
                const auto realm = entry["realm"].get<std::string>();
                if (realm == "real_world")
                    d.realm = Realm::real_world;
                else if (realm == "synthetic")
                    d.realm = Realm::synthetic;
                else
                    issues.push_back("config: dataset '" + d.id + "': bad realm '" + realm +
                                     "' (want real_world or synthetic)");
            } else {
                issues.push_back("config: dataset '" + d.id + "': 'realm' must be a string");
            }

            if (entry.contains("train_only")) {
                if (entry["train_only"].is_boolean())
                    d.train_only = entry["train_only"].get<bool>();
                else
                    issues.push_back("config: dataset '" + d.id + "': 'train_only' must be a bool");
            }

            if (entry.contains("role") && entry["role"].is_string()) {
                const auto role = entry["role"].get<std::string>();
                if (role == "reference")
                    d.role = RoleTag::reference;
                else if (role == "inspecting")
                    d.role = RoleTag::inspecting;
                else if (role == "neither")
                    d.role = RoleTag::neither;
                else
                    issues.push_back("config: dataset '" + d.id + "': bad role '" + role +
                                     "' (want reference, inspecting, or neither)");
            } else {
                issues.push_back("config: dataset '" + d.id + "': 'role' must be a string");
            }
            cfg.datasets.push_back(std::move(d));
        }
    }

    if (!root.contains("metrics") || !root["metrics"].is_array()) {
        issues.push_back("config: 'metrics' must be present and an array");
    } else {
        for (const auto& m : root["metrics"]) {
            if (!m.is_string() || m.get<std::string>().empty()) {
                issues.push_back("config: metrics must be non-empty strings");
                continue;
            }
            const auto name = m.get<std::string>();
            for (const auto& existing : cfg.metrics)
                if (existing == name)
                    issues.push_back("config: duplicate metric '" + name + "'");
            cfg.metrics.push_back(name);
        }
        if (cfg.metrics.empty()) issues.push_back("config: need at least one metric");
    }

    if (root.contains("alpha")) {
        if (root["alpha"].is_number() && root["alpha"].get<double>() > 0.0 &&
            root["alpha"].get<double>() < 1.0)
            cfg.alpha = root["alpha"].get<double>();
        else
            issues.push_back("config: 'alpha' must be a number in (0, 1)");
    }

    if (root.contains("p_method")) {
        if (root["p_method"].is_string()) {
            if (auto m = pmethod_from_string(root["p_method"].get<std::string>()))
                cfg.p_method = *m;
            else
                issues.push_back("config: bad p_method '" + root["p_method"].get<std::string>() +
                                 "' (want auto, exact, asymptotic, or montecarlo)");
        } else {
            issues.push_back("config: 'p_method' must be a string");
        }
    }

    if (root.contains("tau_rounding") && !root["tau_rounding"].is_null()) {
        if (root["tau_rounding"].is_number_integer() && root["tau_rounding"].get<int>() >= 0 &&
            root["tau_rounding"].get<int>() <= 9)
            cfg.tau_rounding = root["tau_rounding"].get<int>();
        else
            issues.push_back("config: 'tau_rounding' must be null or an integer in [0, 9]");
    }

    if (root.contains("mc_trials")) {
        if (root["mc_trials"].is_number_unsigned() &&
            root["mc_trials"].get<std::uint64_t>() >= 1000)
            cfg.mc_trials = root["mc_trials"].get<std::uint64_t>();
        else
            issues.push_back("config: 'mc_trials' must be an integer >= 1000");
    }

    if (root.contains("mc_seed")) {
        if (root["mc_seed"].is_number_unsigned())
            cfg.mc_seed = root["mc_seed"].get<std::uint64_t>();
        else
            issues.push_back("config: 'mc_seed' must be a non-negative integer");
    }

    // Cross-field checks only make sense if the pieces parsed.
    if (issues.empty()) {
        std::set<std::string> ids;
        int usable_references = 0;
        for (const auto& d : cfg.datasets) {
            if (!ids.insert(d.id).second)
                issues.push_back("config: duplicate dataset id '" + d.id + "'");
            if (d.role == RoleTag::inspecting && d.train_only)
                issues.push_back("config: dataset '" + d.id +
                                 "' is inspecting but train_only; it could never join a test pair");
            if (d.role == RoleTag::reference && !d.train_only) ++usable_references;
        }
        if (usable_references < 2)
            issues.push_back("config: need at least two reference datasets usable as test "
                             "pair members, found " +
                             std::to_string(usable_references));
    }

    if (!issues.empty()) throw ConfigError(std::move(issues));
    return cfg;
}

inline std::string serialize_config(const ConfigFile& cfg) {
    nlohmann::ordered_json root;
    root["datasets"] = nlohmann::ordered_json::array();
    for (const auto& d : cfg.datasets) {
        nlohmann::ordered_json entry;
        entry["id"] = d.id;
        entry["realm"] = pra::to_string(d.realm);
        entry["train_only"] = d.train_only;
        entry["role"] = pra::to_string(d.role);
        root["datasets"].push_back(entry);
    }
    root["metrics"] = cfg.metrics;
    root["alpha"] = cfg.alpha;
    root["p_method"] = to_string(cfg.p_method);
    if (cfg.tau_rounding)
        root["tau_rounding"] = *cfg.tau_rounding;
    else
        root["tau_rounding"] = nullptr;
    root["mc_trials"] = cfg.mc_trials;
    root["mc_seed"] = cfg.mc_seed;
    return root.dump(2) + "\n";
}

} // namespace pra::io
